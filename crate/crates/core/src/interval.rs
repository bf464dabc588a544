//! Finite unions of half-open dyadic subintervals of [0, 1).

use crate::dyadic::Dyadic;

/// Sorted, pairwise-disjoint, merged list of half-open spans [a, b).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalSet {
    spans: Vec<(Dyadic, Dyadic)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { spans: Vec::new() }
    }

    pub fn from_span(lo: Dyadic, hi: Dyadic) -> Self {
        assert!(lo <= hi);
        if lo == hi {
            return IntervalSet::empty();
        }
        IntervalSet { spans: vec![(lo, hi)] }
    }

    pub fn spans(&self) -> &[(Dyadic, Dyadic)] {
        &self.spans
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn total_len(&self) -> Dyadic {
        let mut t = Dyadic::zero();
        for (lo, hi) in &self.spans {
            t = &t + &hi.checked_sub(lo).unwrap();
        }
        t
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut all: Vec<(Dyadic, Dyadic)> = self
            .spans
            .iter()
            .chain(other.spans.iter())
            .cloned()
            .collect();
        all.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Dyadic, Dyadic)> = Vec::with_capacity(all.len());
        for (lo, hi) in all {
            match merged.last_mut() {
                Some((_, phi)) if lo <= *phi => {
                    if hi > *phi {
                        *phi = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        IntervalSet { spans: merged }
    }

    /// Set difference self \ other.
    pub fn subtract(&self, other: &IntervalSet) -> IntervalSet {
        let mut out: Vec<(Dyadic, Dyadic)> = Vec::new();
        for (lo, hi) in &self.spans {
            let mut cur = lo.clone();
            for (olo, ohi) in &other.spans {
                if ohi <= &cur {
                    continue;
                }
                if olo >= hi {
                    break;
                }
                if olo > &cur {
                    out.push((cur.clone(), olo.clone().min(hi.clone())));
                }
                if ohi >= hi {
                    cur = hi.clone();
                    break;
                }
                if ohi > &cur {
                    cur = ohi.clone();
                }
            }
            if &cur < hi {
                out.push((cur, hi.clone()));
            }
        }
        IntervalSet { spans: out }
    }

    /// True iff [lo, hi) is contained in the set. Empty queries are contained.
    pub fn contains_interval(&self, lo: &Dyadic, hi: &Dyadic) -> bool {
        if lo >= hi {
            return true;
        }
        self.spans
            .iter()
            .any(|(slo, shi)| slo <= lo && hi <= shi)
    }

    pub fn is_subset_of(&self, other: &IntervalSet) -> bool {
        self.spans
            .iter()
            .all(|(lo, hi)| other.contains_interval(lo, hi))
    }

    pub fn intersects(&self, other: &IntervalSet) -> bool {
        let mut i = 0;
        let mut j = 0;
        while i < self.spans.len() && j < other.spans.len() {
            let (alo, ahi) = &self.spans[i];
            let (blo, bhi) = &other.spans[j];
            if alo < bhi && blo < ahi {
                return true;
            }
            if ahi <= bhi {
                i += 1;
            } else {
                j += 1;
            }
        }
        false
    }

    /// Carve the leftmost sub-intervals totalling exactly `want` out of the
    /// set. Panics if the set is shorter than `want`.
    pub fn take_leftmost(&self, want: &Dyadic) -> IntervalSet {
        let mut left = want.clone();
        let mut taken = Vec::new();
        for (lo, hi) in &self.spans {
            if left.is_zero() {
                break;
            }
            let len = hi.checked_sub(lo).unwrap();
            if len <= left {
                taken.push((lo.clone(), hi.clone()));
                left = left.checked_sub(&len).unwrap();
            } else {
                taken.push((lo.clone(), lo + &left));
                left = Dyadic::zero();
            }
        }
        assert!(left.is_zero(), "interval set too short to carve from");
        IntervalSet { spans: taken }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn dy(n: u64, e: u32) -> Dyadic {
        Dyadic::new(BigUint::from(n), e)
    }

    fn span(a: (u64, u32), b: (u64, u32)) -> IntervalSet {
        IntervalSet::from_span(dy(a.0, a.1), dy(b.0, b.1))
    }

    #[test]
    fn union_merges_adjacent() {
        let s = span((0, 1), (1, 1)).union(&span((1, 1), (3, 2)));
        assert_eq!(s.spans().len(), 1);
        assert_eq!(s.total_len(), dy(3, 2));
    }

    #[test]
    fn subtract_splits() {
        let s = span((0, 0), (1, 0)).subtract(&span((1, 2), (1, 1)));
        assert_eq!(s.spans().len(), 2);
        assert_eq!(s.total_len(), dy(3, 2));
        assert!(s.contains_interval(&dy(0, 0), &dy(1, 2)));
        assert!(!s.contains_interval(&dy(1, 2), &dy(3, 2)));
    }

    #[test]
    fn take_leftmost_carves_prefix() {
        let free = span((0, 2), (1, 1)).union(&span((3, 2), (1, 0)));
        let got = free.take_leftmost(&dy(3, 3));
        assert_eq!(got.total_len(), dy(3, 3));
        assert!(got.is_subset_of(&free));
        assert!(got.contains_interval(&dy(1, 2), &dy(3, 3)));
    }

    #[test]
    fn disjointness_via_intersects() {
        let a = span((0, 1), (3, 2));
        let b = span((3, 2), (1, 0));
        assert!(!a.intersects(&b));
        assert!(a.intersects(&span((1, 1), (1, 0))));
    }
}
