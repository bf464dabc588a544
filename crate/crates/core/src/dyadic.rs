//! Exact non-negative dyadic rationals k/2^m.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

/// A value num/2^exp ≥ 0 in canonical form: num is odd, or num = 0 and exp = 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigUint,
    exp: u32,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            num: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            num: BigUint::one(),
            exp: 0,
        }
    }

    pub fn new(num: BigUint, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.canonicalize();
        d
    }

    pub fn from_u64(n: u64) -> Self {
        Dyadic::new(BigUint::from(n), 0)
    }

    /// 2^-k.
    pub fn pow2_neg(k: u32) -> Self {
        Dyadic {
            num: BigUint::one(),
            exp: k,
        }
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0).min(self.exp as u64) as u32;
        if tz > 0 {
            self.num >>= tz;
            self.exp -= tz;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    /// Numerator after rescaling to denominator 2^exp; panics if the value
    /// has finer resolution than 2^-exp.
    pub fn scaled_num(&self, exp: u32) -> BigUint {
        assert!(exp >= self.exp, "resolution too coarse for exact rescale");
        &self.num << (exp - self.exp)
    }

    pub fn checked_sub(&self, other: &Dyadic) -> Option<Dyadic> {
        let e = self.exp.max(other.exp);
        let a = self.scaled_num(e);
        let b = other.scaled_num(e);
        if a < b {
            None
        } else {
            Some(Dyadic::new(a - b, e))
        }
    }

    pub fn mul_pow2_neg(&self, k: u32) -> Dyadic {
        Dyadic::new(self.num.clone(), self.exp + k)
    }

    pub fn mul_nat(&self, n: &BigUint) -> Dyadic {
        Dyadic::new(&self.num * n, self.exp)
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &other.num, self.exp + other.exp)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.num.clone()),
            BigInt::from(BigUint::one() << self.exp),
        )
    }

    /// Smallest multiple of 2^-grid that is ≥ r. Requires r ≥ 0.
    pub fn from_rational_ceil(r: &BigRational, grid: u32) -> Dyadic {
        assert!(!r.is_negative());
        let scaled = r * BigRational::from_integer(BigInt::from(BigUint::one() << grid));
        let n = scaled.ceil().to_integer().to_biguint().unwrap();
        Dyadic::new(n, grid)
    }

    /// Largest multiple of 2^-grid that is ≤ r. Requires r ≥ 0.
    pub fn from_rational_floor(r: &BigRational, grid: u32) -> Dyadic {
        assert!(!r.is_negative());
        let scaled = r * BigRational::from_integer(BigInt::from(BigUint::one() << grid));
        let n = scaled.floor().to_integer().to_biguint().unwrap();
        Dyadic::new(n, grid)
    }

    pub fn to_f64(&self) -> f64 {
        // Good to f64 precision even when the exact value over/underflows.
        let bits = self.num.bits();
        if bits == 0 {
            return 0.0;
        }
        let shift = bits.saturating_sub(64);
        let top: u64 = (&self.num >> shift).try_into().unwrap();
        (top as f64) * 2f64.powi(shift as i32 - self.exp as i32)
    }

    /// -log₂ of the value as f64; +∞ for zero.
    pub fn neg_log2(&self) -> f64 {
        if self.is_zero() {
            return f64::INFINITY;
        }
        let bits = self.num.bits();
        let shift = bits.saturating_sub(64);
        let top: u64 = (&self.num >> shift).try_into().unwrap();
        self.exp as f64 - (top as f64).log2() - shift as f64
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, other: &Dyadic) -> Dyadic {
        let e = self.exp.max(other.exp);
        Dyadic::new(self.scaled_num(e) + other.scaled_num(e), e)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.scaled_num(e).cmp(&other.scaled_num(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dy(num: u64, exp: u32) -> Dyadic {
        Dyadic::new(BigUint::from(num), exp)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(dy(4, 3), dy(1, 1));
        assert_eq!(dy(0, 7), Dyadic::zero());
        assert_eq!(dy(6, 1).to_string(), "3");
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&dy(1, 2) + &dy(1, 2), dy(1, 1));
        assert_eq!(dy(3, 2).checked_sub(&dy(1, 2)), Some(dy(1, 1)));
        assert_eq!(dy(1, 3).checked_sub(&dy(1, 2)), None);
        assert!(dy(1, 2) < dy(1, 1));
    }

    #[test]
    fn rational_rounding() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(Dyadic::from_rational_ceil(&third, 8), dy(86, 8));
        assert_eq!(Dyadic::from_rational_floor(&third, 8), dy(85, 8));
        let exact = BigRational::new(BigInt::from(1), BigInt::from(4));
        assert_eq!(Dyadic::from_rational_ceil(&exact, 8), dy(1, 2));
    }

    proptest! {
        #[test]
        fn matches_rational_model(a in 0u64..1 << 20, ea in 0u32..24, b in 0u64..1 << 20, eb in 0u32..24) {
            let (x, y) = (dy(a, ea), dy(b, eb));
            let (rx, ry) = (x.to_rational(), y.to_rational());
            prop_assert_eq!((&x + &y).to_rational(), &rx + &ry);
            prop_assert_eq!(x.cmp(&y), rx.cmp(&ry));
            prop_assert_eq!(x.mul(&y).to_rational(), &rx * &ry);
            if let Some(d) = x.checked_sub(&y) {
                prop_assert_eq!(d.to_rational(), &rx - &ry);
            } else {
                prop_assert!(rx < ry);
            }
        }
    }
}
