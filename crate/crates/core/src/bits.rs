//! Finite binary strings, the shortlex string/number bijection, the
//! self-delimiting doubling code and the pair codec built on it.

use num_bigint::BigUint;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// A finite string over {0,1}. The empty string renders as "".
///
/// Ordered shortlex (by length, then lexicographically), which agrees with
/// the numbering given by [`Bits::to_num`].
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Bits {
    digits: Vec<bool>,
}

impl Bits {
    pub fn empty() -> Self {
        Bits { digits: Vec::new() }
    }

    pub fn from_digits(digits: Vec<bool>) -> Self {
        Bits { digits }
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.digits[i]
    }

    pub fn push(&mut self, b: bool) {
        self.digits.push(b)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.digits.iter().copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.digits
    }

    pub fn concat(&self, other: &Bits) -> Bits {
        let mut d = self.digits.clone();
        d.extend_from_slice(&other.digits);
        Bits { digits: d }
    }

    /// First `n` digits. Panics if `n` exceeds the length.
    pub fn prefix(&self, n: usize) -> Bits {
        Bits {
            digits: self.digits[..n].to_vec(),
        }
    }

    /// Digits from position `n` on.
    pub fn suffix_from(&self, n: usize) -> Bits {
        Bits {
            digits: self.digits[n..].to_vec(),
        }
    }

    /// Prefix order x ⊑ y.
    pub fn is_prefix_of(&self, other: &Bits) -> bool {
        self.len() <= other.len() && other.digits[..self.len()] == self.digits[..]
    }

    /// The string paired with number `n` in the shortlex enumeration
    /// (0 ↔ empty, 1 ↔ "0", 2 ↔ "1", 3 ↔ "00", ...). Total for all n: the
    /// binary expansion of n+1 with the leading 1 removed.
    pub fn from_num(n: &BigUint) -> Bits {
        let m = n + 1u32;
        let nbits = m.bits();
        let mut digits = Vec::with_capacity(nbits as usize - 1);
        for i in (0..nbits - 1).rev() {
            digits.push(m.bit(i));
        }
        Bits { digits }
    }

    pub fn from_u64(n: u64) -> Bits {
        Bits::from_num(&BigUint::from(n))
    }

    /// Inverse of [`Bits::from_num`].
    pub fn to_num(&self) -> BigUint {
        let mut m = BigUint::from(1u32);
        for &b in &self.digits {
            m <<= 1;
            if b {
                m |= BigUint::from(1u32);
            }
        }
        m - 1u32
    }

    pub fn to_u64(&self) -> Option<u64> {
        if self.len() >= 64 {
            return None;
        }
        let mut m: u64 = 1;
        for &b in &self.digits {
            m = (m << 1) | b as u64;
        }
        Some(m - 1)
    }

    /// The n-bit string whose big-endian value is `v`. Panics if v ≥ 2^n.
    pub fn from_value_len(v: u64, n: usize) -> Bits {
        assert!(n < 64);
        assert!(v >> n == 0);
        Bits {
            digits: (0..n).rev().map(|i| (v >> i) & 1 == 1).collect(),
        }
    }

    /// Big-endian value of the string (length must be < 64).
    pub fn value(&self) -> u64 {
        assert!(self.len() < 64);
        let mut v = 0u64;
        for &b in &self.digits {
            v = (v << 1) | b as u64;
        }
        v
    }

    /// The doubling code x̄ = x₁x₁x₂x₂…xₙxₙ01.
    pub fn self_delim(&self) -> Bits {
        let mut d = Vec::with_capacity(2 * self.len() + 2);
        for &b in &self.digits {
            d.push(b);
            d.push(b);
        }
        d.push(false);
        d.push(true);
        Bits { digits: d }
    }

    /// All strings of length `n` in lexicographic order.
    pub fn all_of_len(n: usize) -> impl Iterator<Item = Bits> {
        assert!(n < 32);
        (0..(1u64 << n)).map(move |v| Bits::from_value_len(v, n))
    }

    /// All strings of length ≤ `n` in shortlex order.
    pub fn all_up_to_len(n: usize) -> impl Iterator<Item = Bits> {
        (0..=n).flat_map(Bits::all_of_len)
    }
}

impl Ord for Bits {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.digits.cmp(&other.digits))
    }
}

impl PartialOrd for Bits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.digits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

/// Error from parsing a bit string out of text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseBitsError(pub char);

impl fmt::Display for ParseBitsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid character {:?} in bit string", self.0)
    }
}

impl std::error::Error for ParseBitsError {}

impl FromStr for Bits {
    type Err = ParseBitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => digits.push(false),
                '1' => digits.push(true),
                c => return Err(ParseBitsError(c)),
            }
        }
        Ok(Bits { digits })
    }
}

/// Length of the string numbered `n`, i.e. ⌊log₂(n+1)⌋.
pub fn num_str_len(n: u64) -> u32 {
    (n + 1).ilog2()
}

/// Encode the ordered pair (x, y) as x̄y.
pub fn pair_encode(x: &Bits, y: &Bits) -> Bits {
    x.self_delim().concat(y)
}

/// Result of scanning a doubled-digit prefix off the front of a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairScan {
    /// A full x̄ prefix was found; `rest_at` is the index just past its "01".
    Complete { first: Bits, rest_at: usize },
    /// Ran out of digits before the terminator; an extension may complete it.
    Incomplete,
    /// A "10" pair: no extension of this string has the form x̄y.
    Malformed,
}

pub fn pair_scan(z: &Bits) -> PairScan {
    let mut first = Bits::empty();
    let mut i = 0;
    loop {
        if i + 1 >= z.len() {
            return PairScan::Incomplete;
        }
        match (z.bit(i), z.bit(i + 1)) {
            (false, true) => return PairScan::Complete { first, rest_at: i + 2 },
            (false, false) => first.push(false),
            (true, true) => first.push(true),
            (true, false) => return PairScan::Malformed,
        }
        i += 2;
    }
}

/// Recover (x, y) from x̄y. A string not of that form yields (Λ, Λ).
pub fn pair_decode(z: &Bits) -> (Bits, Bits) {
    match pair_scan(z) {
        PairScan::Complete { first, rest_at } => {
            let rest = z.suffix_from(rest_at);
            (first, rest)
        }
        _ => (Bits::empty(), Bits::empty()),
    }
}
