//! Integer coefficients with an inline fast path.
//!
//! Almost every coefficient met while expanding the forms fits in a machine
//! word, but solution sequences and some symbolic expansions do not. `Int`
//! keeps small values unboxed and promotes to [`BigInt`] only on overflow.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision integer. `Big` is only used for values outside `i64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_i128(v: i128) -> Int {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }

    fn normalize(b: BigInt) -> Int {
        match b.to_i64() {
            Some(s) => Int::Small(s),
            None => Int::Big(b),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(s) => s.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(s) => BigInt::from(*s),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(s) => Some(*s),
            Int::Big(_) => None,
        }
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(s) => match s.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*s).abs()),
            },
            Int::Big(b) => Int::Big(b.abs()),
        }
    }

    pub fn add(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_add(*b) {
                Some(s) => Int::Small(s),
                None => Int::from_i128(*a as i128 + *b as i128),
            },
            _ => Int::normalize(self.to_bigint() + other.to_bigint()),
        }
    }

    pub fn sub(&self, other: &Int) -> Int {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => match a.checked_mul(*b) {
                Some(s) => Int::Small(s),
                None => Int::from_i128(*a as i128 * *b as i128),
            },
            (Int::Small(a), Int::Big(b)) | (Int::Big(b), Int::Small(a)) => {
                Int::normalize(b * BigInt::from(*a))
            }
            (Int::Big(a), Int::Big(b)) => Int::normalize(a * b),
        }
    }

    pub fn neg(&self) -> Int {
        match self {
            Int::Small(s) => match s.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(*s)),
            },
            Int::Big(b) => Int::normalize(-b),
        }
    }

    pub fn add_assign(&mut self, other: &Int) {
        if let (Int::Small(a), Int::Small(b)) = (&mut *self, other) {
            if let Some(s) = a.checked_add(*b) {
                *a = s;
                return;
            }
        }
        *self = Int::add(self, other);
    }

    /// `self += a * b` without materialising a temporary in the common case.
    pub fn add_product(&mut self, a: &Int, b: &Int) {
        if let (Int::Small(acc), Int::Small(x), Int::Small(y)) = (&mut *self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(s) = acc.checked_add(p) {
                    *acc = s;
                    return;
                }
            }
        }
        let p = a.mul(b);
        self.add_assign(&p);
    }

    pub fn pow(&self, exp: u32) -> Int {
        let mut result = Int::ONE;
        for _ in 0..exp {
            result = result.mul(self);
        }
        result
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Int) -> Option<Int> {
        if divisor.is_zero() {
            return None;
        }
        match (self, divisor) {
            (Int::Small(a), Int::Small(b)) => {
                if *b == -1 {
                    return Some(self.neg());
                }
                if a % b == 0 {
                    Some(Int::Small(a / b))
                } else {
                    None
                }
            }
            _ => {
                let (q, r) = self.to_bigint().div_rem(&divisor.to_bigint());
                if r.is_zero() {
                    Some(Int::normalize(q))
                } else {
                    None
                }
            }
        }
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::normalize(v)
    }
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        Int::normalize(v.clone())
    }
}

impl From<Int> for BigInt {
    fn from(v: Int) -> Self {
        match v {
            Int::Small(s) => BigInt::from(s),
            Int::Big(b) => b,
        }
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(s) => write!(f, "{s}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Int::Small(v));
        }
        s.parse::<BigInt>().map(Int::normalize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Int::from(i64::MAX).add(&Int::ONE);
        assert!(matches!(big, Int::Big(_)));
        let back = big.sub(&Int::ONE);
        assert_eq!(back, Int::Small(i64::MAX));
        let sq = Int::from(i64::MIN).mul(&Int::from(-1));
        assert_eq!(sq.to_bigint(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn add_product_matches_mul_then_add() {
        let mut acc = Int::from(i64::MAX - 3);
        acc.add_product(&Int::from(2), &Int::from(2));
        assert_eq!(acc.to_bigint(), BigInt::from(i64::MAX) + 1);
    }

    #[test]
    fn exact_division() {
        assert_eq!(Int::from(12).div_exact(&Int::from(-4)), Some(Int::from(-3)));
        assert_eq!(Int::from(13).div_exact(&Int::from(4)), None);
        assert_eq!(Int::from(i64::MIN).div_exact(&Int::from(-1)).unwrap().to_bigint(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn parse_round_trip() {
        let s = "-123456789012345678901234567890";
        let v: Int = s.parse().unwrap();
        assert_eq!(v.to_string(), s);
        assert_eq!("42".parse::<Int>().unwrap(), Int::Small(42));
    }
}
