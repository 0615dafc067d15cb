//! Exact rational probabilities.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A nonnegative rational number kept in lowest terms.
///
/// Rendered and serialized as `"num/den"`, always with an explicit
/// denominator (`"0/1"`, `"1/1"`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prob(BigRational);

impl Prob {
    pub fn zero() -> Self {
        Prob(BigRational::zero())
    }

    pub fn one() -> Self {
        Prob(BigRational::one())
    }

    /// `num / den`. Returns `None` for a zero denominator.
    pub fn new(num: u64, den: u64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some(Prob(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    /// `1 / n`, the weight of one element of an `n`-element uniform draw.
    pub fn reciprocal(n: usize) -> Self {
        assert!(n > 0, "reciprocal of zero");
        Prob(BigRational::new(BigInt::one(), BigInt::from(n)))
    }

    pub fn half() -> Self {
        Prob::reciprocal(2)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `|self - other|`.
    pub fn abs_diff(&self, other: &Prob) -> Prob {
        Prob((&self.0 - &other.0).abs())
    }

    /// `1 - self`, saturating at zero.
    pub fn complement(&self) -> Prob {
        let c = BigRational::one() - &self.0;
        if c.is_negative() {
            Prob::zero()
        } else {
            Prob(c)
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Lossy conversion for display only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl Default for Prob {
    fn default() -> Self {
        Prob::zero()
    }
}

impl Add for Prob {
    type Output = Prob;
    fn add(self, rhs: Prob) -> Prob {
        Prob(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Prob> for &'a Prob {
    type Output = Prob;
    fn add(self, rhs: &'a Prob) -> Prob {
        Prob(&self.0 + &rhs.0)
    }
}

impl Mul for Prob {
    type Output = Prob;
    fn mul(self, rhs: Prob) -> Prob {
        Prob(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Prob> for &'a Prob {
    type Output = Prob;
    fn mul(self, rhs: &'a Prob) -> Prob {
        Prob(&self.0 * &rhs.0)
    }
}

impl Sum for Prob {
    fn sum<I: Iterator<Item = Prob>>(iter: I) -> Prob {
        Prob(iter.map(|p| p.0).sum())
    }
}

impl<'a> Sum<&'a Prob> for Prob {
    fn sum<I: Iterator<Item = &'a Prob>>(iter: I) -> Prob {
        let mut acc = BigRational::zero();
        for p in iter {
            acc += &p.0;
        }
        Prob(acc)
    }
}

impl fmt::Display for Prob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Prob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid probability literal {0:?}, expected \"num/den\" with 0 <= num and den > 0")]
pub struct ParseProbError(String);

impl FromStr for Prob {
    type Err = ParseProbError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseProbError(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if num.is_negative() || !den.is_positive() {
            return Err(err());
        }
        Ok(Prob(BigRational::new(num, den)))
    }
}

impl Serialize for Prob {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Prob {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let p = Prob::new(3, 12).unwrap();
        assert_eq!(p.to_string(), "1/4");
        assert_eq!(Prob::zero().to_string(), "0/1");
        assert_eq!(Prob::one().to_string(), "1/1");
    }

    #[test]
    fn parse_and_reject() {
        assert_eq!("2/4".parse::<Prob>().unwrap(), Prob::half());
        assert_eq!("1".parse::<Prob>().unwrap(), Prob::one());
        assert!("1/0".parse::<Prob>().is_err());
        assert!("-1/2".parse::<Prob>().is_err());
        assert!("x/2".parse::<Prob>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Prob::new(1, 3).unwrap();
        let b = Prob::new(1, 6).unwrap();
        assert_eq!(&a + &b, Prob::half());
        assert_eq!(&a * &b, Prob::new(1, 18).unwrap());
        assert_eq!(b.abs_diff(&a), b);
        assert_eq!(a.complement(), Prob::new(2, 3).unwrap());
    }

    #[test]
    fn json_string_form() {
        let s = serde_json::to_string(&Prob::new(2, 6).unwrap()).unwrap();
        assert_eq!(s, "\"1/3\"");
        let back: Prob = serde_json::from_str(&s).unwrap();
        assert_eq!(back, Prob::new(1, 3).unwrap());
    }
}
