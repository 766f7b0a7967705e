//! Exact-number helpers shared by the counting and verification modules.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `binom(q, i)` for an arbitrary integer `q` (the polynomial in `q`).
pub fn binomial_signed(q: &BigInt, i: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..i {
        num *= q - BigInt::from(j);
        den *= BigInt::from(j + 1);
    }
    num / den
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn rational_from_uint(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

pub fn rational_pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

/// `p/q` in lowest terms, always with an explicit denominator.
pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parse `p/q`, `p`, or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("cannot parse rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::invalid(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?.abs()
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac = BigInt::from_str(frac).map_err(|_| bad())?;
        let value = BigRational::new(int * &scale + frac, scale);
        return Ok(if negative { -value } else { value });
    }
    Ok(BigRational::from_integer(
        BigInt::from_str(s).map_err(|_| bad())?,
    ))
}

/// An exact quantity in a report: an integer count or a rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quantity {
    Count(BigUint),
    Ratio(BigRational),
}

impl Quantity {
    pub fn as_rational(&self) -> BigRational {
        match self {
            Quantity::Count(c) => rational_from_uint(c),
            Quantity::Ratio(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Quantity::Count(c) => c.is_zero(),
            Quantity::Ratio(r) => r.is_zero(),
        }
    }

    pub fn pow(&self, e: usize) -> Quantity {
        match self {
            Quantity::Count(c) => Quantity::Count(num_traits::pow(c.clone(), e)),
            Quantity::Ratio(r) => Quantity::Ratio(rational_pow(r, e)),
        }
    }
}

impl PartialOrd for Quantity {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(match (self, other) {
            (Quantity::Count(a), Quantity::Count(b)) => a.cmp(b),
            _ => self.as_rational().cmp(&other.as_rational()),
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Count(c) => write!(f, "{c}"),
            Quantity::Ratio(r) => f.write_str(&format_rational(r)),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub(crate) fn ser_uint<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub(crate) fn ser_int<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub(crate) fn ser_rational<S: Serializer>(
    x: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_rational(x))
}

pub(crate) fn ser_uint_vec<S: Serializer>(
    xs: &[BigUint],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

pub(crate) fn ser_int_vec<S: Serializer>(
    xs: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

pub(crate) fn ser_rational_vec<S: Serializer>(
    xs: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(format_rational))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial_signed(&BigInt::from(2), 3), BigInt::zero());
        assert_eq!(binomial_signed(&BigInt::from(10), 3), BigInt::from(120));
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("2/4").unwrap(), r(1, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), r(3, 1));
        assert_eq!(parse_rational("0.25").unwrap(), r(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), r(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&r(6, 4)), "3/2");
        assert_eq!(format_rational(&r(3, 1)), "3/1");
    }

    #[test]
    fn quantity_ordering_mixes_kinds() {
        let a = Quantity::Count(BigUint::from(2u32));
        let b = Quantity::Ratio(r(5, 2));
        assert!(a < b);
        assert_eq!(a.pow(3).to_string(), "8");
        assert_eq!(b.pow(2).to_string(), "25/4");
    }
}
