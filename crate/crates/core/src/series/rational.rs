//! Small helpers around exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Denominator of a rational as a u64 (panics only on absurd lattices).
pub fn denom_u64(r: &Rational) -> u64 {
    r.denom().to_u64().expect("denominator does not fit in u64")
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// `floor(r)` as an i64.
pub fn floor_i64(r: &Rational) -> i64 {
    r.floor()
        .to_integer()
        .to_i64()
        .expect("exponent out of range")
}

pub fn factorial(n: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// Generalised binomial coefficient binom(x, i) for rational x.
pub fn binomial(x: &Rational, i: u32) -> Rational {
    let mut acc = Rational::one();
    for t in 0..i {
        acc *= x - int(t as i64);
    }
    acc / factorial(i)
}

/// Integer power with `0^0 = 1`.
pub fn pow(r: &Rational, e: u32) -> Rational {
    num_traits::pow(r.clone(), e as usize)
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn format_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Human form: `p` for integers, `p/q` otherwise.
pub fn format_short(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format_pq(r)
    }
}

/// Parses `p`, `p/q`, or a decimal-free signed fraction.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
