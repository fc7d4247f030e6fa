//! Bernoulli polynomials, Eisenstein series, the twisted P/Q/P̄ families and
//! Dedekind η quotients.

pub mod bernoulli;
pub mod eisenstein;
pub mod eta;
pub mod twisted;

pub use bernoulli::{bernoulli_numbers, bernoulli_polynomial, RationalPolynomial};
pub use eisenstein::{
    eisenstein_e, eisenstein_g_lattice, g_from_series, lattice_partial_sum, sigma,
};
pub use eta::{check_eta_laws, eta_eval, eta_quotient, eta_series, EtaQuotientSpec};
pub use twisted::{
    check_p_transform, check_prop_2_3, check_q_transform, p_eval, pbar_window, q_series_q,
    q_transform_residual, PbarWindow,
};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::series::rational::{int, rat, Rational};
use crate::series::CycloScalar;

/// The root of unity e^{2πi j/M}, stored with 0 ≤ j < M and j/M reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    j: u32,
    m: u32,
}

impl RootOfUnity {
    pub fn new(j: i64, m: u32) -> Self {
        assert!(m > 0, "order must be positive");
        let j = j.rem_euclid(m as i64) as u32;
        let g = j.gcd(&m);
        // gcd(0, m) = m, which reduces 0/m to 0/1
        RootOfUnity { j: j / g, m: m / g }
    }

    pub fn one() -> Self {
        RootOfUnity { j: 0, m: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { j: 1, m: 2 }
    }

    /// Numerator j of the reduced fraction j/M.
    pub fn j(&self) -> u32 {
        self.j
    }

    /// Order M of the root.
    pub fn order(&self) -> u32 {
        self.m
    }

    /// j/M as an exact rational in [0, 1).
    pub fn fraction(&self) -> Rational {
        rat(self.j as i64, self.m as i64)
    }

    pub fn from_fraction(r: &Rational) -> Self {
        let m: u32 = r.denom().try_into().expect("root order fits in u32");
        let j: i64 = r.numer().try_into().expect("root numerator fits in i64");
        RootOfUnity::new(j, m)
    }

    pub fn is_one(&self) -> bool {
        self.j == 0
    }

    pub fn pow(&self, e: i64) -> Self {
        RootOfUnity::from_fraction(&(self.fraction() * int(e)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        RootOfUnity::from_fraction(&(self.fraction() + other.fraction()))
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// Exact value in Q(ζ_M).
    pub fn to_cyclo(&self) -> CycloScalar {
        CycloScalar::root(self.j as i64, self.m)
    }

    pub fn to_complex(&self) -> Complex64 {
        let t = std::f64::consts::TAU * self.j as f64 / self.m as f64;
        Complex64::new(t.cos(), t.sin())
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.j, self.m)
    }
}

impl FromStr for RootOfUnity {
    type Err = Error;

    /// Parses "j/M" (or a bare integer, read as j/1).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a root of unity as j/M, got {s:?}"));
        let (j, m) = match s.trim().split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let j: i64 = j.parse().map_err(|_| bad())?;
        let m: u32 = m.parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        Ok(RootOfUnity::new(j, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_equality() {
        assert_eq!(RootOfUnity::new(1, 2), RootOfUnity::new(2, 4));
        assert_eq!(RootOfUnity::new(-1, 2), RootOfUnity::minus_one());
        assert_eq!(RootOfUnity::new(3, 3), RootOfUnity::one());
        assert_eq!(RootOfUnity::new(5, 4).j(), 1);
    }

    #[test]
    fn group_operations() {
        let z = RootOfUnity::new(1, 6);
        assert_eq!(z.pow(6), RootOfUnity::one());
        assert_eq!(z.pow(3), RootOfUnity::minus_one());
        assert_eq!(z.mul(&z.inv()), RootOfUnity::one());
        assert_eq!(z.inv(), RootOfUnity::new(5, 6));
    }

    #[test]
    fn exact_and_numeric_values_agree() {
        for (j, m) in [(0, 1), (1, 2), (1, 3), (3, 8), (5, 12)] {
            let r = RootOfUnity::new(j, m);
            assert!((r.to_cyclo().to_complex() - r.to_complex()).norm() < 1e-14);
        }
        assert_eq!(
            RootOfUnity::minus_one().to_cyclo(),
            CycloScalar::from_int(-1)
        );
    }

    #[test]
    fn parse() {
        assert_eq!(
            "1/2".parse::<RootOfUnity>().unwrap(),
            RootOfUnity::minus_one()
        );
        assert_eq!("0/1".parse::<RootOfUnity>().unwrap(), RootOfUnity::one());
        assert_eq!("3".parse::<RootOfUnity>().unwrap(), RootOfUnity::one());
        assert!("1/0".parse::<RootOfUnity>().is_err());
        assert!("x/2".parse::<RootOfUnity>().is_err());
    }
}
