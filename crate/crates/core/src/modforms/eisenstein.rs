//! Normalised Eisenstein series E_k as exact q-series, and the lattice sum
//! G_k used as an independent numeric oracle.

use num_complex::Complex64;

use super::bernoulli::bernoulli_numbers;
use crate::error::{Error, Result};
use crate::series::rational::{factorial, int, Rational};
use crate::series::{CycloScalar, EvalPoint, QSeries};

/// σ_r(n) = Σ_{d | n} d^r, by trial division.
pub fn sigma(r: u32, n: u64) -> Rational {
    let mut s = Rational::from_integer(0.into());
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += num_traits::pow(int(d as i64), r as usize);
            let e = n / d;
            if e != d {
                s += num_traits::pow(int(e as i64), r as usize);
            }
        }
        d += 1;
    }
    s
}

/// E_k = −B_k/k! + 2/(k−1)! Σ σ_{k−1}(n) q^n, exact up to q^order.
pub fn eisenstein_e(k: u32, order: u64) -> Result<QSeries> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::InvalidWeight(k as i64));
    }
    let b = &bernoulli_numbers(k as usize)[k as usize];
    let c = int(2) / factorial(k - 1);
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    coeffs.push(CycloScalar::from_rational(-b / factorial(k)));
    for n in 1..=order {
        coeffs.push(CycloScalar::from_rational(&c * sigma(k - 1, n)));
    }
    Ok(QSeries::new(Rational::from_integer(0.into()), 1, coeffs))
}

/// Σ over 0 < max(|m1|, |m2|) ≤ R of (m1 τ + m2)^{−k}, summed shell by shell.
///
/// No weight checks; odd weights give (numerically) zero by the symmetry
/// (m1, m2) ↦ (−m1, −m2).
pub fn lattice_partial_sum(k: u32, p: EvalPoint, cutoff: u32) -> Complex64 {
    let tau = p.tau();
    let term = |m1: i64, m2: i64| (tau * m1 as f64 + m2 as f64).powi(-(k as i32));
    let mut total = Complex64::new(0.0, 0.0);
    for r in 1..=cutoff as i64 {
        let mut shell = Complex64::new(0.0, 0.0);
        for t in -r..=r {
            shell += term(r, t) + term(-r, t);
        }
        for t in -(r - 1)..=(r - 1) {
            shell += term(t, r) + term(t, -r);
        }
        total += shell;
    }
    total
}

/// Truncated lattice sum G_k(τ) for even k ≥ 4.
pub fn eisenstein_g_lattice(k: u32, p: EvalPoint, cutoff: u32) -> Result<Complex64> {
    if k == 2 {
        return Err(Error::NotAbsolutelyConvergent(2));
    }
    if k % 2 == 1 || k < 4 {
        return Err(Error::InvalidWeight(k as i64));
    }
    if cutoff < 10 {
        return Err(Error::Precondition(format!(
            "lattice cutoff {cutoff} is below the minimum of 10"
        )));
    }
    Ok(lattice_partial_sum(k, p, cutoff))
}

/// (2πi)^k · E_k(τ) evaluated from the q-expansion.
pub fn g_from_series(k: u32, p: EvalPoint, order: u64) -> Result<Complex64> {
    let e = eisenstein_e(k, order)?.eval(p).value;
    Ok(Complex64::new(0.0, std::f64::consts::TAU).powi(k as i32) * e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    fn i() -> EvalPoint {
        EvalPoint::from_parts(0.0, 1.0).unwrap()
    }

    #[test]
    fn sigma_small() {
        assert_eq!(sigma(1, 1), int(1));
        assert_eq!(sigma(1, 6), int(12));
        assert_eq!(sigma(3, 4), int(1 + 8 + 64));
        assert_eq!(sigma(0, 36), int(9));
    }

    #[test]
    fn e2_leading_coefficients() {
        let e2 = eisenstein_e(2, 2).unwrap();
        let expect: Vec<_> = [rat(-1, 12), int(2), int(6)]
            .into_iter()
            .map(CycloScalar::from_rational)
            .collect();
        assert_eq!(e2.coeffs(), &expect[..]);
    }

    #[test]
    fn e4_constant_term() {
        let e4 = eisenstein_e(4, 3).unwrap();
        assert_eq!(e4.coeffs()[0], CycloScalar::from_rational(rat(1, 720)));
        // 2/3! · σ_3(2) = 9/3
        assert_eq!(e4.coeffs()[2], CycloScalar::from_int(3));
    }

    #[test]
    fn weight_errors() {
        assert_eq!(eisenstein_e(3, 5).unwrap_err(), Error::InvalidWeight(3));
        assert_eq!(eisenstein_e(0, 5).unwrap_err(), Error::InvalidWeight(0));
        assert_eq!(
            eisenstein_g_lattice(2, i(), 50).unwrap_err(),
            Error::NotAbsolutelyConvergent(2)
        );
        assert_eq!(
            eisenstein_g_lattice(5, i(), 50).unwrap_err(),
            Error::InvalidWeight(5)
        );
        assert!(matches!(
            eisenstein_g_lattice(4, i(), 9).unwrap_err(),
            Error::Precondition(_)
        ));
    }

    #[test]
    fn odd_weight_partial_sums_cancel() {
        let p = EvalPoint::from_parts(0.3, 1.1).unwrap();
        for k in [3, 5, 7] {
            assert!(lattice_partial_sum(k, p, 20).norm() < 1e-12);
        }
    }

    #[test]
    fn lattice_matches_series_at_i() {
        for k in [4, 6, 8] {
            let lat = eisenstein_g_lattice(k, i(), 200).unwrap();
            let ser = g_from_series(k, i(), 40).unwrap();
            assert!((lat - ser).norm() < 1e-4, "k = {k}: {lat} vs {ser}");
        }
    }

    #[test]
    fn g4_value_at_i() {
        // G_4(i) = Γ(1/4)^8 / (960 π^2)
        let g14 = 3.625_609_908_221_908_f64;
        let expect = g14.powi(8) / (960.0 * std::f64::consts::PI.powi(2));
        let ser = g_from_series(4, i(), 40).unwrap();
        assert!((ser.re - expect).abs() < 1e-10 && ser.im.abs() < 1e-10);
    }
}
