//! Exact truncated q-series over cyclotomic fields.

pub mod cyclo;
pub mod qseries;
pub mod rational;

pub use cyclo::CycloScalar;
pub use qseries::{q_power, EvalPoint, Evaluation, NumericSeries, QSeries, SeriesJson};
pub use rational::Rational;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use rational::{denom_u64, int};

/// Expands Π (1 + λ_i q^{e_i}) up to total exponent `order`.
///
/// Factors whose exponent exceeds `order` contribute nothing inside the
/// truncation and are skipped.
pub fn product_expand(factors: &[(CycloScalar, Rational)], order: u64) -> Result<QSeries> {
    for (_, e) in factors {
        if !e.is_positive() {
            return Err(Error::InvalidFactor(format!(
                "exponent {e} must be strictly positive"
            )));
        }
    }
    let order_r = int(order as i64);
    let active: Vec<_> = factors.iter().filter(|(_, e)| *e <= order_r).collect();
    let denom = active.iter().fold(1u64, |d, (_, e)| d.lcm(&denom_u64(e)));
    let level = active.iter().fold(1u32, |l, (c, _)| l.lcm(&c.level()));
    let n = (order * denom) as usize;
    let mut coeffs = vec![CycloScalar::zero().lift(level); n + 1];
    coeffs[0] = CycloScalar::one().lift(level);
    for (lambda, e) in active {
        let s = (e * int(denom as i64))
            .to_integer()
            .to_usize()
            .expect("factor exponent index");
        let lambda = lambda.lift(level);
        for idx in (s..=n).rev() {
            if !coeffs[idx - s].is_zero() {
                let add = &coeffs[idx - s] * &lambda;
                coeffs[idx] = &coeffs[idx] + &add;
            }
        }
    }
    Ok(QSeries::new(Rational::zero(), denom, coeffs))
}
