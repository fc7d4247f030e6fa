//! Dedekind η and η-quotients.

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::series::rational::{format_short, int, rat, to_f64, Rational};
use crate::series::{product_expand, CycloScalar, EvalPoint, NumericSeries, QSeries};
use crate::tolerances::{ETA_EVAL_ORDER, ETA_LAW_TOL};

/// Π_i η(t_i τ)^{r_i}, times a constant.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaQuotientSpec {
    pub factors: Vec<(Rational, i64)>,
    pub prefactor: CycloScalar,
}

impl EtaQuotientSpec {
    pub fn new(factors: Vec<(Rational, i64)>, prefactor: CycloScalar) -> Self {
        EtaQuotientSpec { factors, prefactor }
    }

    /// The identically zero function.
    pub fn zero() -> Self {
        EtaQuotientSpec {
            factors: Vec::new(),
            prefactor: CycloScalar::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    /// Σ r·t/24, the leading exponent.
    pub fn offset(&self) -> Rational {
        self.factors
            .iter()
            .map(|(t, r)| t * int(*r))
            .sum::<Rational>()
            / int(24)
    }

    /// Weight Σ r/2.
    pub fn weight(&self) -> Rational {
        rat(self.factors.iter().map(|(_, r)| r).sum::<i64>(), 2)
    }
}

impl std::fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.prefactor)?;
        for (t, r) in &self.factors {
            write!(f, " * eta({}tau)^{}", format_short(t), r)?;
        }
        Ok(())
    }
}

/// η(τ) = q^{1/24} Π_{n≥1} (1 − q^n), known up to q^{1/24 + order}.
pub fn eta_series(order: u64) -> QSeries {
    let factors: Vec<_> = (1..=order as i64)
        .map(|n| (CycloScalar::from_int(-1), int(n)))
        .collect();
    product_expand(&factors, order)
        .expect("positive exponents")
        .shift(&rat(1, 24))
}

/// Expands the quotient, known up to `offset + order`.
pub fn eta_quotient(spec: &EtaQuotientSpec, order: u64) -> Result<QSeries> {
    for (t, _) in &spec.factors {
        if !t.is_positive() {
            return Err(Error::InvalidFactor(format!(
                "eta scale {t} must be positive"
            )));
        }
    }
    let mut acc = QSeries::one(order);
    for (t, r) in &spec.factors {
        // Π_n (1 − q^{tn}) for tn ≤ order
        let max_n = (int(order as i64) / t).floor().to_integer();
        let max_n: i64 = max_n.try_into().expect("factor count");
        let factors: Vec<_> = (1..=max_n)
            .map(|n| (CycloScalar::from_int(-1), t * int(n)))
            .collect();
        let base = if factors.is_empty() {
            QSeries::one(order)
        } else {
            product_expand(&factors, order)?
        };
        acc = acc.mul(&base.pow(*r)?);
    }
    Ok(acc.shift(&spec.offset()).scale(&spec.prefactor))
}

/// Numeric η(τ) from the expansion to [`ETA_EVAL_ORDER`].
pub fn eta_eval(tau: Complex64) -> Result<Complex64> {
    EtaNumeric::new().eval(tau)
}

struct EtaNumeric(NumericSeries);

impl EtaNumeric {
    fn new() -> Self {
        EtaNumeric(eta_series(ETA_EVAL_ORDER).numeric())
    }

    fn eval(&self, tau: Complex64) -> Result<Complex64> {
        Ok(self.0.eval(EvalPoint::new(tau)?).value)
    }
}

/// Numeric checks of the S-law, the T-law and the half-shift identity at τ.
///
/// The half-shift identity is checked exactly as
/// η((τ+1)/2) = η(τ)³/(η(τ/2)η(2τ)); a separate diagnostic item measures the
/// ratio of the two sides against e^{πi/24}.
pub fn check_eta_laws(p: EvalPoint) -> Result<Vec<VerificationReport>> {
    let tau = p.tau();
    if tau.im < 0.8 {
        return Err(Error::Precondition(format!(
            "eta laws need Im tau >= 0.8, got {}",
            tau.im
        )));
    }
    let eta = EtaNumeric::new();
    let i = Complex64::new(0.0, 1.0);
    let e = eta.eval(tau)?;
    let at = format!("tau = {tau}");

    let s_lhs = eta.eval(-1.0 / tau)?;
    let s_rhs = (-i * tau).sqrt() * e;
    let s = VerificationReport::numeric(
        "eta S-law: eta(-1/tau) = (-i tau)^(1/2) eta(tau)",
        (s_lhs - s_rhs).norm(),
        ETA_LAW_TOL,
    )
    .with_samples(vec![tau])
    .with_detail(at.clone());

    let ratio = eta.eval(tau + 1.0)? / e;
    let phase = (i * std::f64::consts::PI / 12.0).exp();
    let t = VerificationReport::numeric(
        "eta T-law: eta(tau+1)/eta(tau) = e^(i pi/12)",
        (ratio - phase).norm(),
        ETA_LAW_TOL,
    )
    .with_constant(ratio)
    .with_samples(vec![tau])
    .with_detail(at.clone());

    let h_lhs = eta.eval((tau + 1.0) / 2.0)?;
    let h_rhs = e.powi(3) / (eta.eval(tau / 2.0)? * eta.eval(tau * 2.0)?);
    let half = VerificationReport::numeric(
        "eta half-shift: eta((tau+1)/2) = eta(tau)^3/(eta(tau/2) eta(2tau))",
        (h_lhs - h_rhs).norm(),
        ETA_LAW_TOL,
    )
    .with_constant(h_lhs / h_rhs)
    .with_samples(vec![tau])
    .with_detail(at.clone());

    let expected_phase = (i * std::f64::consts::PI / 24.0).exp();
    let diag = VerificationReport::numeric(
        "eta half-shift ratio equals e^(i pi/24)",
        (h_lhs / h_rhs - expected_phase).norm(),
        ETA_LAW_TOL,
    )
    .with_constant(h_lhs / h_rhs)
    .with_samples(vec![tau])
    .with_detail(at);

    Ok(vec![s, t, half, diag])
}

/// Leading exponent of the quotient as a float (handy for diagnostics).
pub fn offset_f64(spec: &EtaQuotientSpec) -> f64 {
    to_f64(&spec.offset())
}

impl EtaQuotientSpec {
    /// Numeric value Π η(t τ)^r · prefactor at τ.
    pub fn eval(&self, tau: Complex64) -> Result<Complex64> {
        if self.is_zero() {
            return Ok(Complex64::zero());
        }
        let eta = EtaNumeric::new();
        let mut v = self.prefactor.to_complex();
        for (t, r) in &self.factors {
            v *= eta.eval(tau * to_f64(t))?.powi(*r as i32);
        }
        Ok(v)
    }
}
