//! Truncated q-series with rational exponents on an arithmetic lattice.
//!
//! A series is `q^offset · Σ_{k=0}^{N} c_k q^{k/D}` with coefficients in a
//! cyclotomic field. The coefficients c_0..c_N are known exactly; everything
//! above `offset + N/D` (the precision) is unknown. Arithmetic tracks the
//! precision of every result, so a truncated operand never produces
//! coefficients that look exact but are not.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclo::CycloScalar;
use super::rational::{denom_u64, floor_i64, format_short, int, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct QSeries {
    offset: Rational,
    denom: u64,
    level: u32,
    coeffs: Vec<CycloScalar>,
}

/// Numeric value of a series at a point plus a crude bound on the omitted tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// A point τ of the upper half plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalPoint(Complex64);

impl EvalPoint {
    pub fn new(tau: Complex64) -> Result<Self> {
        if tau.im > 0.0 && tau.re.is_finite() && tau.im.is_finite() {
            Ok(EvalPoint(tau))
        } else {
            Err(Error::OutsideUpperHalfPlane(format!("{tau}")))
        }
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn tau(&self) -> Complex64 {
        self.0
    }
}

/// e^{2πi τ x}.
pub fn q_power(tau: Complex64, x: f64) -> Complex64 {
    (Complex64::new(0.0, std::f64::consts::TAU) * tau * x).exp()
}

fn lcm_with_offset(da: u64, db: u64, diff: &Rational) -> u64 {
    da.lcm(&db).lcm(&denom_u64(diff))
}

impl QSeries {
    /// Builds a series from coefficients; they are lifted to a common level.
    pub fn new(offset: Rational, denom: u64, coeffs: Vec<CycloScalar>) -> Self {
        assert!(denom >= 1, "step denominator must be positive");
        assert!(
            !coeffs.is_empty(),
            "a series carries at least one coefficient"
        );
        let level = coeffs.iter().fold(1u32, |l, c| l.lcm(&c.level()));
        let coeffs = coeffs.into_iter().map(|c| c.lift(level)).collect();
        QSeries {
            offset,
            denom,
            level,
            coeffs,
        }
    }

    /// The zero series on `offset + (1/denom)Z≥0`, known up to `offset + order`.
    pub fn zero(offset: Rational, denom: u64, order: u64) -> Self {
        let n = (order * denom) as usize;
        QSeries::new(offset, denom, vec![CycloScalar::zero(); n + 1])
    }

    pub fn constant(c: CycloScalar, denom: u64, order: u64) -> Self {
        let mut s = QSeries::zero(Rational::zero(), denom, order);
        s.coeffs[0] = c;
        s.relevel()
    }

    pub fn one(order: u64) -> Self {
        QSeries::constant(CycloScalar::one(), 1, order)
    }

    /// Builds from integer coefficients at q^0, q^1, … (used heavily in tests).
    pub fn from_ints(values: &[i64]) -> Self {
        QSeries::new(
            Rational::zero(),
            1,
            values.iter().map(|&v| CycloScalar::from_int(v)).collect(),
        )
    }

    fn relevel(mut self) -> Self {
        let level = self.coeffs.iter().fold(1u32, |l, c| l.lcm(&c.level()));
        self.level = level;
        for c in &mut self.coeffs {
            if c.level() != level {
                *c = c.lift(level);
            }
        }
        self
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn step(&self) -> Rational {
        Rational::new(1.into(), self.denom.into())
    }

    pub fn step_denominator(&self) -> u64 {
        self.denom
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Index of the last known coefficient.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest exponent whose coefficient is known.
    pub fn precision(&self) -> Rational {
        &self.offset + Rational::new(self.truncation().into(), self.denom.into())
    }

    pub fn coeffs(&self) -> &[CycloScalar] {
        &self.coeffs
    }

    pub fn exponent(&self, k: usize) -> Rational {
        &self.offset + Rational::new(k.into(), self.denom.into())
    }

    /// Coefficient of q^e; `None` if e lies beyond the precision.
    pub fn coeff_at(&self, e: &Rational) -> Option<CycloScalar> {
        if *e > self.precision() {
            return None;
        }
        if *e < self.offset {
            return Some(CycloScalar::zero());
        }
        let idx = (e - &self.offset) * int(self.denom as i64);
        if !idx.is_integer() {
            return Some(CycloScalar::zero());
        }
        let idx = idx.to_integer().to_usize()?;
        Some(self.coeffs[idx].clone())
    }

    /// Nonzero (exponent, coefficient) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &CycloScalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.exponent(k), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycloScalar::is_zero)
    }

    /// Coefficients placed on the grid `offset + (1/denom)·k`, k ≤ max_index.
    fn on_grid(&self, offset: &Rational, denom: u64, max_index: usize) -> Vec<CycloScalar> {
        let mut out = vec![CycloScalar::zero(); max_index + 1];
        let ratio = denom / self.denom;
        let shift = (&self.offset - offset) * int(denom as i64);
        debug_assert!(shift.is_integer() && !shift.is_negative());
        let shift = shift.to_integer().to_usize().expect("grid shift");
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = shift + k * ratio as usize;
            if idx > max_index {
                break;
            }
            out[idx] = c.clone();
        }
        out
    }

    /// Re-expresses the series on a finer lattice `offset + (1/denom)Z`.
    pub fn refine(&self, denom: u64) -> Self {
        assert!(
            denom.is_multiple_of(self.denom),
            "target lattice must refine the current one"
        );
        let n = self.truncation() * (denom / self.denom) as usize;
        QSeries {
            offset: self.offset.clone(),
            denom,
            level: self.level,
            coeffs: self.on_grid(&self.offset, denom, n),
        }
    }

    /// Drops coefficients beyond `offset + order`.
    pub fn truncate(&self, order: u64) -> Self {
        let n = (order * self.denom) as usize;
        let mut s = self.clone();
        s.coeffs.truncate(n + 1);
        s
    }

    /// Drops coefficients with exponent above `prec`.
    pub fn truncate_at(&self, prec: &Rational) -> Self {
        if *prec >= self.precision() {
            return self.clone();
        }
        assert!(*prec >= self.offset, "truncation below the offset");
        let n = floor_i64(&((prec - &self.offset) * int(self.denom as i64))) as usize;
        let mut s = self.clone();
        s.coeffs.truncate(n + 1);
        s
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        QSeries::new(
            self.offset.clone(),
            self.denom,
            self.coeffs.iter().map(|x| x * c).collect(),
        )
    }

    /// Multiplies by q^r.
    pub fn shift(&self, r: &Rational) -> Self {
        let mut s = self.clone();
        s.offset = &s.offset + r;
        s
    }

    /// Maps every exponent e to t·e (substitution τ ↦ tτ).
    pub fn rescale(&self, t: &Rational) -> Self {
        assert!(t.is_positive(), "rescale factor must be positive");
        let p = t.numer().to_usize().expect("rescale numerator");
        let r = denom_u64(t);
        let denom = self.denom * r;
        let mut coeffs = vec![CycloScalar::zero(); self.truncation() * p + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * p] = c.clone();
        }
        QSeries::new(&self.offset * t, denom, coeffs)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let diff = &self.offset - &other.offset;
        let denom = lcm_with_offset(self.denom, other.denom, &diff);
        let offset = self.offset.clone().min(other.offset.clone());
        let prec = self.precision().min(other.precision());
        let n = floor_i64(&((&prec - &offset) * int(denom as i64))) as usize;
        let a = self.on_grid(&offset, denom, n);
        let b = other.on_grid(&offset, denom, n);
        let coeffs = a
            .iter()
            .zip(&b)
            .map(|(x, y)| if negate { x - y } else { x + y })
            .collect();
        QSeries::new(offset, denom, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    /// Cauchy product; offsets add and the result is truncated where either
    /// factor stops being known.
    pub fn mul(&self, other: &Self) -> Self {
        let denom = self.denom.lcm(&other.denom);
        let offset = &self.offset + &other.offset;
        let prec = (self.precision() + &other.offset).min(other.precision() + &self.offset);
        let n = floor_i64(&((&prec - &offset) * int(denom as i64))) as usize;
        let ra = (denom / self.denom) as usize;
        let rb = (denom / other.denom) as usize;
        let mut out = vec![CycloScalar::zero(); n + 1];
        let level = self.level.lcm(&other.level);
        for (i, x) in self.coeffs.iter().enumerate() {
            if i * ra > n {
                break;
            }
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                let idx = i * ra + j * rb;
                if idx > n {
                    break;
                }
                if !y.is_zero() {
                    out[idx] = &out[idx] + &(x * y);
                }
            }
        }
        for c in &mut out {
            if c.level() != level {
                *c = c.lift(level);
            }
        }
        QSeries {
            offset,
            denom,
            level,
            coeffs: out,
        }
    }

    /// Multiplicative inverse. Leading zero coefficients are stripped first,
    /// so the result starts at minus the first exponent that is actually
    /// present.
    pub fn invert(&self) -> Result<Self> {
        let first = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::NotInvertible)?;
        let a = &self.coeffs[first..];
        let offset = -self.exponent(first);
        let lead_inv = a[0].inv()?;
        let n = a.len() - 1;
        let mut b: Vec<CycloScalar> = Vec::with_capacity(n + 1);
        b.push(lead_inv.clone());
        for m in 1..=n {
            let mut acc = CycloScalar::zero();
            for i in 1..=m {
                if !a[i].is_zero() && !b[m - i].is_zero() {
                    acc = &acc + &(&a[i] * &b[m - i]);
                }
            }
            b.push(-&(&acc * &lead_inv));
        }
        Ok(QSeries::new(offset, self.denom, b))
    }

    /// Integer power; negative exponents go through `invert`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = QSeries::constant(CycloScalar::one(), base.denom, 0);
        // exponent 0 keeps the relative extent of the operand
        acc.coeffs = vec![CycloScalar::zero(); base.truncation() + 1];
        acc.coeffs[0] = CycloScalar::one();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Complex coefficients, for repeated numeric evaluation.
    pub fn numeric(&self) -> NumericSeries {
        NumericSeries {
            offset: super::rational::to_f64(&self.offset),
            step: 1.0 / self.denom as f64,
            coeffs: self.coeffs.iter().map(CycloScalar::to_complex).collect(),
        }
    }

    pub fn eval(&self, p: EvalPoint) -> Evaluation {
        self.numeric().eval(p)
    }

    /// Evaluates at a raw complex τ, rejecting points off the upper half plane.
    pub fn eval_at(&self, tau: Complex64) -> Result<Evaluation> {
        Ok(self.eval(EvalPoint::new(tau)?))
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            offset: super::rational::format_pq(&self.offset),
            step_denominator: self.denom,
            level: self.level,
            coefficients: self
                .coeffs
                .iter()
                .map(|c| {
                    c.terms()
                        .into_iter()
                        .map(|(r, a)| ((r.numer().to_string(), r.denom().to_string()), a))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<Self> {
        if j.step_denominator == 0 {
            return Err(Error::Parse("step_denominator must be positive".into()));
        }
        if j.level == 0 {
            return Err(Error::Parse("level must be positive".into()));
        }
        if j.coefficients.is_empty() {
            return Err(Error::Parse("coefficient list is empty".into()));
        }
        let offset = super::rational::parse_rational(&j.offset)?;
        let coeffs = j
            .coefficients
            .iter()
            .map(|terms| {
                let parsed = terms
                    .iter()
                    .map(|((n, d), a)| {
                        super::rational::parse_rational(&format!("{n}/{d}")).map(|r| (r, *a))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(CycloScalar::from_terms(j.level, &parsed))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut s = QSeries::new(offset, j.step_denominator, coeffs);
        s.level = s.level.lcm(&j.level);
        let level = s.level;
        for c in &mut s.coeffs {
            *c = c.lift(level);
        }
        Ok(s)
    }
}

/// Canonical serialised form of a series.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SeriesJson {
    pub offset: String,
    pub step_denominator: u64,
    pub level: u32,
    /// One entry per lattice point; each entry lists (rational, ζ-exponent) terms.
    pub coefficients: Vec<Vec<((String, String), i64)>>,
}

/// Float image of a series for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct NumericSeries {
    offset: f64,
    step: f64,
    coeffs: Vec<Complex64>,
}

impl NumericSeries {
    pub fn eval(&self, p: EvalPoint) -> Evaluation {
        let tau = p.tau();
        let base = q_power(tau, self.step);
        let mut pw = q_power(tau, self.offset);
        let mut value = Complex64::zero();
        for c in &self.coeffs {
            if *c != Complex64::zero() {
                value += c * pw;
            }
            pw *= base;
        }
        let n = self.coeffs.len();
        let tail_start = n - n.div_ceil(4);
        let c_max = self.coeffs[tail_start..]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        let abs_q = (-std::f64::consts::TAU * tau.im).exp();
        let next = self.offset + self.step * n as f64;
        let tail_bound = c_max * abs_q.powf(next) / (1.0 - abs_q.powf(self.step));
        Evaluation { value, tail_bound }
    }
}

impl PartialEq for QSeries {
    /// Equal iff all coefficients agree on the common lattice up to the
    /// common precision.
    fn eq(&self, other: &Self) -> bool {
        let diff = &self.offset - &other.offset;
        let denom = lcm_with_offset(self.denom, other.denom, &diff);
        let offset = self.offset.clone().min(other.offset.clone());
        let prec = self.precision().min(other.precision());
        let n = floor_i64(&((&prec - &offset) * int(denom as i64))) as usize;
        self.on_grid(&offset, denom, n) == other.on_grid(&offset, denom, n)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&CycloScalar::from_int(-1))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e.is_zero() {
                write!(f, "{c}")?;
            } else if c.as_rational().is_some_and(|r| r.is_one()) {
                write!(f, "q^({})", format_short(&e))?;
            } else {
                write!(f, "{c}*q^({})", format_short(&e))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        let next = self.exponent(self.coeffs.len());
        write!(f, " + O(q^({}))", format_short(&next))
    }
}
