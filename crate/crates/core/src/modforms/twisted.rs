//! The twisted families P_k, Q_k and the windowed two-variable P̄_k.
//!
//! Throughout, μ = e^{2πi j/M} fixes the z-exponent lattice j/M + Z and λ
//! enters through the denominators 1 − λq^n.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::bernoulli::bernoulli_polynomial;
use super::RootOfUnity;
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::series::rational::{factorial, format_short, int, to_f64, Rational};
use crate::series::{CycloScalar, EvalPoint, QSeries};
use crate::sl2::{act_pair, SL2Matrix};

fn trivial(mu: RootOfUnity, lambda: RootOfUnity) -> bool {
    mu.is_one() && lambda.is_one()
}

/// Coefficient accumulator on the lattice (1/M)Z≥0 with values in Q(ζ_N),
/// keyed by root exponent so that no field multiplication is needed.
struct Accumulator {
    level: u32,
    slots: Vec<BTreeMap<u32, Rational>>,
}

impl Accumulator {
    fn new(len: usize, level: u32) -> Self {
        Accumulator {
            level,
            slots: vec![BTreeMap::new(); len],
        }
    }

    /// Adds c·ζ_N^e at lattice index `idx`.
    fn add(&mut self, idx: usize, e: i64, c: &Rational) {
        let e = e.rem_euclid(self.level as i64) as u32;
        *self.slots[idx].entry(e).or_insert_with(Rational::zero) += c;
    }

    fn into_coeffs(self) -> Vec<CycloScalar> {
        let level = self.level;
        self.slots
            .into_iter()
            .map(|m| {
                let terms: Vec<_> = m.into_iter().map(|(e, c)| (c, e as i64)).collect();
                CycloScalar::from_terms(level, &terms)
            })
            .collect()
    }
}

/// n^{k−1} with the convention 0^0 = 1.
fn power_km1(n: &Rational, k: u32) -> Rational {
    num_traits::pow(n.clone(), (k - 1) as usize)
}

/// λ exponent l on level N, so that λ = ζ_N^l.
fn lambda_parts(lambda: RootOfUnity) -> (i64, u32) {
    (lambda.j() as i64, lambda.order())
}

/// Q_k(μ, λ, τ) expanded on (1/M)Z≥0 up to q^order.
pub fn q_series_q(k: u32, mu: RootOfUnity, lambda: RootOfUnity, order: u64) -> Result<QSeries> {
    if k == 0 {
        return Ok(QSeries::constant(CycloScalar::from_int(-1), 1, order));
    }
    if trivial(mu, lambda) {
        return Err(Error::UndefinedAtTrivialPair(k));
    }
    let m = mu.order() as u64;
    let j = mu.j() as u64;
    let (l, level) = lambda_parts(lambda);
    let len = (order * m) as usize + 1;
    let mut acc = Accumulator::new(len, level);
    let x = mu.fraction();
    let kf = factorial(k - 1);

    acc.add(
        0,
        0,
        &(-bernoulli_polynomial(k as usize).eval(&x) / factorial(k)),
    );

    // n = 0, j = 0 in the first sum: λ·0^{k−1}/(1 − λ), nonzero only for k = 1
    if j == 0 && k == 1 {
        let lam = lambda.to_cyclo();
        let c = &lam * &(&CycloScalar::one() - &lam).inv()?;
        for (r, e) in c.lift(level).terms() {
            acc.add(0, e, &r);
        }
    }

    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    // first sum: a = n + j/M > 0; second: a = n − j/M > 0 (n ≥ 1)
    let mut a_num = if j == 0 { m } else { j };
    while a_num <= order * m {
        let a = Rational::new((a_num as i64).into(), (m as i64).into());
        let c = power_km1(&a, k) / &kf;
        let mut s = 1u64;
        while a_num * s <= order * m {
            acc.add((a_num * s) as usize, l * s as i64, &c);
            s += 1;
        }
        a_num += m;
    }
    let mut a_num = m - j;
    while a_num <= order * m {
        let a = Rational::new((a_num as i64).into(), (m as i64).into());
        let c = &sign * power_km1(&a, k) / &kf;
        let mut s = 1u64;
        while a_num * s <= order * m {
            acc.add((a_num * s) as usize, -l * s as i64, &c);
            s += 1;
        }
        a_num += m;
    }
    Ok(QSeries::new(Rational::zero(), m, acc.into_coeffs()))
}

/// Finite z-window of P̄_k(μ, λ, z, τ) = 1/(k−1)! Σ'_{n ∈ j/M+Z} n^{k−1} z^n/(1 − λq^n).
///
/// Entry n holds the coefficient of z^n as a q-series; entries with n < 0
/// are stored in the rewritten form −Σ_{s≥1} λ^{−s} q^{−ns}.
#[derive(Clone, Debug, PartialEq)]
pub struct PbarWindow {
    pub mu: RootOfUnity,
    pub lambda: RootOfUnity,
    pub k: u32,
    pub window: u64,
    pub entries: BTreeMap<Rational, QSeries>,
}

impl PbarWindow {
    pub fn entry(&self, n: &Rational) -> Option<&QSeries> {
        self.entries.get(n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(QSeries::is_zero)
    }
}

fn pbar_entry(k: u32, n: &Rational, lambda: RootOfUnity, m: u64, order: u64) -> Result<QSeries> {
    let (l, level) = lambda_parts(lambda);
    let len = (order * m) as usize + 1;
    let mut acc = Accumulator::new(len, level);
    let c = power_km1(n, k) / factorial(k - 1);
    if n.is_zero() {
        let inv = (&CycloScalar::one() - &lambda.to_cyclo()).inv()?.scale(&c);
        for (r, e) in inv.lift(level).terms() {
            acc.add(0, e, &r);
        }
    } else {
        // |n|·M is an integer step on the (1/M) lattice
        let step = (n.abs() * int(m as i64)).to_integer();
        let step: u64 = step.try_into().expect("lattice step");
        let (start, dir, c) = if n.is_positive() {
            (0, 1, c)
        } else {
            (1, -1, -c)
        };
        let mut s = start;
        while step * s <= order * m {
            acc.add((step * s) as usize, dir * l * s as i64, &c);
            s += 1;
        }
    }
    Ok(QSeries::new(Rational::zero(), m, acc.into_coeffs()))
}

/// The entries of P̄_k with |n| ≤ W, each known up to q^order.
pub fn pbar_window(
    k: u32,
    mu: RootOfUnity,
    lambda: RootOfUnity,
    window: u64,
    order: u64,
) -> Result<PbarWindow> {
    let mut entries = BTreeMap::new();
    if k > 0 {
        let x = mu.fraction();
        let m = mu.order() as u64;
        let w = window as i64;
        for t in -w - 1..=w {
            let n = &x + int(t);
            if n.abs() > int(w) || (n.is_zero() && trivial(mu, lambda)) {
                continue;
            }
            entries.insert(n.clone(), pbar_entry(k, &n, lambda, m, order)?);
        }
    }
    Ok(PbarWindow {
        mu,
        lambda,
        k,
        window,
        entries,
    })
}

/// e^{2πi x τ} for complex x.
fn e2pi(x: Complex64) -> Complex64 {
    (Complex64::new(0.0, std::f64::consts::TAU) * x).exp()
}

/// P_k(μ, λ, z, τ) = 1/(k−1)! Σ'_{n ∈ j/M+Z} n^{k−1} q_z^n/(1 − λ q_τ^n), |n| ≤ cutoff.
pub fn p_eval(
    k: u32,
    mu: RootOfUnity,
    lambda: RootOfUnity,
    z: Complex64,
    p: EvalPoint,
    cutoff: u32,
) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::InvalidWeight(0));
    }
    let tau = p.tau();
    if !(z.im > 0.0 && z.im < tau.im) {
        return Err(Error::OutsideConvergenceRegion);
    }
    let lam = lambda.to_complex();
    let x = to_f64(&mu.fraction());
    let mut total = Complex64::zero();
    let c = cutoff as i64;
    for t in -c - 1..=c {
        let n = x + t as f64;
        if n.abs() > cutoff as f64 {
            continue;
        }
        let term = if n == 0.0 {
            if trivial(mu, lambda) || k > 1 {
                continue;
            }
            1.0 / (1.0 - lam)
        } else if n > 0.0 {
            n.powi(k as i32 - 1) * e2pi(z * n) / (1.0 - lam * e2pi(tau * n))
        } else {
            // 1/(1 − λq^n) = −λ^{−1}q^{−n}/(1 − λ^{−1}q^{−n})
            let li = lam.inv();
            -n.powi(k as i32 - 1) * li * e2pi((z - tau) * n) / (1.0 - li * e2pi(-tau * n))
        };
        total += term;
    }
    Ok(total / to_f64(&factorial(k - 1)))
}

/// Residual of P_k(μ, λ, z/(cτ+d), γτ) = (cτ+d)^k P_k((μ, λ)γ, z, τ).
#[allow(clippy::too_many_arguments)]
pub fn check_p_transform(
    k: u32,
    mu: RootOfUnity,
    lambda: RootOfUnity,
    g: &SL2Matrix,
    p: EvalPoint,
    z: Complex64,
    cutoff: u32,
    tol: f64,
) -> Result<VerificationReport> {
    let j = g.automorphy(p.tau());
    let gp = EvalPoint::new(g.apply(p.tau()))?;
    let lhs = p_eval(k, mu, lambda, z / j, gp, cutoff)?;
    let (mu2, lambda2) = act_pair(mu, lambda, g);
    let rhs = j.powi(k as i32) * p_eval(k, mu2, lambda2, z, p, cutoff)?;
    Ok(VerificationReport::numeric(
        format!("P_{k}({mu},{lambda}) under {g} at tau={}, z={z}", p.tau()),
        (lhs - rhs).norm(),
        tol,
    )
    .with_samples(vec![p.tau()]))
}

/// Residual of Q_k(μ, λ, γτ) = (cτ+d)^k Q_k((μ, λ)γ, τ) from expansions to q^order.
pub fn check_q_transform(
    k: u32,
    mu: RootOfUnity,
    lambda: RootOfUnity,
    g: &SL2Matrix,
    p: EvalPoint,
    order: u64,
    tol: f64,
) -> Result<VerificationReport> {
    let lhs = q_series_q(k, mu, lambda, order)?;
    let (mu2, lambda2) = act_pair(mu, lambda, g);
    let rhs = q_series_q(k, mu2, lambda2, order)?;
    q_transform_residual(k, (mu, lambda), &lhs, &rhs, g, p, tol)
}

/// As [`check_q_transform`], with both expansions supplied by the caller.
pub fn q_transform_residual(
    k: u32,
    pair: (RootOfUnity, RootOfUnity),
    lhs: &QSeries,
    rhs: &QSeries,
    g: &SL2Matrix,
    p: EvalPoint,
    tol: f64,
) -> Result<VerificationReport> {
    let gp = EvalPoint::new(g.apply(p.tau()))?;
    let l = lhs.eval(gp).value;
    let r = g.automorphy(p.tau()).powi(k as i32) * rhs.eval(p).value;
    Ok(VerificationReport::numeric(
        format!("Q_{k}({},{}) under {g} at tau={}", pair.0, pair.1, p.tau()),
        (l - r).norm(),
        tol,
    )
    .with_samples(vec![p.tau()]))
}

/// Coefficient map of a Laurent polynomial in (z, z1) with q-series coefficients,
/// restricted to the z^{−1} part, keyed by the z1 exponent.
type Residue = BTreeMap<Rational, QSeries>;

fn add_into(res: &mut Residue, key: Rational, s: QSeries) {
    let v = match res.remove(&key) {
        Some(prev) => prev.add(&s),
        None => s,
    };
    res.insert(key, v);
}

/// Res_z of Σ_{s=0}^{S} z1^{s+m−x} z^{−s−1−m+x} · P̄(z1/z): the window entry
/// c_n carries z1^n z^{−n}.
fn residue_first(pbar: &PbarWindow, m: i64, x: &Rational, s_max: u64) -> Residue {
    let mut res = Residue::new();
    let minus_one = -Rational::one();
    for s in 0..=s_max {
        let s = int(s as i64);
        let z_pre = -&s - int(1) - int(m) + x;
        let z1_pre = &s + int(m) - x;
        for (n, c) in &pbar.entries {
            if &z_pre - n == minus_one {
                add_into(&mut res, &z1_pre + n, c.clone());
            }
        }
    }
    res
}

/// Res_z of λ Σ_{s=0}^{S} z^s z1^{−s−1} z1^{m−x} z^{−m+x} · P̄(z1 q/z): the
/// entry c_n now carries z1^n q^n z^{−n}.
fn residue_second(pbar: &PbarWindow, m: i64, x: &Rational, s_max: u64) -> Residue {
    let mut res = Residue::new();
    let minus_one = -Rational::one();
    let lam = pbar.lambda.to_cyclo();
    for s in 0..=s_max {
        let s = int(s as i64);
        let z_pre = &s - int(m) + x;
        let z1_pre = -&s - int(1) + int(m) - x;
        for (n, c) in &pbar.entries {
            if &z_pre - n == minus_one {
                add_into(&mut res, &z1_pre + n, c.shift(n).scale(&lam));
            }
        }
    }
    res
}

/// Both sides of the residue identity up to q^order, plus the z1 powers that
/// survive in the residue besides z1^0 (none when the identity is well posed).
fn window_identity_sides(
    k: u32,
    m: i64,
    mu: RootOfUnity,
    lambda: RootOfUnity,
    window: u64,
    order: u64,
) -> Result<(QSeries, QSeries, Vec<String>)> {
    if trivial(mu, lambda) {
        return Err(Error::Precondition(
            "the residue identity needs (mu, lambda) != (1, 1)".into(),
        ));
    }
    let required = order + m.unsigned_abs() + 1;
    if window <= required {
        return Err(Error::WindowTooSmall { window, required });
    }
    let x = mu.fraction();
    let order_r = int(order as i64);

    let lhs = q_series_q(k, mu, lambda, order)?.add(&QSeries::constant(
        CycloScalar::from_rational(
            bernoulli_polynomial(k as usize).eval(&(int(1 - m) + &x)) / factorial(k),
        ),
        1,
        order,
    ));

    // entries with n < 0 lose |n| orders after the q^n shift of the second term
    let pbar = pbar_window(k, mu, lambda, window, required)?;
    let s_max = window + m.unsigned_abs() + 1;
    let mut res = residue_first(&pbar, m, &x, s_max);
    for (key, v) in residue_second(&pbar, m, &x, s_max) {
        add_into(&mut res, key, v);
    }

    let stray = res
        .iter()
        .filter(|(key, v)| !key.is_zero() && !v.truncate_at(&order_r).is_zero())
        .map(|(key, _)| format_short(key))
        .collect();
    let rhs = res
        .remove(&Rational::zero())
        .unwrap_or_else(|| QSeries::zero(Rational::zero(), 1, order));
    if rhs.precision() < order_r {
        return Err(Error::Precondition(format!(
            "residue side is only known to q^{}",
            format_short(&rhs.precision())
        )));
    }
    Ok((lhs.truncate_at(&order_r), rhs.truncate_at(&order_r), stray))
}

/// Checks Q_k(μ, λ, τ) + B_k(1 − m + j/M)/k! against the residue expression
/// built from P̄_k, exactly up to q^order.
pub fn check_prop_2_3(
    k: u32,
    m: i64,
    mu: RootOfUnity,
    lambda: RootOfUnity,
    window: u64,
    order: u64,
) -> Result<VerificationReport> {
    let (lhs, rhs, stray) = window_identity_sides(k, m, mu, lambda, window, order)?;
    let label = format!("residue identity k={k} m={m} (mu,lambda)=({mu},{lambda}) order {order}");
    let pass = stray.is_empty() && lhs == rhs;
    let detail = if stray.is_empty() {
        format!("lhs = {lhs}\nrhs = {rhs}")
    } else {
        format!("residue has nonzero z1 powers {}", stray.join(", "))
    };
    Ok(VerificationReport::exact(label, pass).with_detail(detail))
}
