//! Named verification suites, shared by the command-line tool and the tests.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::bracket::{
    c_table, l0_bracket_coeffs, l_bracket, log_pow_series, vbracket_coeffs, Mode,
};
use crate::error::{Error, Result};
use crate::fock::{
    graded_trace_enumerate, graded_trace_product, reference_eta_quotient, trace_gh, trace_setup,
    Twist, TRACE_PAIRS,
};
use crate::modforms::{
    bernoulli_polynomial, check_eta_laws, check_p_transform, check_prop_2_3, eisenstein_e,
    eisenstein_g_lattice, eta_quotient, g_from_series, q_series_q, q_transform_residual,
    RationalPolynomial, RootOfUnity,
};
use crate::report::VerificationReport;
use crate::series::rational::{binomial, factorial, format_short, int, rat};
use crate::series::{CycloScalar, EvalPoint, NumericSeries};
use crate::sl2::{act_twist, transform_ratio, SL2Matrix, TwistPair};
use crate::tolerances::*;

pub const SUITES: [&str; 11] = [
    "sigma-examples",
    "g-examples",
    "enumeration-oracle",
    "Q-transform",
    "P-transform",
    "prop-2-3",
    "bracket",
    "eisenstein",
    "eta",
    "trace-transforms",
    "bernoulli",
];

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: String,
    pub items: Vec<VerificationReport>,
    pub pass: bool,
    pub duration: Duration,
}

impl SuiteResult {
    fn new(name: &str, items: Vec<VerificationReport>, duration: Duration) -> Self {
        let pass = items.iter().all(|r| r.pass);
        SuiteResult {
            name: name.to_string(),
            items,
            pass,
            duration,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationReport> {
        self.items.iter().filter(|r| !r.pass)
    }

    /// Deterministic JSON (the duration is left out).
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.name,
            "pass": self.pass,
            "checks": self.items.len(),
            "items": self.items.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn summary_table(&self) -> String {
        let mut s = String::new();
        for r in &self.items {
            let status = if r.pass { "PASS" } else { "FAIL" };
            let res = r
                .residual
                .map(|x| format!("  residual {x:.3e}"))
                .unwrap_or_default();
            let _ = writeln!(s, "{status}  {}{res}", r.label);
        }
        let passed = self.items.iter().filter(|r| r.pass).count();
        let _ = writeln!(
            s,
            "{}: {}/{} passed in {:.2?}",
            self.name,
            passed,
            self.items.len(),
            self.duration
        );
        s
    }
}

pub fn run_suite(name: &str) -> Result<SuiteResult> {
    let start = Instant::now();
    let items = match name {
        "sigma-examples" => sigma_examples()?,
        "g-examples" => g_examples()?,
        "enumeration-oracle" => enumeration_oracle()?,
        "Q-transform" => q_transform()?,
        "P-transform" => p_transform()?,
        "prop-2-3" => window_identity()?,
        "bracket" => bracket()?,
        "eisenstein" => eisenstein()?,
        "eta" => eta()?,
        "trace-transforms" => trace_transforms()?,
        "bernoulli" => bernoulli(),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(SuiteResult::new(name, items, start.elapsed()))
}

fn pt(re: f64, im: f64) -> EvalPoint {
    EvalPoint::from_parts(re, im).expect("upper half plane")
}

const SIGMA_PAIRS: [(Twist, Twist); 4] = [
    (Twist::One, Twist::One),
    (Twist::One, Twist::Sigma),
    (Twist::Sigma, Twist::One),
    (Twist::Sigma, Twist::Sigma),
];
const G_PAIRS: [(Twist, Twist); 3] = [
    (Twist::G, Twist::Sigma),
    (Twist::Sigma, Twist::G),
    (Twist::G, Twist::GSigma),
];

fn trace_vs_eta(x: Twist, y: Twist, l: u32, order: u64) -> Result<VerificationReport> {
    let t = trace_gh(x, y, l, order)?;
    let spec = reference_eta_quotient(x, y, l)?;
    let e = eta_quotient(&spec, order)?;
    let pass = if spec.is_zero() { t.is_zero() } else { t == e };
    Ok(
        VerificationReport::exact(format!("T(1,({x},{y})) = {spec}, l={l}"), pass)
            .with_detail(format!("trace = {t}")),
    )
}

fn sigma_examples() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for l in [2, 4, 8] {
        for (x, y) in SIGMA_PAIRS {
            out.push(trace_vs_eta(x, y, l, EXACT_ORDER)?);
        }
    }
    Ok(out)
}

fn g_examples() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for l in [4, 8] {
        for (x, y) in G_PAIRS {
            out.push(trace_vs_eta(x, y, l, EXACT_ORDER)?);
        }
        let (m, _) = trace_setup(Twist::G, Twist::Sigma, l)?;
        let t = trace_gh(Twist::G, Twist::Sigma, l, EXACT_ORDER)?;
        let pass =
            m.conformal_weight == rat(1, 8) && t.offset() == &(rat(1, 8) - rat(l as i64, 48));
        out.push(
            VerificationReport::exact(format!("M has conformal weight 1/8, l={l}"), pass)
                .with_detail(format!("leading exponent {}", format_short(t.offset()))),
        );
    }
    Ok(out)
}

fn enumeration_oracle() -> Result<Vec<VerificationReport>> {
    let mut cases: Vec<(Twist, Twist, u32)> = Vec::new();
    for l in [2, 4, 8] {
        cases.extend(SIGMA_PAIRS.iter().map(|&(x, y)| (x, y, l)));
    }
    for l in [4, 8] {
        cases.extend(G_PAIRS.iter().map(|&(x, y)| (x, y, l)));
    }
    let mut out = Vec::new();
    for (x, y, l) in cases {
        let (m, aut) = trace_setup(x, y, l)?;
        let w = ENUMERATION_WEIGHT;
        let e = graded_trace_enumerate(&m, aut, w)?;
        let p = graded_trace_product(&m, aut, w)?;
        out.push(VerificationReport::exact(
            format!("enumeration = product for ({x},{y}), l={l}, weight {w}"),
            e == p,
        ));
    }
    Ok(out)
}

fn pairs() -> [(RootOfUnity, RootOfUnity); 3] {
    let (one, neg) = (RootOfUnity::one(), RootOfUnity::minus_one());
    [(one, neg), (neg, one), (neg, neg)]
}

fn q_transform() -> Result<Vec<VerificationReport>> {
    let ts = SL2Matrix::t().mul(&SL2Matrix::s());
    let mut cache: HashMap<(u32, RootOfUnity, RootOfUnity), crate::series::QSeries> =
        HashMap::new();
    let mut get = |k: u32, mu: RootOfUnity, lam: RootOfUnity| -> Result<crate::series::QSeries> {
        if let Some(s) = cache.get(&(k, mu, lam)) {
            return Ok(s.clone());
        }
        let s = q_series_q(k, mu, lam, Q_TRANSFORM_ORDER)?;
        cache.insert((k, mu, lam), s.clone());
        Ok(s)
    };
    let mut out = Vec::new();
    for k in [2, 4, 6] {
        for (mu, lam) in pairs() {
            for g in [SL2Matrix::s(), SL2Matrix::t(), ts] {
                let (mu2, lam2) = crate::sl2::act_pair(mu, lam, &g);
                let lhs = get(k, mu, lam)?;
                let rhs = get(k, mu2, lam2)?;
                for p in [pt(0.0, 2.0), pt(1.0, 2.0)] {
                    out.push(q_transform_residual(
                        k,
                        (mu, lam),
                        &lhs,
                        &rhs,
                        &g,
                        p,
                        Q_TRANSFORM_TOL,
                    )?);
                }
            }
        }
    }
    Ok(out)
}

/// (τ, z) samples with 0 < Im z < Im τ whose images under S and T stay in the region.
pub fn p_transform_samples() -> Vec<(EvalPoint, Complex64)> {
    vec![
        (pt(0.0, 2.0), Complex64::new(-0.3, 1.2)),
        (pt(0.0, 3.0), Complex64::new(-0.5, 1.5)),
    ]
}

fn p_transform() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let (one, neg) = (RootOfUnity::one(), RootOfUnity::minus_one());
    for k in [1, 2] {
        for g in [SL2Matrix::s(), SL2Matrix::t()] {
            for (tau, z) in p_transform_samples() {
                out.push(check_p_transform(
                    k,
                    one,
                    neg,
                    &g,
                    tau,
                    z,
                    P_TRANSFORM_CUTOFF,
                    P_TRANSFORM_TOL,
                )?);
            }
        }
    }
    Ok(out)
}

fn window_identity() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for k in 0..=4 {
        for m in -2..=2i64 {
            for (mu, lam) in pairs() {
                let window = PROP_ORDER + m.unsigned_abs() + 2;
                out.push(check_prop_2_3(k, m, mu, lam, window, PROP_ORDER)?);
            }
        }
    }
    Ok(out)
}

fn bracket() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let i_max = 12u32;
    let mut equiv = true;
    let mut first_bad = String::new();
    for p in -2..=10 {
        let t = c_table(p, i_max);
        for m in 0..=i_max {
            let s = log_pow_series(m, p, i_max as u64);
            for i in 0..=i_max {
                let lhs = CycloScalar::from_rational(factorial(m) * t.get(i, m));
                if lhs != s.coeffs()[i as usize] && equiv {
                    equiv = false;
                    first_bad = format!("p={p} i={i} m={m}");
                }
            }
        }
    }
    let r = VerificationReport::exact(
        "binomial table = log-power expansion, p in -2..10, i <= 12",
        equiv,
    );
    out.push(if equiv { r } else { r.with_detail(first_bad) });

    let mut m0 = true;
    for wt in -2..=10 {
        let v = vbracket_coeffs(wt, 0, i_max);
        m0 &= v
            .iter()
            .enumerate()
            .all(|(i, c)| *c == binomial(&int(wt - 1), i as u32));
    }
    out.push(VerificationReport::exact(
        "v[0] = sum binom(wt-1, i) v(i)",
        m0,
    ));

    let l0 = l0_bracket_coeffs(BRACKET_IMAX)?;
    let head = l0[..3] == [rat(1, 2), rat(-1, 6), rat(1, 12)];
    out.push(VerificationReport::exact(
        "L[0] coefficients 1/2, -1/6, 1/12",
        head,
    ));

    let derived = l_bracket(0, &int(1), BRACKET_IMAX)?;
    let agree = derived.coeff(&Mode::Virasoro(0)) == int(1)
        && l0
            .iter()
            .enumerate()
            .all(|(n, c)| derived.coeff(&Mode::Virasoro(n as i64 + 1)) == *c);
    out.push(VerificationReport::exact(
        "L[0] from the weight-2 bracket expansion matches (-1)^(n-1)/(n(n+1))",
        agree,
    ));

    let lm1 = l_bracket(-1, &int(1), BRACKET_IMAX)?;
    let ok = lm1.0.len() == 2
        && lm1.coeff(&Mode::Virasoro(-1)) == int(1)
        && lm1.coeff(&Mode::Virasoro(0)) == int(1);
    out.push(VerificationReport::exact("L[-1] = L(-1) + L(0)", ok));

    let c = rat(1, 2);
    let lm2 = l_bracket(-2, &c, BRACKET_IMAX)?;
    out.push(VerificationReport::exact(
        "L[-2] = omega[-1] - c/24",
        lm2.coeff(&Mode::Identity) == -c / int(24),
    ));
    Ok(out)
}

fn eisenstein() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let i = pt(0.0, 1.0);
    for k in [4, 6, 8] {
        let lat = eisenstein_g_lattice(k, i, LATTICE_CUTOFF)?;
        let ser = g_from_series(k, i, 60)?;
        out.push(
            VerificationReport::numeric(
                format!("G_{k} lattice (R={LATTICE_CUTOFF}) vs (2 pi i)^{k} E_{k} at tau=i"),
                (lat - ser).norm(),
                LATTICE_TOL,
            )
            .with_samples(vec![i.tau()]),
        );
    }
    let e2 = eisenstein_e(2, 2)?;
    let expect = [rat(-1, 12), int(2), int(6)].map(CycloScalar::from_rational);
    out.push(VerificationReport::exact(
        "E_2 = -1/12 + 2q + 6q^2 + ...",
        e2.coeffs() == expect,
    ));
    let e4 = eisenstein_e(4, 0)?;
    out.push(VerificationReport::exact(
        "E_4 constant term 1/720",
        e4.coeffs()[0] == CycloScalar::from_rational(rat(1, 720)),
    ));
    Ok(out)
}

fn eta() -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for p in [pt(0.0, 2.0), pt(0.0, 3.0)] {
        out.extend(check_eta_laws(p)?);
    }
    Ok(out)
}

fn twist_exponents(t: Twist) -> (i64, i64) {
    match t {
        Twist::One => (0, 0),
        Twist::G => (1, 0),
        Twist::Sigma => (0, 1),
        Twist::GSigma => (1, 1),
    }
}

fn twist_from_exponents(e: (u32, u32)) -> Twist {
    match e {
        (0, 0) => Twist::One,
        (1, 0) => Twist::G,
        (0, 1) => Twist::Sigma,
        _ => Twist::GSigma,
    }
}

/// The pair (x, y)γ in terms of g and σ (both of order 2).
pub fn act_on_trace_pair(x: Twist, y: Twist, g: &SL2Matrix) -> (Twist, Twist) {
    let tp = TwistPair::new(twist_exponents(x), twist_exponents(y), (2, 2));
    let r = act_twist(&tp, g);
    (
        twist_from_exponents(r.first),
        twist_from_exponents(r.second),
    )
}

/// Numeric evaluator of T(1, (x, y), ·) from the expansion to [`TRACE_EVAL_ORDER`].
pub fn trace_evaluator(x: Twist, y: Twist, l: u32) -> Result<NumericSeries> {
    Ok(trace_gh(x, y, l, TRACE_EVAL_ORDER)?.numeric())
}

/// transform_ratio of T(1,(x,y)) at γτ against T(1,(x,y)γ) at τ.
pub fn trace_transform(
    x: Twist,
    y: Twist,
    l: u32,
    g: &SL2Matrix,
    weight: f64,
    samples: &[EvalPoint],
    tol: f64,
) -> Result<VerificationReport> {
    TraceCache::default().transform(x, y, l, g, weight, samples, tol)
}

/// Numeric trace evaluators, built once per (x, y, l).
#[derive(Default)]
pub struct TraceCache(HashMap<(Twist, Twist, u32), NumericSeries>);

impl TraceCache {
    pub fn get(&mut self, x: Twist, y: Twist, l: u32) -> Result<&NumericSeries> {
        match self.0.entry((x, y, l)) {
            Entry::Occupied(e) => Ok(e.into_mut()),
            Entry::Vacant(e) => Ok(e.insert(trace_evaluator(x, y, l)?)),
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn transform(
        &mut self,
        x: Twist,
        y: Twist,
        l: u32,
        g: &SL2Matrix,
        weight: f64,
        samples: &[EvalPoint],
        tol: f64,
    ) -> Result<VerificationReport> {
        let (x2, y2) = act_on_trace_pair(x, y, g);
        let lhs = self.get(x, y, l)?.clone();
        let rhs = self.get(x2, y2, l)?;
        transform_ratio(
            &format!("T(1,({x},{y}))(g tau) / T(1,({x2},{y2}))(tau), g={g}, l={l}"),
            |p| Ok(lhs.eval(p).value),
            |p| Ok(rhs.eval(p).value),
            g,
            weight,
            samples,
            tol,
        )
    }
}

pub fn criterion_samples() -> Vec<EvalPoint> {
    vec![pt(0.0, 2.0), pt(1.0, 2.0), pt(0.0, 3.0)]
}

fn trace_transforms() -> Result<Vec<VerificationReport>> {
    let mut cache = TraceCache::default();
    let mut out = transform_constants(&mut cache)?;
    // weight-0 ratio constancy for every trace whose image is again one of the seven
    let defaults = crate::sl2::default_samples();
    for l in [4, 8] {
        for (x, y) in TRACE_PAIRS
            .iter()
            .copied()
            .filter(|p| *p != (Twist::One, Twist::One))
        {
            for g in [SL2Matrix::s(), SL2Matrix::t()] {
                let image = act_on_trace_pair(x, y, &g);
                if TRACE_PAIRS.contains(&image) {
                    out.push(cache.transform(x, y, l, &g, 0.0, &defaults, TRACE_TRANSFORM_TOL)?);
                }
            }
        }
    }
    Ok(out)
}

/// (g,σ) under S against (σ,g) and under T against (g,gσ), l ∈ {4, 8}, plus |ν| = 1.
pub fn transform_constants(cache: &mut TraceCache) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let samples = criterion_samples();
    for l in [4, 8] {
        let s = cache.transform(
            Twist::G,
            Twist::Sigma,
            l,
            &SL2Matrix::s(),
            0.0,
            &samples,
            TRACE_TRANSFORM_TOL,
        )?;
        let c = s.constant.expect("numeric report");
        out.push(s.with_detail(format!("S-constant {c}")));
        let t = cache.transform(
            Twist::G,
            Twist::Sigma,
            l,
            &SL2Matrix::t(),
            0.0,
            &samples,
            TRACE_TRANSFORM_TOL,
        )?;
        let nu = t.constant.expect("numeric report");
        out.push(t);
        out.push(
            VerificationReport::numeric(
                format!("| |nu| - 1 | for the T-constant, l={l}"),
                (nu.norm() - 1.0).abs(),
                UNIT_MODULUS_TOL,
            )
            .with_constant(nu),
        );
    }
    Ok(out)
}

fn bernoulli() -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let ok = (1..=12usize).all(|r| {
        let p = bernoulli_polynomial(r);
        p.shift(&int(1)).sub(&p) == RationalPolynomial::monomial(r - 1).scale(&int(r as i64))
    });
    out.push(VerificationReport::exact(
        "B_r(x+1) - B_r(x) = r x^(r-1), r <= 12",
        ok,
    ));
    let low = bernoulli_polynomial(0).to_string() == "1"
        && bernoulli_polynomial(1).to_string() == "x - 1/2"
        && bernoulli_polynomial(2).to_string() == "x^2 - x + 1/6";
    out.push(VerificationReport::exact("B_0, B_1, B_2", low));
    out
}
