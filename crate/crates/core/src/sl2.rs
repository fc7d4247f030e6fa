//! SL(2,Z): the action on τ, on pairs of roots of unity and on commuting
//! twist pairs, congruence-subgroup membership, and the numeric verifier for
//! transformation laws.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::modforms::RootOfUnity;
use crate::report::VerificationReport;
use crate::series::EvalPoint;
use crate::tolerances::{DEGENERATE_RHS, SAMPLE_SEPARATION};

/// Integer matrix (a b; c d) with ad − bc = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SL2Matrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl SL2Matrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::NotUnimodular(a, b, c, d));
        }
        Ok(SL2Matrix { a, b, c, d })
    }

    pub fn identity() -> Self {
        SL2Matrix {
            a: 1,
            b: 0,
            c: 0,
            d: 1,
        }
    }

    /// S = (0 −1; 1 0), τ ↦ −1/τ.
    pub fn s() -> Self {
        SL2Matrix {
            a: 0,
            b: -1,
            c: 1,
            d: 0,
        }
    }

    /// T = (1 1; 0 1), τ ↦ τ + 1.
    pub fn t() -> Self {
        SL2Matrix {
            a: 1,
            b: 1,
            c: 0,
            d: 1,
        }
    }

    pub fn entries(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Self) -> Self {
        SL2Matrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        SL2Matrix {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { *self };
        (0..e.unsigned_abs()).fold(Self::identity(), |acc, _| acc.mul(&base))
    }

    /// cτ + d.
    pub fn automorphy(&self, tau: Complex64) -> Complex64 {
        tau * self.c as f64 + self.d as f64
    }

    pub fn apply(&self, tau: Complex64) -> Complex64 {
        (tau * self.a as f64 + self.b as f64) / self.automorphy(tau)
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for SL2Matrix {
    type Err = Error;

    /// Parses "a,b,c,d".
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<i64> = s
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("expected a,b,c,d integers, got {s:?}")))?;
        match v[..] {
            [a, b, c, d] => SL2Matrix::new(a, b, c, d),
            _ => Err(Error::Parse(format!("expected four entries, got {s:?}"))),
        }
    }
}

/// γτ = (aτ + b)/(cτ + d).
pub fn mobius(g: &SL2Matrix, p: EvalPoint) -> EvalPoint {
    EvalPoint::new(g.apply(p.tau())).expect("SL(2,Z) preserves the upper half plane")
}

/// (μ, λ)γ = (μ^a λ^c, μ^b λ^d).
pub fn act_pair(mu: RootOfUnity, lambda: RootOfUnity, g: &SL2Matrix) -> (RootOfUnity, RootOfUnity) {
    let (a, b, c, d) = g.entries();
    (mu.pow(a).mul(&lambda.pow(c)), mu.pow(b).mul(&lambda.pow(d)))
}

/// The pair (g^{i1} h^{j1}, g^{i2} h^{j2}) for commuting generators g, h of
/// orders T and T₁.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwistPair {
    pub first: (u32, u32),
    pub second: (u32, u32),
    pub orders: (u32, u32),
}

impl TwistPair {
    pub fn new(first: (i64, i64), second: (i64, i64), orders: (u32, u32)) -> Self {
        assert!(orders.0 > 0 && orders.1 > 0, "orders must be positive");
        let r = |e: i64, n: u32| e.rem_euclid(n as i64) as u32;
        TwistPair {
            first: (r(first.0, orders.0), r(first.1, orders.1)),
            second: (r(second.0, orders.0), r(second.1, orders.1)),
            orders,
        }
    }
}

/// (x, y)γ = (x^a y^c, x^b y^d).
pub fn act_twist(tp: &TwistPair, g: &SL2Matrix) -> TwistPair {
    let (a, b, c, d) = g.entries();
    let (x, y) = (tp.first, tp.second);
    let comb = |p: i64, q: i64| {
        (
            p * x.0 as i64 + q * y.0 as i64,
            p * x.1 as i64 + q * y.1 as i64,
        )
    };
    TwistPair::new(comb(a, c), comb(b, d), tp.orders)
}

/// Membership in Γ_θ = Γ(2) ∪ Γ(2)S.
pub fn in_gamma_theta(g: &SL2Matrix) -> bool {
    let (a, b, c, d) = g.entries();
    let m = [a, b, c, d].map(|x| x.rem_euclid(2));
    m == [1, 0, 0, 1] || m == [0, 1, 1, 0]
}

/// Membership in Γ(T, T₁): a ≡ d ≡ 1 mod lcm(T, T₁), b ≡ 0 mod T, c ≡ 0 mod T₁.
pub fn in_gamma_tt1(g: &SL2Matrix, t: u32, t1: u32) -> bool {
    assert!(t >= 1 && t1 >= 1, "orders must be positive");
    let (a, b, c, d) = g.entries();
    let n = (t as i64).lcm(&(t1 as i64));
    (a - 1).rem_euclid(n) == 0
        && (d - 1).rem_euclid(n) == 0
        && b.rem_euclid(t as i64) == 0
        && c.rem_euclid(t1 as i64) == 0
}

/// {2i, 1+2i, 3i, −1+2.5i}.
pub fn default_samples() -> Vec<EvalPoint> {
    [(0.0, 2.0), (1.0, 2.0), (0.0, 3.0), (-1.0, 2.5)]
        .iter()
        .map(|&(x, y)| EvalPoint::from_parts(x, y).expect("upper half plane"))
        .collect()
}

fn automorphy_power(j: Complex64, k: f64) -> Complex64 {
    if k.fract() == 0.0 && k.abs() < i32::MAX as f64 {
        j.powi(k as i32)
    } else {
        j.powf(k)
    }
}

/// Estimates the constant in lhs(γτ) = C (cτ+d)^k rhs(τ) from the samples.
///
/// The estimate is the mean of the pointwise ratios and the residual is the
/// largest deviation of a single ratio from that mean.
pub fn transform_ratio<L, R>(
    label: &str,
    lhs: L,
    rhs: R,
    g: &SL2Matrix,
    k: f64,
    samples: &[EvalPoint],
    tol: f64,
) -> Result<VerificationReport>
where
    L: Fn(EvalPoint) -> Result<Complex64>,
    R: Fn(EvalPoint) -> Result<Complex64>,
{
    if samples.len() < 3 {
        return Err(Error::BadSamples(format!(
            "need at least 3 samples, got {}",
            samples.len()
        )));
    }
    for (i, p) in samples.iter().enumerate() {
        for q in &samples[i + 1..] {
            if (p.tau() - q.tau()).norm() < SAMPLE_SEPARATION {
                return Err(Error::BadSamples(format!(
                    "samples {} and {} are closer than {SAMPLE_SEPARATION}",
                    p.tau(),
                    q.tau()
                )));
            }
        }
    }
    let mut ratios = Vec::with_capacity(samples.len());
    for &p in samples {
        let r = rhs(p)?;
        if r.norm() < DEGENERATE_RHS || !r.is_finite() {
            return Err(Error::DegenerateSample(format!("{}", p.tau())));
        }
        let l = lhs(mobius(g, p))?;
        ratios.push(l / (automorphy_power(g.automorphy(p.tau()), k) * r));
    }
    let mean = ratios.iter().sum::<Complex64>() / ratios.len() as f64;
    let residual = ratios.iter().map(|r| (r - mean).norm()).fold(0.0, f64::max);
    Ok(VerificationReport::numeric(label, residual, tol)
        .with_constant(mean)
        .with_samples(samples.iter().map(EvalPoint::tau).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_checked() {
        assert!(SL2Matrix::new(1, 2, 3, 7).is_ok());
        assert_eq!(
            SL2Matrix::new(1, 1, 1, 1).unwrap_err(),
            Error::NotUnimodular(1, 1, 1, 1)
        );
    }

    #[test]
    fn group_relations() {
        let (s, t, i) = (SL2Matrix::s(), SL2Matrix::t(), SL2Matrix::identity());
        assert_eq!(s.det(), 1);
        assert_eq!(t.det(), 1);
        assert_eq!(s.pow(4), i);
        assert_eq!(
            s.pow(2),
            SL2Matrix {
                a: -1,
                b: 0,
                c: 0,
                d: -1
            }
        );
        assert_eq!(s.mul(&t).pow(3), s.pow(2));
        assert_eq!(s.mul(&t).pow(6), i);
        assert_eq!(t.mul(&t.inverse()), i);
    }

    #[test]
    fn mobius_examples() {
        let i = EvalPoint::from_parts(0.0, 1.0).unwrap();
        assert!((mobius(&SL2Matrix::s(), i).tau() - i.tau()).norm() < 1e-15);
        let p = EvalPoint::from_parts(0.3, 1.7).unwrap();
        assert!((mobius(&SL2Matrix::t(), p).tau() - (p.tau() + 1.0)).norm() < 1e-15);
        assert_eq!(mobius(&SL2Matrix::identity(), p), p);
    }

    #[test]
    fn pair_action_examples() {
        let mu = RootOfUnity::new(1, 3);
        let lam = RootOfUnity::new(1, 4);
        assert_eq!(act_pair(mu, lam, &SL2Matrix::identity()), (mu, lam));
        assert_eq!(act_pair(mu, lam, &SL2Matrix::s()), (lam, mu.inv()));
        assert_eq!(
            act_pair(
                RootOfUnity::one(),
                RootOfUnity::minus_one(),
                &SL2Matrix::s()
            ),
            (RootOfUnity::minus_one(), RootOfUnity::one())
        );
    }

    #[test]
    fn twist_action_examples() {
        // g ↦ exponent (1, 0), σ ↦ exponent (0, 1); both of order 2
        let g_sigma = TwistPair::new((1, 0), (0, 1), (2, 2));
        let t = act_twist(&g_sigma, &SL2Matrix::t());
        assert_eq!(t, TwistPair::new((1, 0), (1, 1), (2, 2)));
        let s = act_twist(&g_sigma, &SL2Matrix::s());
        assert_eq!(s, TwistPair::new((0, 1), (-1, 0), (2, 2)));
        assert_eq!(s, TwistPair::new((0, 1), (1, 0), (2, 2)));
        assert_eq!(act_twist(&g_sigma, &SL2Matrix::identity()), g_sigma);
    }

    #[test]
    fn theta_group() {
        assert!(in_gamma_theta(&SL2Matrix::identity()));
        assert!(in_gamma_theta(&SL2Matrix::s()));
        assert!(!in_gamma_theta(&SL2Matrix::t()));
        assert!(in_gamma_theta(&SL2Matrix::t().pow(2)));
    }

    #[test]
    fn congruence_subgroup() {
        assert!(in_gamma_tt1(&SL2Matrix::identity(), 3, 5));
        assert!(in_gamma_tt1(&SL2Matrix::new(1, 4, 0, 1).unwrap(), 4, 2));
        assert!(!in_gamma_tt1(&SL2Matrix::t(), 2, 1));
        assert!(in_gamma_tt1(&SL2Matrix::t(), 1, 1));
    }

    #[test]
    fn parse_matrix() {
        assert_eq!("0,-1,1,0".parse::<SL2Matrix>().unwrap(), SL2Matrix::s());
        assert!("1,2,3".parse::<SL2Matrix>().is_err());
        assert!(matches!(
            "2,0,0,2".parse::<SL2Matrix>(),
            Err(Error::NotUnimodular(..))
        ));
    }

    #[test]
    fn identity_ratio() {
        let f = |p: EvalPoint| Ok((p.tau() * 0.7).exp() + 2.0);
        let r = transform_ratio(
            "id",
            f,
            f,
            &SL2Matrix::identity(),
            3.0,
            &default_samples(),
            1e-12,
        )
        .unwrap();
        assert!(r.pass);
        assert!((r.constant.unwrap() - 1.0).norm() < 1e-15);
        assert_eq!(r.residual, Some(0.0));
    }

    #[test]
    fn weighted_laws() {
        // f(τ) = τ^{-2}: f(−1/τ) = τ^2
        let f = |p: EvalPoint| Ok(p.tau().powi(-2));
        let g = |p: EvalPoint| Ok(p.tau().powi(2));
        let r =
            transform_ratio("s", f, g, &SL2Matrix::s(), 0.0, &default_samples(), 1e-12).unwrap();
        assert!(r.pass);
        assert!((r.constant.unwrap() - 1.0).norm() < 1e-12);
        // the same law read with weight 4 against f: τ^2 = τ^4 · τ^{-2}
        let r =
            transform_ratio("s4", f, f, &SL2Matrix::s(), 4.0, &default_samples(), 1e-12).unwrap();
        assert!(r.pass);
        assert!((r.constant.unwrap() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn sample_validation() {
        let f = |_: EvalPoint| Ok(Complex64::new(1.0, 0.0));
        let z = |_: EvalPoint| Ok(Complex64::new(0.0, 0.0));
        let s = default_samples();
        assert!(matches!(
            transform_ratio("x", f, f, &SL2Matrix::t(), 0.0, &s[..2], 1.0),
            Err(Error::BadSamples(_))
        ));
        let close = vec![s[0], s[1], EvalPoint::from_parts(0.0, 2.0005).unwrap()];
        assert!(matches!(
            transform_ratio("x", f, f, &SL2Matrix::t(), 0.0, &close, 1.0),
            Err(Error::BadSamples(_))
        ));
        assert!(matches!(
            transform_ratio("x", f, z, &SL2Matrix::t(), 0.0, &s, 1.0),
            Err(Error::DegenerateSample(_))
        ));
    }
}
