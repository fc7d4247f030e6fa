//! Twisted modules of the free-fermion superalgebra on an l-dimensional
//! space, and their graded traces with the vacuum inserted.
//!
//! A module is an exterior algebra on fermionic generators. Each generator
//! sits at a positive energy (or at energy 0, as a zero mode) and carries an
//! eigenvalue for every automorphism the module knows about. The trace of an
//! automorphism is then q^{h − c/24} times a product of (1 + λq^e) factors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modforms::{EtaQuotientSpec, RootOfUnity};
use crate::series::rational::{denom_u64, int, rat, Rational};
use crate::series::{product_expand, CycloScalar, QSeries};
use crate::tolerances::ENUMERATION_BUDGET;

/// The automorphisms that act on the modules below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Aut {
    Identity,
    Sigma,
    G,
    GSigma,
}

impl Aut {
    pub fn name(&self) -> &'static str {
        match self {
            Aut::Identity => "1",
            Aut::Sigma => "sigma",
            Aut::G => "g",
            Aut::GSigma => "gsigma",
        }
    }
}

impl fmt::Display for Aut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Aut {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "id" | "identity" => Ok(Aut::Identity),
            "sigma" => Ok(Aut::Sigma),
            "g" => Ok(Aut::G),
            "gsigma" | "g*sigma" => Ok(Aut::GSigma),
            _ => Err(Error::Parse(format!(
                "unknown automorphism {s:?} (expected 1, sigma, g or gsigma)"
            ))),
        }
    }
}

/// Eigenvalues of one generator under the automorphisms it supports.
pub type Eigenvalues = BTreeMap<Aut, RootOfUnity>;

fn eigen(pairs: &[(Aut, RootOfUnity)]) -> Eigenvalues {
    pairs.iter().copied().collect()
}

/// Generators replicated at energies start, start + step, start + 2·step, …
#[derive(Clone, Debug, PartialEq)]
pub struct OscillatorFamily {
    pub start: Rational,
    pub step: Rational,
    pub generators: Vec<Eigenvalues>,
}

impl OscillatorFamily {
    pub fn new(start: Rational, step: Rational, generators: Vec<Eigenvalues>) -> Self {
        OscillatorFamily {
            start,
            step,
            generators,
        }
    }

    /// Energies start + k·step that do not exceed `max`.
    fn energies_up_to(&self, max: &Rational) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut e = self.start.clone();
        while &e <= max {
            out.push(e.clone());
            e += &self.step;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FockModule {
    pub name: String,
    pub families: Vec<OscillatorFamily>,
    pub zero_modes: Vec<Eigenvalues>,
    pub conformal_weight: Rational,
    pub central_charge: Rational,
}

fn check_parity(g: &Eigenvalues) -> Result<()> {
    if let (Some(id), Some(s)) = (g.get(&Aut::Identity), g.get(&Aut::Sigma)) {
        if *s != id.mul(&RootOfUnity::minus_one()) {
            return Err(Error::Precondition(
                "sigma must act on every fermionic generator as minus its identity value".into(),
            ));
        }
    }
    Ok(())
}

impl FockModule {
    pub fn new(
        name: impl Into<String>,
        families: Vec<OscillatorFamily>,
        zero_modes: Vec<Eigenvalues>,
        conformal_weight: Rational,
        central_charge: Rational,
    ) -> Result<Self> {
        for f in &families {
            if !f.start.is_positive() || !f.step.is_positive() {
                return Err(Error::Precondition(
                    "family energies must be positive; zero-energy generators are zero modes"
                        .into(),
                ));
            }
            f.generators.iter().try_for_each(check_parity)?;
        }
        zero_modes.iter().try_for_each(check_parity)?;
        Ok(FockModule {
            name: name.into(),
            families,
            zero_modes,
            conformal_weight,
            central_charge,
        })
    }

    /// q-exponent h − c/24 of the vacuum of the trace.
    pub fn vacuum_exponent(&self) -> Rational {
        &self.conformal_weight - &self.central_charge / int(24)
    }

    /// Denominator D of the energy lattice (1/D)Z.
    pub fn lattice_denominator(&self) -> u64 {
        self.families.iter().fold(1u64, |d, f| {
            d.lcm(&denom_u64(&f.start)).lcm(&denom_u64(&f.step))
        })
    }

    /// Lowest positive energy of any generator.
    pub fn lowest_energy(&self) -> Option<Rational> {
        self.families.iter().map(|f| f.start.clone()).min()
    }

    /// Number of generators at energy e.
    pub fn generators_at(&self, e: &Rational) -> usize {
        self.families
            .iter()
            .filter(|f| {
                let k = (e - &f.start) / &f.step;
                k.is_integer() && !k.is_negative()
            })
            .map(|f| f.generators.len())
            .sum()
    }

    fn eigenvalue(&self, g: &Eigenvalues, aut: Aut) -> Result<RootOfUnity> {
        g.get(&aut)
            .copied()
            .ok_or_else(|| Error::UnknownAutomorphism(format!("{aut} on {}", self.name)))
    }
}

fn check_even(l: u32) -> Result<()> {
    if l < 2 || l % 2 == 1 {
        return Err(Error::InvalidDimension(l));
    }
    Ok(())
}

use Aut::{GSigma, Identity, Sigma, G};

fn plus() -> RootOfUnity {
    RootOfUnity::one()
}
fn minus() -> RootOfUnity {
    RootOfUnity::minus_one()
}

/// Generator that g fixes.
fn g_even() -> Eigenvalues {
    eigen(&[
        (Identity, plus()),
        (Sigma, minus()),
        (G, plus()),
        (GSigma, minus()),
    ])
}
/// Generator that g negates.
fn g_odd() -> Eigenvalues {
    eigen(&[
        (Identity, plus()),
        (Sigma, minus()),
        (G, minus()),
        (GSigma, plus()),
    ])
}
fn parity_only() -> Eigenvalues {
    eigen(&[(Identity, plus()), (Sigma, minus())])
}

/// The superalgebra itself: energies n + 1/2 with l generators each, c = l/2.
///
/// For l ≥ 4 the generators also carry eigenvalues of the order-2
/// automorphism g that fixes a 2-dimensional subspace and negates the rest.
pub fn build_ns(l: u32) -> Result<FockModule> {
    check_even(l)?;
    let gens = if l >= 4 {
        let mut v = vec![g_even(); 2];
        v.extend(vec![g_odd(); l as usize - 2]);
        v
    } else {
        vec![parity_only(); l as usize]
    };
    FockModule::new(
        format!("NS(l={l})"),
        vec![OscillatorFamily::new(rat(1, 2), int(1), gens)],
        Vec::new(),
        int(0),
        rat(l as i64, 2),
    )
}

/// The σ-twisted module: integer energies n ≥ 1 with l generators and l/2
/// zero modes, h = l/16.
pub fn build_sigma_twisted(l: u32) -> Result<FockModule> {
    check_even(l)?;
    FockModule::new(
        format!("R(l={l})"),
        vec![OscillatorFamily::new(
            int(1),
            int(1),
            vec![parity_only(); l as usize],
        )],
        vec![parity_only(); l as usize / 2],
        rat(l as i64, 16),
        rat(l as i64, 2),
    )
}

/// The gσ-twisted module M for l ≥ 4, of conformal weight 1/8.
///
/// Two integer-moded families of one generator each, fixed by g, one zero
/// mode fixed by g, and l − 2 half-integer-moded generators negated by g.
pub fn build_g_sigma_twisted(l: u32) -> Result<FockModule> {
    check_even(l)?;
    if l < 4 {
        return Err(Error::InvalidDimension(l));
    }
    FockModule::new(
        format!("M(l={l})"),
        vec![
            OscillatorFamily::new(int(1), int(1), vec![g_even()]),
            OscillatorFamily::new(int(1), int(1), vec![g_even()]),
            OscillatorFamily::new(rat(1, 2), int(1), vec![g_odd(); l as usize - 2]),
        ],
        vec![g_even()],
        rat(1, 8),
        rat(l as i64, 2),
    )
}

/// q^{h−c/24} Π_{zero modes}(1 + λ) Π_{e ≤ order}(1 + λq^e), known to q^{h−c/24+order}.
pub fn graded_trace_product(m: &FockModule, aut: Aut, order: u64) -> Result<QSeries> {
    let max = int(order as i64);
    let mut factors = Vec::new();
    for f in &m.families {
        let lams: Vec<CycloScalar> = f
            .generators
            .iter()
            .map(|g| m.eigenvalue(g, aut).map(|r| r.to_cyclo()))
            .collect::<Result<_>>()?;
        for e in f.energies_up_to(&max) {
            factors.extend(lams.iter().map(|lam| (lam.clone(), e.clone())));
        }
    }
    let mut zero = CycloScalar::one();
    for z in &m.zero_modes {
        zero = &zero * &(&CycloScalar::one() + &m.eigenvalue(z, aut)?.to_cyclo());
    }
    let d = m.lattice_denominator();
    let body = product_expand(&factors, order)?;
    let body = if body.step_denominator() == d {
        body
    } else {
        body.refine(d)
    };
    Ok(body.scale(&zero).shift(&m.vacuum_exponent()))
}

/// Brute-force trace: every subset of generators (zero modes included) of
/// total energy ≤ weight contributes the product of its eigenvalues.
pub fn graded_trace_enumerate(m: &FockModule, aut: Aut, weight: u64) -> Result<QSeries> {
    graded_trace_enumerate_with_budget(m, aut, weight, ENUMERATION_BUDGET)
}

struct Enumeration<'a> {
    gens: &'a [(usize, u32)],
    max: usize,
    level: u32,
    budget: u64,
    visited: u64,
    counts: HashMap<(usize, u32), i64>,
}

impl Enumeration<'_> {
    fn dfs(&mut self, from: usize, energy: usize, root: u32) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        *self.counts.entry((energy, root)).or_insert(0) += 1;
        for idx in from..self.gens.len() {
            let (e, r) = self.gens[idx];
            if energy + e > self.max {
                break;
            }
            self.dfs(idx + 1, energy + e, (root + r) % self.level)?;
        }
        Ok(())
    }
}

pub fn graded_trace_enumerate_with_budget(
    m: &FockModule,
    aut: Aut,
    weight: u64,
    budget: u64,
) -> Result<QSeries> {
    let d = m.lattice_denominator();
    let max = int(weight as i64);
    // (energy index on the 1/D lattice, eigenvalue) per generator instance
    let mut raw: Vec<(usize, RootOfUnity)> = Vec::new();
    for z in &m.zero_modes {
        raw.push((0, m.eigenvalue(z, aut)?));
    }
    for f in &m.families {
        for e in f.energies_up_to(&max) {
            let idx = (e * int(d as i64))
                .to_integer()
                .to_usize()
                .expect("energy index");
            for g in &f.generators {
                raw.push((idx, m.eigenvalue(g, aut)?));
            }
        }
    }
    let level = raw.iter().fold(1u32, |l, (_, r)| l.lcm(&r.order()));
    let mut gens: Vec<(usize, u32)> = raw
        .iter()
        .map(|(e, r)| (*e, r.j() * (level / r.order())))
        .collect();
    gens.sort();
    let n = (weight * d) as usize;
    let mut en = Enumeration {
        gens: &gens,
        max: n,
        level,
        budget,
        visited: 0,
        counts: HashMap::new(),
    };
    en.dfs(0, 0, 0)?;
    let mut slots: Vec<Vec<(Rational, i64)>> = vec![Vec::new(); n + 1];
    let mut keys: Vec<_> = en.counts.into_iter().collect();
    keys.sort();
    for ((e, r), c) in keys {
        slots[e].push((int(c), r as i64));
    }
    let coeffs = slots
        .iter()
        .map(|t| CycloScalar::from_terms(level, t))
        .collect();
    Ok(QSeries::new(Rational::zero(), d, coeffs).shift(&m.vacuum_exponent()))
}

/// Twist labels x, y of a trace T(1, (x, y), τ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Twist {
    One,
    Sigma,
    G,
    GSigma,
}

impl Twist {
    pub fn name(&self) -> &'static str {
        match self {
            Twist::One => "1",
            Twist::Sigma => "sigma",
            Twist::G => "g",
            Twist::GSigma => "gsigma",
        }
    }

    /// Order of the twist as a group element (g and σ both have order 2).
    pub fn order(&self) -> u32 {
        match self {
            Twist::One => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Twist {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Twist::One),
            "sigma" => Ok(Twist::Sigma),
            "g" => Ok(Twist::G),
            "gsigma" => Ok(Twist::GSigma),
            _ => Err(Error::Parse(format!(
                "unknown twist {s:?} (expected 1, sigma, g or gsigma)"
            ))),
        }
    }
}

/// The seven pairs (x, y) with an explicit trace.
pub const TRACE_PAIRS: [(Twist, Twist); 7] = [
    (Twist::One, Twist::One),
    (Twist::One, Twist::Sigma),
    (Twist::Sigma, Twist::One),
    (Twist::Sigma, Twist::Sigma),
    (Twist::G, Twist::Sigma),
    (Twist::Sigma, Twist::G),
    (Twist::G, Twist::GSigma),
];

/// Whether the pair involves g (and therefore needs l ≥ 4).
pub fn needs_g(x: Twist, y: Twist) -> bool {
    matches!(x, Twist::G | Twist::GSigma) || matches!(y, Twist::G | Twist::GSigma)
}

fn supported(x: Twist, y: Twist, l: u32) -> Result<()> {
    if !TRACE_PAIRS.contains(&(x, y)) {
        return Err(Error::UnsupportedPair(x.to_string(), y.to_string()));
    }
    check_even(l)?;
    if needs_g(x, y) && l < 4 {
        return Err(Error::InvalidDimension(l));
    }
    Ok(())
}

/// The σx-twisted module and the automorphism σy acting on it.
pub fn trace_setup(x: Twist, y: Twist, l: u32) -> Result<(FockModule, Aut)> {
    supported(x, y, l)?;
    let module = match x {
        Twist::One => build_sigma_twisted(l)?,
        Twist::Sigma => build_ns(l)?,
        Twist::G => build_g_sigma_twisted(l)?,
        Twist::GSigma => unreachable!("filtered by supported"),
    };
    let aut = match y {
        Twist::One => Aut::Sigma,
        Twist::Sigma => Aut::Identity,
        Twist::G => Aut::GSigma,
        Twist::GSigma => Aut::G,
    };
    Ok((module, aut))
}

/// T(1, (x, y), τ) as an exact series, known to q^{offset + order}.
pub fn trace_gh(x: Twist, y: Twist, l: u32, order: u64) -> Result<QSeries> {
    let (m, aut) = trace_setup(x, y, l)?;
    graded_trace_product(&m, aut, order)
}

/// Closed η-quotient form of T(1, (x, y), τ).
pub fn reference_eta_quotient(x: Twist, y: Twist, l: u32) -> Result<EtaQuotientSpec> {
    supported(x, y, l)?;
    let li = l as i64;
    let one = CycloScalar::one();
    let two = CycloScalar::from_int(2);
    let spec = match (x, y) {
        (Twist::One, Twist::One) => EtaQuotientSpec::zero(),
        (Twist::One, Twist::Sigma) => EtaQuotientSpec::new(
            vec![(int(2), li), (int(1), -li)],
            CycloScalar::from_int(1i64 << (l / 2)),
        ),
        (Twist::Sigma, Twist::One) => {
            EtaQuotientSpec::new(vec![(rat(1, 2), li), (int(1), -li)], one)
        }
        (Twist::Sigma, Twist::Sigma) => {
            EtaQuotientSpec::new(vec![(int(1), 2 * li), (rat(1, 2), -li), (int(2), -li)], one)
        }
        (Twist::G, Twist::Sigma) => EtaQuotientSpec::new(
            vec![
                (int(1), 2 * li - 6),
                (int(2), -(li - 4)),
                (rat(1, 2), -(li - 2)),
            ],
            two,
        ),
        (Twist::Sigma, Twist::G) => EtaQuotientSpec::new(
            vec![
                (int(1), 2 * li - 6),
                (rat(1, 2), -(li - 4)),
                (int(2), -(li - 2)),
            ],
            one,
        ),
        (Twist::G, Twist::GSigma) => {
            EtaQuotientSpec::new(vec![(int(2), 2), (rat(1, 2), li - 2), (int(1), -li)], two)
        }
        _ => unreachable!("filtered by supported"),
    };
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::eta_quotient;

    fn toy() -> FockModule {
        FockModule::new(
            "toy",
            vec![OscillatorFamily::new(
                rat(1, 2),
                int(5),
                vec![parity_only()],
            )],
            Vec::new(),
            int(0),
            int(0),
        )
        .unwrap()
    }

    fn empty() -> FockModule {
        FockModule::new("empty", Vec::new(), Vec::new(), rat(1, 3), int(1)).unwrap()
    }

    #[test]
    fn builders() {
        let ns = build_ns(2).unwrap();
        assert_eq!(ns.central_charge, int(1));
        assert_eq!(ns.conformal_weight, int(0));
        assert_eq!(ns.lowest_energy(), Some(rat(1, 2)));
        assert_eq!(ns.generators_at(&rat(1, 2)), 2);
        assert_eq!(ns.generators_at(&rat(3, 2)), 2);
        assert_eq!(ns.generators_at(&int(1)), 0);
        assert_eq!(build_ns(3).unwrap_err(), Error::InvalidDimension(3));

        let r = build_sigma_twisted(2).unwrap();
        assert_eq!(r.conformal_weight, rat(1, 8));
        assert_eq!(r.zero_modes.len(), 1);
        assert_eq!(build_sigma_twisted(6).unwrap().zero_modes.len(), 3);

        let m = build_g_sigma_twisted(4).unwrap();
        assert_eq!(m.conformal_weight, rat(1, 8));
        assert_eq!(m.central_charge, int(2));
        assert_eq!(m.zero_modes.len(), 1);
        assert_eq!(m.generators_at(&rat(1, 2)), 2);
        assert_eq!(m.generators_at(&int(1)), 2);
        assert_eq!(
            build_g_sigma_twisted(2).unwrap_err(),
            Error::InvalidDimension(2)
        );
    }

    #[test]
    fn invariants_enforced() {
        let bad = eigen(&[(Identity, plus()), (Sigma, plus())]);
        let r = FockModule::new(
            "bad",
            vec![OscillatorFamily::new(int(1), int(1), vec![bad])],
            Vec::new(),
            int(0),
            int(0),
        );
        assert!(matches!(r, Err(Error::Precondition(_))));
        let r = FockModule::new(
            "zero",
            vec![OscillatorFamily::new(int(0), int(1), vec![parity_only()])],
            Vec::new(),
            int(0),
            int(0),
        );
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn toy_trace() {
        let t = graded_trace_product(&toy(), Aut::Identity, 1).unwrap();
        let expect = QSeries::new(int(0), 2, [1, 1, 0].map(CycloScalar::from_int).to_vec());
        assert_eq!(t, expect);
    }

    #[test]
    fn ns_sigma_trace_is_eta_quotient() {
        let t = graded_trace_product(&build_ns(2).unwrap(), Aut::Sigma, 3).unwrap();
        assert_eq!(t.offset(), &rat(-1, 24));
        assert_eq!(t.coeffs()[..3], [1, -2, 1].map(CycloScalar::from_int));
        let spec = EtaQuotientSpec::new(vec![(rat(1, 2), 2), (int(1), -2)], CycloScalar::one());
        assert_eq!(t, eta_quotient(&spec, 3).unwrap());
    }

    #[test]
    fn sigma_twisted_sigma_trace_vanishes() {
        for l in [2, 4, 8] {
            let t = graded_trace_product(&build_sigma_twisted(l).unwrap(), Aut::Sigma, 6).unwrap();
            assert!(t.is_zero());
        }
    }

    #[test]
    fn unknown_automorphism() {
        let e = graded_trace_product(&build_ns(2).unwrap(), Aut::G, 3).unwrap_err();
        assert!(matches!(e, Error::UnknownAutomorphism(_)));
    }

    #[test]
    fn enumeration_small_cases() {
        let e = graded_trace_enumerate(&empty(), Aut::Identity, 3).unwrap();
        assert_eq!(e.offset(), &(rat(1, 3) - rat(1, 24)));
        assert_eq!(e.coeffs()[0], CycloScalar::one());
        assert!(e.coeffs()[1..].iter().all(CycloScalar::is_zero));

        // weight 0: only zero-mode subsets, 2^{l/2} of them
        let r = build_sigma_twisted(4).unwrap();
        let e = graded_trace_enumerate(&r, Aut::Identity, 0).unwrap();
        assert_eq!(e.coeffs(), &[CycloScalar::from_int(4)]);
        let e = graded_trace_enumerate(&r, Aut::Sigma, 0).unwrap();
        assert!(e.is_zero());
    }

    #[test]
    fn enumeration_matches_product_ns2() {
        let ns = build_ns(2).unwrap();
        for aut in [Aut::Identity, Aut::Sigma] {
            assert_eq!(
                graded_trace_enumerate(&ns, aut, 3).unwrap(),
                graded_trace_product(&ns, aut, 3).unwrap()
            );
        }
    }

    #[test]
    fn enumeration_budget() {
        let ns = build_ns(8).unwrap();
        assert_eq!(
            graded_trace_enumerate_with_budget(&ns, Aut::Identity, 6, 1000).unwrap_err(),
            Error::BudgetExceeded(1000)
        );
    }

    #[test]
    fn trace_examples() {
        let s = trace_gh(Twist::One, Twist::Sigma, 2, 6).unwrap();
        assert_eq!(s.offset(), &rat(1, 12));
        assert_eq!(s.coeffs()[0], CycloScalar::from_int(2));

        // (σ, σ): Π(1 + q^{n+1/2})^l q^{−l/48}
        let l = 4;
        let s = trace_gh(Twist::Sigma, Twist::Sigma, l, 4).unwrap();
        let f: Vec<_> = (0..4)
            .flat_map(|n| vec![(CycloScalar::one(), rat(2 * n + 1, 2)); l as usize])
            .collect();
        let expect = product_expand(&f, 4).unwrap().shift(&rat(-(l as i64), 48));
        assert_eq!(s, expect);

        // (σ, g): Π(1 − q^{n+1/2})² Π(1 + q^{n+1/2})^{l−2} q^{−l/48}
        let s = trace_gh(Twist::Sigma, Twist::G, l, 4).unwrap();
        let f: Vec<_> = (0..4)
            .flat_map(|n| {
                let mut v = vec![(CycloScalar::from_int(-1), rat(2 * n + 1, 2)); 2];
                v.extend(vec![
                    (CycloScalar::one(), rat(2 * n + 1, 2));
                    l as usize - 2
                ]);
                v
            })
            .collect();
        let expect = product_expand(&f, 4).unwrap().shift(&rat(-(l as i64), 48));
        assert_eq!(s, expect);
    }

    #[test]
    fn g_traces_have_weight_one_eighth() {
        for l in [4u32, 8] {
            let s = trace_gh(Twist::G, Twist::Sigma, l, 3).unwrap();
            assert_eq!(s.offset(), &(rat(1, 8) - rat(l as i64, 48)));
            assert_eq!(s.coeffs()[0], CycloScalar::from_int(2));
            let s = trace_gh(Twist::G, Twist::GSigma, l, 3).unwrap();
            assert_eq!(s.coeffs()[0], CycloScalar::from_int(2));
        }
    }

    #[test]
    fn unsupported_pairs() {
        assert_eq!(
            trace_gh(Twist::GSigma, Twist::One, 4, 3).unwrap_err(),
            Error::UnsupportedPair("gsigma".into(), "1".into())
        );
        assert_eq!(
            reference_eta_quotient(Twist::G, Twist::G, 4).unwrap_err(),
            Error::UnsupportedPair("g".into(), "g".into())
        );
        assert_eq!(
            trace_gh(Twist::G, Twist::Sigma, 2, 3).unwrap_err(),
            Error::InvalidDimension(2)
        );
    }

    #[test]
    fn reference_forms() {
        let s = reference_eta_quotient(Twist::G, Twist::Sigma, 6).unwrap();
        assert_eq!(s.prefactor, CycloScalar::from_int(2));
        assert_eq!(s.factors, vec![(int(1), 6), (int(2), -2), (rat(1, 2), -4)]);
        let s = reference_eta_quotient(Twist::G, Twist::GSigma, 6).unwrap();
        assert_eq!(s.factors, vec![(int(2), 2), (rat(1, 2), 4), (int(1), -6)]);
        assert!(reference_eta_quotient(Twist::One, Twist::One, 2)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn reference_offsets_match_vacuum_exponent() {
        for l in [4u32, 8] {
            for (x, y) in TRACE_PAIRS {
                let spec = reference_eta_quotient(x, y, l).unwrap();
                if spec.is_zero() {
                    continue;
                }
                let (m, _) = trace_setup(x, y, l).unwrap();
                assert_eq!(spec.offset(), m.vacuum_exponent(), "({x},{y}) l={l}");
            }
        }
    }

    #[test]
    fn parse_labels() {
        assert_eq!("gsigma".parse::<Twist>().unwrap(), Twist::GSigma);
        assert_eq!("sigma".parse::<Aut>().unwrap(), Aut::Sigma);
        assert!("h".parse::<Twist>().is_err());
        assert_eq!(Aut::G.to_string(), "g");
    }
}
