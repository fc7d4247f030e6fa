//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Built with `harness = false` so the lines are always printed.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use qtrace::fock::{trace_gh, Twist};
use qtrace::series::rational::rat;
use qtrace::series::CycloScalar;
use qtrace::suites::{run_suite, transform_constants, TraceCache};
use qtrace::tolerances::*;
use qtrace::VerificationReport;

struct Outcome {
    pass: bool,
    note: String,
}

fn from_items(items: &[VerificationReport], tol: Option<f64>) -> Outcome {
    let failed: Vec<_> = items.iter().filter(|r| !r.pass).collect();
    // numeric items must have been judged at the stated tolerance or tighter
    let loose = tol.and_then(|t| items.iter().find(|r| r.tolerance.is_some_and(|x| x > t)));
    let mut note = format!("{}/{} checks", items.len() - failed.len(), items.len());
    if let Some(r) = loose {
        note.push_str(&format!("; tolerance too loose in {}", r.label));
    }
    for r in failed.iter().take(2) {
        note.push_str(&format!("; failed: {}", r.label));
        if let Some(res) = r.residual {
            note.push_str(&format!(" (residual {res:.2e})"));
        }
    }
    Outcome {
        pass: failed.is_empty() && loose.is_none() && !items.is_empty(),
        note,
    }
}

fn suite(name: &str, tol: Option<f64>) -> Outcome {
    match run_suite(name) {
        Ok(r) => from_items(&r.items, tol),
        Err(e) => Outcome {
            pass: false,
            note: format!("error: {e}"),
        },
    }
}

fn sigma_examples() -> Outcome {
    let mut o = suite("sigma-examples", None);
    // spot value independent of the η machinery: 2^{l/2} q^{l/24}(1 + l q + ...) at l = 2
    let t = trace_gh(Twist::One, Twist::Sigma, 2, EXACT_ORDER).unwrap();
    let lead = t.offset() == &rat(1, 12)
        && t.coeffs()[0] == CycloScalar::from_int(2)
        && t.coeffs()[1] == CycloScalar::from_int(4);
    if !lead {
        o.pass = false;
        o.note
            .push_str("; leading terms of T(1,(1,sigma)) at l=2 wrong");
    }
    o
}

fn eta_laws() -> Outcome {
    // the criterion is the S-law, the T-law and the literal half-shift identity;
    // the phase diagnostic carried by the suite is reported but not counted
    match run_suite("eta") {
        Ok(r) => {
            let counted: Vec<_> = r
                .items
                .iter()
                .filter(|i| !i.label.contains("ratio equals"))
                .cloned()
                .collect();
            let mut o = from_items(&counted, Some(ETA_LAW_TOL));
            if let Some(d) = r.items.iter().find(|i| i.label.contains("ratio equals")) {
                let c = d.constant.unwrap_or_default();
                o.note.push_str(&format!(
                    "; measured lhs/rhs = {:.12}{:+.12}i (arg = pi/{:.6})",
                    c.re,
                    c.im,
                    std::f64::consts::PI / c.arg()
                ));
            }
            o
        }
        Err(e) => Outcome {
            pass: false,
            note: format!("error: {e}"),
        },
    }
}

fn constants() -> Outcome {
    let mut cache = TraceCache::default();
    match transform_constants(&mut cache) {
        Ok(items) => {
            let mut o = from_items(&items, Some(TRACE_TRANSFORM_TOL));
            for r in items.iter().filter(|r| r.label.contains("g=")) {
                let c: Complex64 = r.constant.unwrap_or_default();
                let kind = if r.label.contains("(0 -1; 1 0)") {
                    "S"
                } else {
                    "T"
                };
                let l = r.label.rsplit("l=").next().unwrap_or("?");
                o.note
                    .push_str(&format!("; {kind}(l={l}) = {:.10}{:+.10}i", c.re, c.im));
            }
            o
        }
        Err(e) => Outcome {
            pass: false,
            note: format!("error: {e}"),
        },
    }
}

fn pinned_tolerances() -> bool {
    Q_TRANSFORM_TOL == 1e-8
        && Q_TRANSFORM_ORDER == 300
        && P_TRANSFORM_TOL == 1e-6
        && P_TRANSFORM_CUTOFF == 80
        && LATTICE_TOL == 1e-4
        && LATTICE_CUTOFF == 200
        && ETA_LAW_TOL == 1e-10
        && TRACE_TRANSFORM_TOL == 1e-8
        && UNIT_MODULUS_TOL == 1e-8
        && EXACT_ORDER == 10
        && PROP_ORDER == 8
        && ENUMERATION_WEIGHT == 5
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, u64); 11] = [
        ("sigma-example identities", sigma_examples, 1),
        ("g-example identities", || suite("g-examples", None), 1),
        (
            "enumeration oracle",
            || suite("enumeration-oracle", None),
            10,
        ),
        (
            "Q_k transformation law",
            || suite("Q-transform", Some(Q_TRANSFORM_TOL)),
            10,
        ),
        (
            "P_k transformation law",
            || suite("P-transform", Some(P_TRANSFORM_TOL)),
            5,
        ),
        ("P-bar window identity", || suite("prop-2-3", None), 5),
        ("bracket coefficients", || suite("bracket", None), 1),
        (
            "Eisenstein cross-oracle",
            || suite("eisenstein", Some(LATTICE_TOL)),
            5,
        ),
        ("eta laws", eta_laws, 1),
        ("trace transformation constants", constants, 5),
        (
            "Bernoulli difference equation",
            || suite("bernoulli", None),
            1,
        ),
    ];

    let pinned = pinned_tolerances();
    println!(
        "{} tolerances and truncations pinned at their stated values",
        if pinned { "PASS" } else { "FAIL" }
    );

    let mut failures = 0;
    for (n, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = check();
        let took = start.elapsed();
        if took > Duration::from_secs(*limit) {
            o.pass = false;
            o.note.push_str(&format!("; over the {limit} s budget"));
        }
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {:>2}: {name} [{:.2?} / {limit} s] {}",
            n + 1,
            took,
            o.note
        );
        failures += usize::from(!o.pass);
    }
    println!("{} of 11 criteria passed", 11 - failures);
    if failures > 0 || !pinned {
        std::process::exit(1);
    }
}
