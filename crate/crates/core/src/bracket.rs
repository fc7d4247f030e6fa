//! Change-of-variable coefficients between round-bracket modes v(i) and the
//! square-bracket modes v[m] of the torus structure.
//!
//! c(p, i, m) is the z^m coefficient of binom(p − 1 + z, i). Equivalently,
//! m! Σ_i c(p, i, m) z^i = (log(1 + z))^m (1 + z)^{p−1}; the second form is
//! computed independently by [`log_pow_series`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::series::rational::{binomial, factorial, format_pq, format_short, int, rat, Rational};
use crate::series::{CycloScalar, QSeries};

/// Rows i = 0..=i_max of c(p, i, m), each indexed by m = 0..=i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketCoeffTable {
    pub p: i64,
    rows: Vec<Vec<Rational>>,
}

impl BracketCoeffTable {
    pub fn i_max(&self) -> u32 {
        (self.rows.len() - 1) as u32
    }

    /// c(p, i, m); zero for m > i.
    pub fn get(&self, i: u32, m: u32) -> Rational {
        self.rows
            .get(i as usize)
            .and_then(|r| r.get(m as usize))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, i: u32) -> &[Rational] {
        &self.rows[i as usize]
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|c| json!(format_pq(c))).collect()))
            .collect();
        json!({ "p": self.p, "i_max": self.i_max(), "rows": rows })
    }
}

impl fmt::Display for BracketCoeffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "c({}, i, m)", self.p)?;
        for (i, r) in self.rows.iter().enumerate() {
            let cells: Vec<_> = r.iter().map(format_short).collect();
            writeln!(f, "i={i}: {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Expands binom(p − 1 + z, i) = Π_{t<i} (p − 1 − t + z) / i! for i ≤ i_max.
pub fn c_table(p: i64, i_max: u32) -> BracketCoeffTable {
    let mut rows = Vec::with_capacity(i_max as usize + 1);
    // running product Π_{t<i} (p − 1 − t + z), as z-coefficients
    let mut prod = vec![Rational::one()];
    for i in 0..=i_max {
        let fi = factorial(i);
        rows.push(prod.iter().map(|c| c / &fi).collect());
        let a = int(p - 1 - i as i64);
        let mut next = vec![Rational::zero(); prod.len() + 1];
        for (d, c) in prod.iter().enumerate() {
            next[d] += c * &a;
            next[d + 1] += c;
        }
        prod = next;
    }
    BracketCoeffTable { p, rows }
}

fn rational_series(coeffs: Vec<Rational>) -> QSeries {
    QSeries::new(
        Rational::zero(),
        1,
        coeffs.into_iter().map(CycloScalar::from_rational).collect(),
    )
}

/// log(1 + z) = Σ_{n≥1} (−1)^{n−1} z^n / n, up to z^order.
pub fn log1p_series(order: u64) -> QSeries {
    let coeffs = (0..=order as i64)
        .map(|n| match n {
            0 => Rational::zero(),
            _ if n % 2 == 1 => rat(1, n),
            _ => rat(-1, n),
        })
        .collect();
    rational_series(coeffs)
}

/// (log(1 + z))^m (1 + z)^{p−1} up to z^order, as a series in z.
pub fn log_pow_series(m: u32, p: i64, order: u64) -> QSeries {
    let binom: Vec<_> = (0..=order as u32)
        .map(|n| binomial(&int(p - 1), n))
        .collect();
    let log_m = log1p_series(order)
        .pow(m as i64)
        .expect("nonnegative power");
    log_m.mul(&rational_series(binom))
}

/// m!·c(wt, i, m) for i = 0..=i_max (zero for i < m): the coefficient of v(i) in v[m].
pub fn vbracket_coeffs(wt: i64, m: u32, i_max: u32) -> Vec<Rational> {
    let t = c_table(wt, i_max);
    let fm = factorial(m);
    (0..=i_max).map(|i| &fm * t.get(i, m)).collect()
}

/// (−1)^{n−1}/(n(n+1)) for n = 1..=n_max: the coefficient of L(n) in L[0].
pub fn l0_bracket_coeffs(n_max: u32) -> Result<Vec<Rational>> {
    if n_max < 1 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    Ok((1..=n_max as i64)
        .map(|n| {
            let s = if n % 2 == 1 { 1 } else { -1 };
            rat(s, n * (n + 1))
        })
        .collect())
}

/// Constant part of L[−2] = ω[−1] − c/24.
pub fn l_minus_two_shift(c: &Rational) -> Rational {
    -c / int(24)
}

/// L[−1] = L(−1) + L(0), as (n, coefficient of L(n)).
pub const L_MINUS_ONE: [(i64, i64); 2] = [(-1, 1), (0, 1)];

/// A basis label in a symbolic mode combination.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mode {
    /// The Virasoro mode L(n).
    Virasoro(i64),
    /// The square-bracket mode ω[n] of the conformal vector.
    OmegaBracket(i64),
    /// The identity operator.
    Identity,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Virasoro(n) => write!(f, "L({n})"),
            Mode::OmegaBracket(n) => write!(f, "omega[{n}]"),
            Mode::Identity => write!(f, "1"),
        }
    }
}

/// Finite rational combination of symbolic modes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModeCombination(pub BTreeMap<Mode, Rational>);

impl ModeCombination {
    pub fn add_term(&mut self, mode: Mode, c: Rational) {
        let e = self.0.entry(mode.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&mode);
        }
    }

    pub fn coeff(&self, mode: &Mode) -> Rational {
        self.0.get(mode).cloned().unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for ModeCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<_> = self
            .0
            .iter()
            .map(|(m, c)| format!("{}*{m}", format_short(c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// L[n] for n ∈ {−2, −1, 0} in terms of round-bracket modes, derived from
/// the v[m] expansion of the conformal vector (weight 2, ω(i) = L(i − 1)).
///
/// For n = 0 the L(k) series is cut at k = n_max.
pub fn l_bracket(n: i64, c: &Rational, n_max: u32) -> Result<ModeCombination> {
    let mut out = ModeCombination::default();
    match n {
        -2 => {
            out.add_term(Mode::OmegaBracket(-1), Rational::one());
            out.add_term(Mode::Identity, l_minus_two_shift(c));
        }
        -1 | 0 => {
            // L[n] = ω[n + 1] = (n+1)! Σ_i c(2, i, n+1) ω(i)
            let m = (n + 1) as u32;
            for (i, coeff) in vbracket_coeffs(2, m, n_max + 1).into_iter().enumerate() {
                out.add_term(Mode::Virasoro(i as i64 - 1), coeff);
            }
        }
        _ => {
            return Err(Error::Precondition(format!(
                "L[{n}] is only expanded for n in {{-2, -1, 0}}"
            )))
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_zero_column_is_binomial() {
        for p in -3..=10 {
            let t = c_table(p, 10);
            for i in 0..=10 {
                assert_eq!(t.get(i, 0), binomial(&int(p - 1), i), "p={p} i={i}");
            }
        }
    }

    #[test]
    fn first_row() {
        for p in [-2, 0, 3, 7] {
            let t = c_table(p, 3);
            assert_eq!(t.row(1), &[int(p - 1), int(1)]);
        }
    }

    #[test]
    fn diagonal() {
        let t = c_table(5, 9);
        for i in 0..=9 {
            assert_eq!(t.get(i, i), factorial(i).recip());
            assert!(t.get(i, i + 1).is_zero());
        }
    }

    #[test]
    fn row_sums_are_binomials() {
        for p in -2..=10 {
            let t = c_table(p, 12);
            for i in 0..=12 {
                let s: Rational = t.row(i).iter().sum();
                assert_eq!(s, binomial(&int(p), i), "p={p} i={i}");
            }
        }
    }

    #[test]
    fn log_series_examples() {
        // m = 0: (1 + z)^{p−1}
        assert_eq!(
            log_pow_series(0, 3, 4),
            QSeries::from_ints(&[1, 2, 1, 0, 0])
        );
        let l = log_pow_series(1, 1, 4);
        let expect = rational_series(vec![int(0), int(1), rat(-1, 2), rat(1, 3), rat(-1, 4)]);
        assert_eq!(l, expect);
        let sq = log_pow_series(2, 1, 4);
        assert_eq!(sq.coeffs()[..3], [0, 0, 1].map(CycloScalar::from_int));
        // (z − z²/2 + …)² = z² − z³ + 11/12 z⁴
        assert_eq!(sq.coeffs()[4], CycloScalar::from_rational(rat(11, 12)));
    }

    #[test]
    fn table_matches_log_series() {
        for p in -2..=10 {
            let t = c_table(p, 12);
            for m in 0..=12u32 {
                let s = log_pow_series(m, p, 12);
                for i in m..=12 {
                    let lhs = factorial(m) * t.get(i, m);
                    assert_eq!(
                        CycloScalar::from_rational(lhs),
                        s.coeffs()[i as usize],
                        "p={p} m={m} i={i}"
                    );
                }
                for i in 0..m {
                    assert!(s.coeffs()[i as usize].is_zero());
                }
            }
        }
    }

    #[test]
    fn derivative_relation() {
        // d/dz of (log(1+z))^{m+1}(1+z)^{p−1} at the coefficient level
        for p in -2..=8i64 {
            let hi = c_table(p, 12);
            let lo = c_table(p - 1, 12);
            for m in 0..10u32 {
                for i in 0..11u32 {
                    let lhs = int(i as i64 + 1) * factorial(m + 1) * hi.get(i + 1, m + 1);
                    let rhs = int(m as i64 + 1) * factorial(m) * lo.get(i, m)
                        + int(p - 1) * factorial(m + 1) * lo.get(i, m + 1);
                    assert_eq!(lhs, rhs, "p={p} m={m} i={i}");
                }
            }
        }
    }

    #[test]
    fn vbracket_examples() {
        let v0 = vbracket_coeffs(4, 0, 6);
        let expect: Vec<_> = (0..=6).map(|i| binomial(&int(3), i)).collect();
        assert_eq!(v0, expect);
        let v3 = vbracket_coeffs(4, 3, 6);
        assert!(v3[..3].iter().all(Zero::is_zero));
        assert_eq!(v3[3], int(1));
        let w1 = vbracket_coeffs(1, 0, 5);
        assert_eq!(w1[0], int(1));
        assert!(w1[1..].iter().all(Zero::is_zero));
    }

    #[test]
    fn l0_values() {
        let c = l0_bracket_coeffs(3).unwrap();
        assert_eq!(c, vec![rat(1, 2), rat(-1, 6), rat(1, 12)]);
        assert!(l0_bracket_coeffs(0).is_err());
    }

    #[test]
    fn l_bracket_relations() {
        let c = rat(1, 2);
        let l0 = l_bracket(0, &c, 10).unwrap();
        assert_eq!(l0.coeff(&Mode::Virasoro(0)), int(1));
        assert!(l0.coeff(&Mode::Virasoro(-1)).is_zero());
        for (n, v) in l0_bracket_coeffs(10).unwrap().into_iter().enumerate() {
            assert_eq!(l0.coeff(&Mode::Virasoro(n as i64 + 1)), v);
        }
        let lm1 = l_bracket(-1, &c, 10).unwrap();
        let mut expect = ModeCombination::default();
        for (n, k) in L_MINUS_ONE {
            expect.add_term(Mode::Virasoro(n), int(k));
        }
        assert_eq!(lm1, expect);
        let lm2 = l_bracket(-2, &c, 10).unwrap();
        assert_eq!(lm2.coeff(&Mode::Identity), rat(-1, 48));
        assert_eq!(lm2.to_string(), "1*omega[-1] + -1/48*1");
        assert!(l_bracket(1, &c, 10).is_err());
    }

    #[test]
    fn json_shape() {
        let j = c_table(2, 2).to_json();
        assert_eq!(j["p"], 2);
        assert_eq!(j["rows"][2][1], "1/2");
    }
}
