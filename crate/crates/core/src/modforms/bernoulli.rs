//! Bernoulli numbers and polynomials over Q.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::series::rational::{binomial, format_short, int, Rational};

/// Dense polynomial Σ c_i x^i with exact rational coefficients.
///
/// Trailing zeros are trimmed, so the last stored coefficient is the leading
/// one. The zero polynomial stores nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    /// x^n
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        RationalPolynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// p(x + a), by expanding each power binomially.
    pub fn shift(&self, a: &Rational) -> Self {
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            for (j, slot) in out.iter_mut().enumerate().take(i + 1) {
                let b = binomial(&int(i as i64), j as u32);
                *slot += c * b * num_traits::pow(a.clone(), i - j);
            }
        }
        Self::new(out)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coeff = if mag.is_one() && i > 0 {
                String::new()
            } else {
                format_short(&mag)
            };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// B_0..=B_n with the convention B_1 = −1/2.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let s: Rational = (0..m)
            .map(|k| binomial(&int(m as i64 + 1), k as u32) * &b[k])
            .sum();
        b.push(-s / int(m as i64 + 1));
    }
    b
}

/// B_r(x) = Σ_k binom(r, k) B_k x^{r−k}.
pub fn bernoulli_polynomial(r: usize) -> RationalPolynomial {
    let b = bernoulli_numbers(r);
    let mut coeffs = vec![Rational::zero(); r + 1];
    for (k, bk) in b.iter().enumerate() {
        coeffs[r - k] = binomial(&int(r as i64), k as u32) * bk;
    }
    RationalPolynomial::new(coeffs)
}
