//! Exact arithmetic in the cyclotomic field Q(ζ_L).
//!
//! An element is stored in the power basis 1, ζ, …, ζ^{φ(L)−1}, i.e. reduced
//! modulo the L-th cyclotomic polynomial. The basis is a Q-basis, so two
//! elements of the same level are equal iff their coordinate vectors are.
//! Elements of different levels are compared after lifting both to the lcm.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{format_short, int, to_f64, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct CycloScalar {
    level: u32,
    coeffs: Vec<Rational>,
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (t, &dc) in den.iter().enumerate() {
            rem[k + t] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduces a polynomial in ζ modulo Φ_level, returning exactly φ(level) coordinates.
fn reduce(mut poly: Vec<Rational>, level: u32) -> Vec<Rational> {
    let phi = euler_phi(level) as usize;
    if poly.len() > phi {
        let cyc = cyclotomic_polynomial(level);
        for deg in (phi..poly.len()).rev() {
            let c = std::mem::take(&mut poly[deg]);
            if c.is_zero() {
                continue;
            }
            for (t, &pc) in cyc.iter().enumerate().take(phi) {
                if pc != 0 {
                    let idx = deg - phi + t;
                    poly[idx] = &poly[idx] - &c * int(pc);
                }
            }
        }
        poly.truncate(phi);
    }
    poly.resize(phi, Rational::zero());
    poly
}

impl CycloScalar {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        CycloScalar {
            level: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(int(n))
    }

    /// ζ_level^exponent.
    pub fn root(exponent: i64, level: u32) -> Self {
        assert!(level >= 1, "level must be positive");
        let a = exponent.rem_euclid(level as i64) as usize;
        let mut poly = vec![Rational::zero(); a + 1];
        poly[a] = Rational::one();
        CycloScalar {
            level,
            coeffs: reduce(poly, level),
        }
    }

    /// Σ c·ζ_level^a over the given terms.
    pub fn from_terms(level: u32, terms: &[(Rational, i64)]) -> Self {
        assert!(level >= 1, "level must be positive");
        let mut poly = vec![Rational::zero(); level as usize];
        for (c, a) in terms {
            let idx = a.rem_euclid(level as i64) as usize;
            poly[idx] = &poly[idx] + c;
        }
        CycloScalar {
            level,
            coeffs: reduce(poly, level),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Coordinates in the reduced power basis.
    pub fn coordinates(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element at a level that is a multiple of the current one.
    pub fn lift(&self, level: u32) -> Self {
        assert!(
            level.is_multiple_of(self.level),
            "cannot lift level {} to {}",
            self.level,
            level
        );
        if level == self.level {
            return self.clone();
        }
        let r = (level / self.level) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * r + 1];
        for (a, c) in self.coeffs.iter().enumerate() {
            poly[a * r] = c.clone();
        }
        CycloScalar {
            level,
            coeffs: reduce(poly, level),
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.level.lcm(&b.level);
        (a.lift(l), b.lift(l))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloScalar {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycloScalar {
                level: self.level,
                coeffs: reduce(vec![r.recip()], self.level),
            });
        }
        // extended Euclid against Φ_L; the gcd is a nonzero constant
        let modulus: Vec<Rational> = cyclotomic_polynomial(self.level)
            .into_iter()
            .map(int)
            .collect();
        let (mut r0, mut r1) = (modulus, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        debug_assert_eq!(r0.len(), 1);
        let lead = r0[0].recip();
        let u: Vec<Rational> = s0.iter().map(|c| c * &lead).collect();
        Ok(CycloScalar {
            level: self.level,
            coeffs: reduce(u, self.level),
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = CycloScalar::one().lift(self.level);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn to_complex(&self) -> Complex64 {
        let step = std::f64::consts::TAU / self.level as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| Complex64::from_polar(to_f64(c), step * a as f64))
            .sum()
    }

    /// Nonzero (coefficient, ζ-exponent) pairs of the reduced form.
    pub fn terms(&self) -> Vec<(Rational, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| (c.clone(), a as i64))
            .collect()
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    let lead_inv = den[dd].recip();
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    while rem.len() >= den.len() {
        let k = rem.len() - 1 - dd;
        let c = &rem[rem.len() - 1] * &lead_inv;
        for (t, dc) in den.iter().enumerate() {
            rem[k + t] = &rem[k + t] - &c * dc;
        }
        quot[k] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::aligned(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycloScalar {}

impl From<Rational> for CycloScalar {
    fn from(r: Rational) -> Self {
        CycloScalar::from_rational(r)
    }
}

impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        if self.level == rhs.level {
            return CycloScalar {
                level: self.level,
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&rhs.coeffs)
                    .map(|(a, b)| a + b)
                    .collect(),
            };
        }
        let (a, b) = CycloScalar::aligned(self, rhs);
        &a + &b
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        self + &(-rhs)
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        if self.level != rhs.level {
            let (a, b) = CycloScalar::aligned(self, rhs);
            return &a * &b;
        }
        if self.coeffs.len() == 1 {
            return CycloScalar {
                level: self.level,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut prod = vec![Rational::zero(); self.coeffs.len() * 2 - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = &prod[i + j] + x * y;
                }
            }
        }
        CycloScalar {
            level: self.level,
            coeffs: reduce(prod, self.level),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", format_short(&r));
        }
        write!(f, "(")?;
        for (idx, (c, a)) in terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if *a == 0 {
                write!(f, "{}", format_short(c))?;
            } else {
                write!(f, "{}*z{}^{}", format_short(c), self.level, a)?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rational::rat;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn root_of_unity_relations() {
        for l in 1..=24u32 {
            let z = CycloScalar::root(1, l);
            assert_eq!(z.pow(l as i64).unwrap(), CycloScalar::one(), "level {l}");
        }
        for p in [2u32, 3, 5, 7, 11, 13] {
            let sum = (0..p as i64).fold(CycloScalar::zero(), |acc, a| {
                &acc + &CycloScalar::root(a, p)
            });
            assert!(sum.is_zero(), "prime {p}");
        }
    }

    #[test]
    fn equality_across_levels() {
        // ζ_2 = -1, ζ_4^2 = -1, ζ_8^2 = ζ_4
        assert_eq!(CycloScalar::root(1, 2), CycloScalar::from_int(-1));
        assert_eq!(CycloScalar::root(2, 4), CycloScalar::from_int(-1));
        assert_eq!(CycloScalar::root(2, 8), CycloScalar::root(1, 4));
        assert_ne!(CycloScalar::root(1, 8), CycloScalar::root(1, 4));
        // ζ_3 + ζ_3^2 = -1
        let s = &CycloScalar::root(1, 3) + &CycloScalar::root(2, 3);
        assert_eq!(s, CycloScalar::from_int(-1));
    }

    #[test]
    fn rationals_round_trip() {
        let r = rat(-7, 9);
        let s = CycloScalar::from_rational(r.clone());
        assert_eq!(s.as_rational(), Some(r.clone()));
        assert_eq!(s.lift(12).as_rational(), Some(r));
    }

    #[test]
    fn inversion() {
        for l in [3u32, 4, 5, 8, 12] {
            let x = &CycloScalar::from_int(2) + &CycloScalar::root(1, l);
            let y = x.inv().unwrap();
            assert_eq!(&x * &y, CycloScalar::one(), "level {l}");
        }
        assert_eq!(CycloScalar::zero().inv(), Err(Error::ZeroDivision));
        // 1/(1 - (-1)) = 1/2
        let half = (&CycloScalar::one() - &CycloScalar::root(1, 2))
            .inv()
            .unwrap();
        assert_eq!(half.as_rational(), Some(rat(1, 2)));
    }

    #[test]
    fn numeric_value() {
        let z = CycloScalar::root(1, 4).to_complex();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let w = CycloScalar::from_terms(6, &[(rat(1, 2), 0), (int(3), 5)]).to_complex();
        let expect = Complex64::new(0.5, 0.0)
            + 3.0 * Complex64::from_polar(1.0, -std::f64::consts::PI / 3.0);
        assert!((w - expect).norm() < 1e-12);
    }
}
