use std::sync::OnceLock;

use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;

use qtrace::bracket::{c_table, vbracket_coeffs};
use qtrace::modforms::{bernoulli_polynomial, q_series_q, q_transform_residual, RootOfUnity};
use qtrace::series::rational::{binomial, int, rat};
use qtrace::series::{EvalPoint, QSeries};
use qtrace::sl2::{act_pair, SL2Matrix};

fn root(max: u32) -> impl Strategy<Value = RootOfUnity> {
    (1u32..=max).prop_flat_map(|m| (0..m as i64).prop_map(move |j| RootOfUnity::new(j, m)))
}

fn pairs() -> [(RootOfUnity, RootOfUnity); 3] {
    let (one, neg) = (RootOfUnity::one(), RootOfUnity::minus_one());
    [(one, neg), (neg, one), (neg, neg)]
}

/// Q_4 for the three nontrivial sign pairs, to order 120.
fn q4(pair: (RootOfUnity, RootOfUnity)) -> &'static QSeries {
    static CACHE: OnceLock<Vec<((RootOfUnity, RootOfUnity), QSeries)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        pairs()
            .into_iter()
            .map(|p| (p, q_series_q(4, p.0, p.1, 120).unwrap()))
            .collect()
    });
    &all.iter().find(|(p, _)| *p == pair).expect("sign pair").1
}

fn word() -> impl Strategy<Value = SL2Matrix> {
    let gens = [SL2Matrix::s(), SL2Matrix::t(), SL2Matrix::t().inverse()];
    prop::collection::vec(0usize..3, 0..5).prop_map(move |w| {
        w.iter()
            .fold(SL2Matrix::identity(), |acc, &i| acc.mul(&gens[i]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn q_coefficients_live_in_the_expected_field(k in 1u32..=4, mu in root(6), lam in root(6)) {
        prop_assume!(!(mu.is_one() && lam.is_one()));
        let q = q_series_q(k, mu, lam, 5).unwrap();
        let level = mu.order().lcm(&lam.order());
        prop_assert_eq!(level % q.level(), 0, "level {} for {}, {}", q.level(), mu, lam);
    }

    #[test]
    fn weight_four_law_under_random_words(
        g in word(), which in 0usize..3, x in -0.5f64..0.5, y in 1.0f64..2.0,
    ) {
        let tau = Complex64::new(x, y);
        prop_assume!(g.apply(tau).im >= 0.7);
        let pair = pairs()[which];
        let image = act_pair(pair.0, pair.1, &g);
        let r = q_transform_residual(4, pair, q4(pair), q4(image), &g, EvalPoint::new(tau).unwrap(), 1e-8).unwrap();
        prop_assert!(r.pass, "{r:?}");
    }

    #[test]
    fn bracket_rows_sum_to_binomials(p in -30i64..=30, i in 0u32..=10) {
        let t = c_table(p, 10);
        let sum: num_rational::BigRational = t.row(i).iter().sum();
        prop_assert_eq!(sum, binomial(&int(p), i));
    }

    #[test]
    fn vbracket_m0_is_binomial(wt in -10i64..=10) {
        let v = vbracket_coeffs(wt, 0, 8);
        for (i, c) in v.iter().enumerate() {
            prop_assert_eq!(c, &binomial(&int(wt - 1), i as u32));
        }
    }

    #[test]
    fn bernoulli_reflection(r in 0usize..=14, a in -6i64..=6, b in 1i64..=6) {
        let x = rat(a, b);
        let p = bernoulli_polynomial(r);
        let sign = if r % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(p.eval(&(int(1) - &x)), sign * p.eval(&x));
    }
}
