//! Randomized properties shared by the property suite and the acceptance run.
#![allow(dead_code)]
//!
//! Every property runs on a seeded ChaCha stream so failures reproduce.

use klein11_core::algebra::{det5, Exp, series_eval_at, LaurentSeries, PolyMatrix, SparsePoly};
use klein11_core::covers::{classify, compose, raw_solutions, Perm11};
use klein11_core::exact::{Cyclotomic, Field, Rational, Ring};
use klein11_core::group660::{generators, mat_mul, GroupTable, ProjMatrix5};
use klein11_core::suites::{self, Identity, RunParams};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const CASES: u32 = 1000;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&s, f).map_err(|e| e.to_string())
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

pub fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    proptest::array::uniform10(rational()).prop_map(|c| Cyclotomic::from_coeffs(&c))
}

/// Sparse, so products stay small.
pub fn small_cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    proptest::collection::vec((0usize..10, -3i64..=3), 0..3).prop_map(|terms| {
        let mut c = [(); 10].map(|_| Rational::from(0));
        for (i, k) in terms {
            c[i] = Rational::from(k);
        }
        Cyclotomic::from_coeffs(&c)
    })
}

pub fn perm() -> impl Strategy<Value = Perm11> {
    Just((1..=11).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm11::from_images(&v).unwrap())
}

fn exponent_of_degree(d: u16) -> impl Strategy<Value = Exp> {
    proptest::collection::vec(0usize..5, d as usize).prop_map(|vars| {
        let mut e = [0u16; 5];
        for v in vars {
            e[v] += 1;
        }
        e
    })
}

fn exponent(max_deg: u16) -> impl Strategy<Value = Exp> {
    (0..=max_deg).prop_flat_map(exponent_of_degree)
}

pub fn poly(max_deg: u16, max_terms: usize) -> impl Strategy<Value = SparsePoly<Cyclotomic>> {
    proptest::collection::vec((exponent(max_deg), small_cyclotomic()), 0..=max_terms).prop_map(SparsePoly::from_terms)
}

fn rational_poly(max_deg: u16, max_terms: usize) -> impl Strategy<Value = SparsePoly<Rational>> {
    proptest::collection::vec((exponent(max_deg), -4i64..=4), 0..=max_terms)
        .prop_map(|t| SparsePoly::from_terms(t.into_iter().map(|(e, c)| (e, Rational::from(c)))))
}

fn matrix5() -> impl Strategy<Value = [[Cyclotomic; 5]; 5]> {
    proptest::array::uniform5(proptest::array::uniform5(-2i64..=2)).prop_map(|m| m.map(|r| r.map(Cyclotomic::from_i64)))
}

pub fn field_axioms(cases: u32) -> Result<(), String> {
    check(cases, (cyclotomic(), cyclotomic(), cyclotomic()), |(a, b, c)| {
        prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert!(a.sub_ref(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.mul_ref(&a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
        Ok(())
    })?;
    check(cases, (rational(), rational(), rational()), |(a, b, c)| {
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
        if !a.is_zero() {
            prop_assert!(a.mul_ref(&a.inv().unwrap()).is_one());
        }
        Ok(())
    })
}

pub fn serialization_round_trip(cases: u32) -> Result<(), String> {
    check(cases, (cyclotomic(), rational()), |(a, q)| {
        let json = a.to_json();
        let back = Cyclotomic::from_json(&json).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_json(), json);
        let br = a.to_bracketed();
        prop_assert_eq!(Cyclotomic::parse_bracketed(&br).unwrap().to_bracketed(), br);
        let text = q.to_string();
        let q2: Rational = text.parse().unwrap();
        prop_assert_eq!(q2.to_string(), text);
        Ok(())
    })
}

pub fn galois_homomorphism(cases: u32) -> Result<(), String> {
    check(cases, (cyclotomic(), cyclotomic(), 1i64..=10), |(a, b, k)| {
        let g = |x: &Cyclotomic| x.galois_conj(k).unwrap();
        prop_assert_eq!(g(&a.add_ref(&b)), g(&a).add_ref(&g(&b)));
        prop_assert_eq!(g(&a.mul_ref(&b)), g(&a).mul_ref(&g(&b)));
        prop_assert!(g(&Cyclotomic::one()).is_one());
        Ok(())
    })
}

pub fn complex_eval_homomorphism(cases: u32) -> Result<(), String> {
    check(cases, (cyclotomic(), cyclotomic()), |(a, b)| {
        let (x, y) = (a.complex_eval(), b.complex_eval());
        let scale = 1.0 + x.norm() * y.norm() + x.norm() + y.norm();
        prop_assert!((a.mul_ref(&b).complex_eval() - x * y).norm() < 1e-10 * scale);
        prop_assert!((a.add_ref(&b).complex_eval() - (x + y)).norm() < 1e-10 * scale);
        Ok(())
    })
}

pub fn permutations(cases: u32) -> Result<(), String> {
    check(cases, (perm(), perm(), perm()), |(p, q, r)| {
        prop_assert_eq!(compose(&compose(&p, &q), &r), compose(&p, &compose(&q, &r)));
        prop_assert!(compose(&p, &p.inverse()).is_identity());
        prop_assert!(compose(&p.inverse(), &p).is_identity());
        prop_assert_eq!(p.conjugate_by(&q).cycle_type(), p.cycle_type());
        prop_assert_eq!(p.conjugate_by(&q).order(), p.order());
        Ok(())
    })
}

pub fn census_order_independence(cases: u32) -> Result<(), String> {
    let raw = raw_solutions();
    let reference = classify(&raw);
    check(cases, Just(raw).prop_shuffle(), |shuffled| {
        prop_assert_eq!(classify(&shuffled), reference.clone());
        Ok(())
    })
}

pub fn substitution_composition(cases: u32) -> Result<(), String> {
    check(cases, (poly(3, 4), matrix5(), matrix5()), |(p, m, n)| {
        let stepwise = p.linear_substitute(&m).linear_substitute(&n);
        prop_assert_eq!(stepwise, p.linear_substitute(&mat_mul(&m, &n)));
        Ok(())
    })
}

fn leibniz(m: &PolyMatrix<Rational>) -> SparsePoly<Rational> {
    fn rec(m: &PolyMatrix<Rational>, row: usize, used: &mut Vec<usize>, sign: i64, acc: &mut SparsePoly<Rational>) {
        if row == m.len() {
            let mut t = SparsePoly::constant(Rational::from(sign));
            for (i, &j) in used.iter().enumerate() {
                t = t.mul(&m[i][j]);
            }
            *acc = acc.add(&t);
            return;
        }
        for j in 0..m.len() {
            if used.contains(&j) {
                continue;
            }
            // each column index smaller than j that is still free is one inversion
            let inversions = (0..j).filter(|k| !used.contains(k)).count() as i64;
            used.push(j);
            rec(m, row + 1, used, if inversions % 2 == 0 { sign } else { -sign }, acc);
            used.pop();
        }
    }
    let mut acc = SparsePoly::zero();
    rec(m, 0, &mut Vec::new(), 1, &mut acc);
    acc
}

pub fn det_matches_leibniz(cases: u32) -> Result<(), String> {
    let entry = rational_poly(1, 3);
    let m = proptest::collection::vec(proptest::collection::vec(entry, 5), 5);
    check(cases, m, |m| {
        prop_assert_eq!(det5(&m).unwrap(), leibniz(&m));
        Ok(())
    })
}

fn series(prec: i64) -> impl Strategy<Value = LaurentSeries<Rational>> {
    proptest::collection::vec((0i64..prec, rational()), 0..6).prop_map(move |t| LaurentSeries::from_terms(t, prec))
}

pub fn series_eval_homomorphism(cases: u32) -> Result<(), String> {
    const N: i64 = 12;
    let ys = proptest::array::uniform5(series(N));
    check(cases, (rational_poly(3, 4), rational_poly(3, 4), ys), |(p, q, ys)| {
        let ep = series_eval_at(&p, &ys, N).unwrap();
        let eq = series_eval_at(&q, &ys, N).unwrap();
        let prod = series_eval_at(&p.mul(&q), &ys, N).unwrap();
        prop_assert!(prod.sub(&ep.mul(&eq)).truncate(N).vanishing_order() >= N);
        let sum = series_eval_at(&p.add(&q), &ys, N).unwrap();
        prop_assert!(sum.sub(&ep.add(&eq)).truncate(N).vanishing_order() >= N);
        Ok(())
    })
}

fn word() -> impl Strategy<Value = ProjMatrix5> {
    proptest::collection::vec(0u8..3, 0..12).prop_map(|w| {
        let (s, t, c) = generators();
        w.into_iter().fold(ProjMatrix5::identity(), |acc, g| acc.then([&s, &t, &c][g as usize]))
    })
}

pub fn projective_canonicalization(cases: u32) -> Result<(), String> {
    let nonzero = cyclotomic().prop_filter("nonzero", |c| !c.is_zero());
    check(cases, (word(), nonzero), |(m, lambda)| {
        let scaled = m.scale(&lambda);
        prop_assert_eq!(scaled.canonical().unwrap(), m.canonical().unwrap());
        prop_assert!(scaled.proj_eq(&m));
        prop_assert_eq!(scaled.canonical().unwrap().canonical().unwrap(), m.canonical().unwrap());
        Ok(())
    })
}

pub fn group_closure(g: &GroupTable, cases: u32) -> Result<(), String> {
    let n = g.len();
    check(cases, (0..n, 0..n), |(a, b)| {
        let m = g.elements[a].canonical.then(&g.elements[b].canonical);
        prop_assert_eq!(g.find(&m), Some(g.product(a, b)));
        Ok(())
    })
}

pub fn polynomial_text_round_trip(cases: u32) -> Result<(), String> {
    check(cases, poly(4, 6), |p| {
        let text = p.to_text();
        let back = SparsePoly::<Cyclotomic>::parse_text(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_text(), text);
        Ok(())
    })
}

pub fn certificate_determinism(cases: u32) -> Result<(), String> {
    check(cases, (24i64..=360, any::<bool>()), |(qorder, conjugate)| {
        let p = RunParams { qorder, conjugate, ..RunParams::default() };
        let a = suites::qmod_verify(&p, Identity::Brioschi);
        let b = suites::qmod_verify(&p, Identity::Brioschi);
        prop_assert_eq!(a.canonical_json(), b.canonical_json());
        Ok(())
    })
}

pub fn reynolds_fixed_point(cases: u32) -> Result<(), String> {
    use klein11_core::group660::{is_invariant, reynolds};
    let (s, t, c) = generators();
    let homogeneous = (1u16..=4).prop_flat_map(|d| {
        proptest::collection::vec((exponent_of_degree(d), small_cyclotomic()), 1..3)
            .prop_map(SparsePoly::from_terms)
    });
    check(cases, homogeneous, |p| {
        let r = reynolds(&p);
        prop_assert!(is_invariant(&r.raw, &[s.clone(), t.clone(), c.clone()]).holds());
        if let Some(inv) = r.invariant {
            prop_assert!(is_invariant(&inv, &[s.clone(), t.clone()]).holds());
        }
        Ok(())
    })
}
