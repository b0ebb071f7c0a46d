use klein11_core::algebra::{ChartLabel, LaurentSeries, SparsePoly};
use klein11_core::exact::{Rational, Ring};
use klein11_core::klein::NamedForms;
use klein11_core::qmod::*;
use num_complex::Complex64;

#[test]
fn theta_exponents_are_on_the_lattice() {
    let t = ThetaFamily::build(2000).unwrap();
    for s in &t.a {
        assert!(s.series.terms().iter().all(|(e, c)| e % 24 == 1 && (c.is_one() || c.neg_ref().is_one())));
        assert_eq!(s.weight, Rational::new(1, 2).unwrap());
    }
}

#[test]
fn printed_a1_disagrees_at_one_exponent_first() {
    let t = ThetaFamily::build(2000).unwrap();
    assert_eq!(t.discrepancies.len(), 1);
    let d = &t.discrepancies[0];
    assert_eq!(d.index, 1);
    assert_eq!((d.exponent - 1) % 132, 0);
    let err = t.check_printed().unwrap_err().to_string();
    assert!(err.contains("A1"), "{err}");
}

#[test]
fn brioschi_at_n_and_2n() {
    for n in [600, 1200, 2400] {
        let t = ThetaFamily::build(n).unwrap();
        assert!(verify_brioschi(&t, n).unwrap() >= n);
    }
}

#[test]
fn brioschi_negative_control() {
    let mut t = ThetaFamily::build(1200).unwrap();
    let (e, _) = t.get(9).series.terms()[1].clone();
    t.perturb(9, e);
    let err = verify_brioschi(&t, 1200).unwrap_err().to_string();
    assert!(err.contains("u^"), "{err}");
}

#[test]
fn multiplier_equation_and_roots() {
    let r = verify_multiplier(1200).unwrap();
    assert_eq!(r.squared_theta.len(), 12);
    assert!(r.squared_theta.iter().all(|&o| o >= 1200));
    assert!(r.annihilation.iter().all(|&o| o >= 1200));
    assert!(r.trace >= 1200);
    assert!(r.delta_roots.iter().all(|&(_, o)| o >= 1200));
}

#[test]
fn eta_roots_against_hand_expansion() {
    // z∞ = −11u²⁴²(1 − u²⁹⁰⁴)²… is −11u²⁴² below u³¹⁴⁶
    let roots = multiplier_roots(200);
    assert_eq!(roots[11].series.terms().len(), 0);
    let roots = multiplier_roots(3200);
    assert_eq!(roots[11].series.terms()[0], (242, klein11_core::exact::Cyclotomic::from_i64(-11)));
    // z₀ = u²(1 − u²⁴)²(1 − u⁴⁸)²… = u² − 2u²⁶ − u⁵⁰ + …
    let z0 = &roots[0].series;
    let c: Vec<String> = [2, 26, 50].iter().map(|&e| z0.coeff_or_zero(e).to_string()).collect();
    assert_eq!(c, ["1", "-2", "-1"]);
}

#[test]
fn y_curve_matches_the_third_chart() {
    let forms = NamedForms::build(false).unwrap();
    let y = reconstruct_y(1200).unwrap();
    assert!(y.cycle_order >= 1200);
    assert_eq!(y.chart, Some(ChartLabel::III));
    let exps: Vec<i64> = y.leading.iter().map(|l| l.0).collect();
    assert_eq!(exps, [240, 144, 24, 72, 0]);
    let orders = verify_hik(&forms, &y, 1200).unwrap();
    assert_eq!(orders.len(), 15);
    // the other parameter sign does not match any seed
    assert_eq!(match_seed(&y.leading, 24, 1), None);
}

#[test]
fn hik_orders_shift_under_regauging() {
    let forms = NamedForms::build(false).unwrap();
    let y = reconstruct_y(600).unwrap();
    let g = LaurentSeries::from_terms([(24, Rational::from(2)), (48, Rational::from(1))], 600 + 96);
    let moved: [LaurentSeries<Rational>; 5] = std::array::from_fn(|i| y.normalized[i].mul(&g));
    let before = hik_on(&forms, &y.normalized, 600).unwrap();
    let after = hik_on(&forms, &moved, 600 + 96).unwrap();
    for (b, a) in before.iter().zip(&after) {
        assert_eq!(*a, b + 96);
    }
    // a quartic that does not vanish on the curve moves by exactly 4·24
    let p: SparsePoly<Rational> = SparsePoly::var(0).pow(2).mul(&SparsePoly::var(4).pow(2));
    let b = klein11_core::algebra::series_eval_at(&p, &y.normalized, 600).unwrap().valuation();
    let a = klein11_core::algebra::series_eval_at(&p, &moved, 696).unwrap().valuation();
    assert_eq!(b, 480);
    assert_eq!(a, b + 96);
}

#[test]
fn gauge_one_reproduces_the_ratios() {
    let y = reconstruct_y(600).unwrap();
    let g = y.gauge_one().unwrap();
    assert!(g[0].is_exact());
    let t = ThetaFamily::build(3000).unwrap();
    // y₃/y₁ = −A₀/A₉
    let lhs = g[4].clone();
    let rhs = t.get(0).series.div(&t.get(9).series).unwrap().neg();
    let d = lhs.sub(&rhs);
    assert!(d.vanishing_order() >= d.prec());
}

#[test]
fn j_identity_in_q_squared() {
    let forms = NamedForms::build(false).unwrap();
    let r = verify_j_identity(&forms, 1200).unwrap();
    assert_eq!(r.winner, Some(264));
    assert!(r.candidates[0].matched >= 8);
    assert!(r.candidates[1].mismatch.is_some());
    assert_eq!(r.leading, ["1/1", "744/1", "196884/1", "21493760/1"]);
    assert!(r.nabla_order > 0);
}

#[test]
fn spot_checks() {
    for conjugate in [false, true] {
        let forms = NamedForms::build(conjugate).unwrap();
        let r = numeric_spotcheck(&forms, Complex64::new(0.0, 1.5), 1e-8).unwrap();
        assert!(r.passed && r.residuals.iter().all(|x| *x < 1e-8), "{r:?}");
        let r = numeric_spotcheck(&forms, Complex64::new(0.0, 3.0), 1e-12).unwrap();
        assert!(r.passed, "{r:?}");
        let r = numeric_spotcheck(&forms, Complex64::new(0.3, 1.2), 1e-8).unwrap();
        assert!(r.passed, "{r:?}");
    }
    assert!(numeric_spotcheck(&NamedForms::build(false).unwrap(), Complex64::new(0.0, -1.0), 1e-8).is_err());
}
