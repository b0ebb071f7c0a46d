//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod props;

use std::time::{Duration, Instant};

use klein11_core::algebra::{det5, ChartLabel};
use klein11_core::certificate::Certificate;
use klein11_core::exact::{Cyclotomic, Rational, Ring};
use klein11_core::group660::{generators, is_invariant};
use klein11_core::klein::{self, eq4_matrix, quad, NamedForms};
use klein11_core::qmod;
use klein11_core::suites::{self, Complex64, Form, Identity, RunParams};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from_certs(certs: &[Certificate], elapsed: Duration, budget: Option<Duration>) -> Self {
        let failures: Vec<String> = certs
            .iter()
            .flat_map(|c| c.checks.iter().filter(|k| !k.passed).map(move |k| format!("{}: {}", c.task, k.name)))
            .collect();
        let in_time = budget.map_or(true, |b| elapsed <= b);
        let mut detail = format!("{} checks", certs.iter().map(|c| c.checks.len()).sum::<usize>());
        if !failures.is_empty() {
            detail = format!("failed {}", failures.join("; "));
        }
        if !in_time {
            detail.push_str(&format!("; over the {} s budget", budget.unwrap().as_secs()));
        }
        Outcome { passed: failures.is_empty() && in_time, detail }
    }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let c = suites::covers_census();
    Outcome::from_certs(&[c], t.elapsed(), Some(Duration::from_secs(10)))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let c = suites::group_verify(&RunParams::default());
    let mut out = Outcome::from_certs(&[c], t.elapsed(), Some(Duration::from_secs(30)));
    let g = klein11_core::group660::build_group().unwrap();
    let census = g.order_census();
    if !census.keys().all(|k| [1, 2, 3, 5, 6, 11].contains(k)) || census.values().sum::<usize>() != 660 {
        out.passed = false;
        out.detail.push_str(&format!("; census {census:?}"));
    }
    out
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    for conjugate in [false, true] {
        let f = NamedForms::build(conjugate).unwrap();
        let (s, t, _) = generators();
        let mut need = |ok: bool, what: &str| {
            if !ok {
                failures.push(format!("{what} (conjugate = {conjugate})"));
            }
        };
        need(is_invariant(&f.nabla, &[s.clone(), t.clone()]).holds(), "∇ under S, T");
        need(is_invariant(&f.c_form, &[s.clone(), t.clone()]).holds(), "C under S, T");
        for (name, p) in [("φ₀", &f.phi[0]), ("f₀", &f.f[0])] {
            need(is_invariant(p, &f.stabilizer).holds(), &format!("{name} under the subgroup of order 60"));
            need(!is_invariant(p, &[s.clone()]).holds(), &format!("{name} moved by S"));
        }
        let factor = quad(&f.s, Rational::new(-1, 12).unwrap(), Rational::new(1, 12).unwrap());
        need(f.phi[0] == f.sum_p_pow(2).scale(&factor), "φ₀ = ((−1 + √−11)/12)·Σp²");
        need(f.h == det5(&eq4_matrix()).unwrap() && f.h.degree() == Some(5) && f.h.is_homogeneous(), "H = det, degree 5");
    }
    let passed = failures.is_empty();
    Outcome { passed, detail: if passed { "both systems".into() } else { failures.join("; ") } }
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let c = suites::curve_verify(&RunParams::default());
    Outcome::from_certs(&[c], t.elapsed(), None)
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let p = RunParams::default();
    let mut certs = vec![suites::resolvent_derive(&p, Form::Z, ChartLabel::I), suites::resolvent_derive(&p, Form::Xi, ChartLabel::I)];
    certs.push(suites::resolvent_derive(&RunParams { conjugate: true, ..p }, Form::Z, ChartLabel::I));
    let mut out = Outcome::from_certs(&certs, t.elapsed(), None);

    let f = NamedForms::build(false).unwrap();
    let charts = klein::lift_charts(&f, p.order, 4).unwrap();
    let mut extra = Vec::new();
    // every chart gives the same z-resolvent
    let first = klein::derive_resolvent_z(&f, &klein::to_cyclotomic(&charts[0])).unwrap();
    for ch in &charts[1..] {
        let r = klein::derive_resolvent_z(&f, &klein::to_cyclotomic(ch)).unwrap();
        if (r.quadratic.clone(), r.cubic.clone(), r.cubic_b.clone(), r.quartic.clone(), r.k.clone())
            != (first.quadratic.clone(), first.cubic.clone(), first.cubic_b.clone(), first.quartic.clone(), first.k.clone())
        {
            extra.push(format!("chart {} differs", ch.label));
        }
    }
    let xi = klein::derive_resolvent_xi(&f, &klein::to_cyclotomic(&charts[0])).unwrap();
    let s = &f.s;
    let qq = |a: i64, b: i64, c: i64, d: i64| quad(s, Rational::new(a, b).unwrap(), Rational::new(c, d).unwrap());
    let mut got: Vec<(u32, Cyclotomic, u32)> = klein::eq25_terms(&xi).into_iter().map(|t| (t.xi_power, t.coeff, t.g_power)).collect();
    got.sort_by_key(|t| std::cmp::Reverse(t.0));
    let want = vec![
        (11, Cyclotomic::one(), 0),
        (8, Cyclotomic::from_i64(-22), 0),
        (5, qq(99, 1, -22, 1), 0),
        (4, Cyclotomic::from_i64(-11), 1),
        (2, qq(0, 1, 88, 1), 0),
        (1, qq(-33, 2, 11, 2).neg_ref(), 1),
        (0, Cyclotomic::from_i64(-1), 2),
    ];
    if got != want {
        extra.push("ξ-equation terms".into());
    }
    if !extra.is_empty() {
        out.passed = false;
        out.detail.push_str(&format!("; {}", extra.join("; ")));
    }
    out
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let p = RunParams::default();
    let certs: Vec<Certificate> = Identity::ALL.iter().map(|&id| suites::qmod_verify(&p, id)).collect();
    let mut out = Outcome::from_certs(&certs, t.elapsed(), Some(Duration::from_secs(120)));
    let f = NamedForms::build(false).unwrap();
    match qmod::verify_j_identity(&f, p.qorder) {
        Ok(r) if r.winner.is_some() && r.candidates.iter().any(|c| c.matched >= 8) => {
            out.detail.push_str(&format!(", J in x = u^{}", r.winner.unwrap()));
        }
        other => {
            out.passed = false;
            out.detail.push_str(&format!("; J: {other:?}"));
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let omega = Complex64::new(0.0, 1.5);
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for conjugate in [false, true] {
        let f = NamedForms::build(conjugate).unwrap();
        match qmod::numeric_spotcheck(&f, omega, suites::SPOT_TOLERANCE) {
            Ok(r) => {
                let max = r.residuals.iter().cloned().fold(0.0, f64::max);
                worst = worst.max(max);
                if r.residuals.len() != 11 || max >= 1e-8 {
                    failures.push(format!("conjugate = {conjugate}: max residual {max:e}"));
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    let passed = failures.is_empty();
    Outcome { passed, detail: if passed { format!("max |F(z_v) − J| = {worst:.1e}") } else { failures.join("; ") } }
}

fn criterion_8() -> Outcome {
    let runs: [(&str, fn(u32) -> Result<(), String>); 4] = [
        ("field axioms", props::field_axioms),
        ("series evaluation homomorphism", props::series_eval_homomorphism),
        ("projective canonicalization", props::projective_canonicalization),
        ("certificate determinism", props::certificate_determinism),
    ];
    let failures: Vec<String> = runs
        .iter()
        .filter_map(|(name, f)| f(props::CASES).err().map(|e| format!("{name}: {e}")))
        .collect();
    let passed = failures.is_empty();
    let detail = if passed { format!("{} suites × {} cases", runs.len(), props::CASES) } else { failures.join("; ") };
    Outcome { passed, detail }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("cover census", criterion_1),
        ("group of order 660", criterion_2),
        ("invariant forms", criterion_3),
        ("curve of degree 20 and genus 26", criterion_4),
        ("resolvents", criterion_5),
        ("q-series identities", criterion_6),
        ("numeric spot-check", criterion_7),
        ("property suites", criterion_8),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        all &= o.passed;
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {} {tag}: {name} ({}; {:.1} s)", i + 1, o.detail, t.elapsed().as_secs_f64());
    }
    if !all {
        std::process::exit(1);
    }
}
