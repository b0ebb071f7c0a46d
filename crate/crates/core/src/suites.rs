//! Verification tasks, each producing a [`Certificate`].

use std::collections::BTreeMap;
use std::time::Instant;

pub use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{BranchChart, ChartLabel};
use crate::certificate::Certificate;
use crate::covers::{self, compose, Perm11};
use crate::exact::{Cyclotomic, Rational, Ring};
use crate::group660::{self, build_group, generators, is_invariant, word_matrix, Invariance};
use crate::klein::{self, NamedForms};
use crate::qmod;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RunParams {
    /// Truncation order of the branch series.
    pub order: i64,
    /// Truncation order in u = q^(1/132).
    pub qorder: i64,
    /// Use the second system, with the sign of √−11 flipped.
    pub conjugate: bool,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams { order: klein::DEFAULT_ORDER, qorder: qmod::DEFAULT_QORDER, conjugate: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Z,
    Xi,
}

/// The q-series identities that can be checked one at a time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Identity {
    /// Every multiplier root annihilates the degree-12 equation.
    Multiplier,
    /// Each multiplier root is the square of a signed theta sum.
    SquaredTheta,
    Brioschi,
    /// The cycle of theta ratios closes and defines a point of the curve.
    RatioCycle,
    Hik,
    J,
}

impl Identity {
    pub const ALL: [Identity; 6] =
        [Identity::Multiplier, Identity::SquaredTheta, Identity::Brioschi, Identity::RatioCycle, Identity::Hik, Identity::J];

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "28" => Identity::Multiplier,
            "29" => Identity::SquaredTheta,
            "33" => Identity::Brioschi,
            "36" => Identity::RatioCycle,
            "hik" => Identity::Hik,
            "J" | "j" => Identity::J,
            _ => return None,
        })
    }

    pub fn tag(self) -> &'static str {
        match self {
            Identity::Multiplier => "28",
            Identity::SquaredTheta => "29",
            Identity::Brioschi => "33",
            Identity::RatioCycle => "36",
            Identity::Hik => "hik",
            Identity::J => "J",
        }
    }
}

/// An exact field element in both its readable and its coordinate form.
pub fn exact(c: &Cyclotomic) -> Value {
    json!({ "text": c.to_string(), "basis": c.to_bracketed() })
}

fn exacts(cs: &[Cyclotomic]) -> Value {
    Value::Array(cs.iter().map(exact).collect())
}

fn timed(task: &str, f: impl FnOnce(&mut Certificate)) -> Certificate {
    let start = Instant::now();
    let mut c = Certificate::new(task);
    f(&mut c);
    c.timing_ms = start.elapsed().as_millis() as u64;
    c
}

fn forms(c: &mut Certificate, p: &RunParams) -> Option<NamedForms> {
    let r = NamedForms::build(p.conjugate);
    match r {
        Ok(f) => Some(f),
        Err(e) => {
            c.check_result::<()>("named forms", &Err(e));
            None
        }
    }
}

pub fn covers_census() -> Certificate {
    timed("covers census", |c| {
        c.anchor("ramification 11 / 3³1² / 2⁴1³").anchor("TS³ period criterion").anchor("diagram V");
        let classes = covers::enumerate_covers();
        let rows = covers::census_rows(&classes);
        let accepted = rows.iter().filter(|r| r.verdict.accepted()).count();
        c.check_eq("classes", 10, classes.len());
        c.check_eq("accepted", 2, accepted);
        let profile_ok = classes.iter().all(|k| {
            k.sigma_0.cycle_type() == covers::profile_0()
                && k.sigma_1.cycle_type() == covers::profile_1()
                && k.loop_product().is_identity()
                && k.is_transitive()
        });
        c.check("ramification profile", profile_ok, profile_ok);
        let disagree: Vec<String> = rows
            .iter()
            .filter(|r| r.verdict.accepted() != (r.monodromy_order == 660))
            .map(|r| r.sigma_1.to_string())
            .collect();
        c.check("criterion agrees with monodromy order", disagree.is_empty(), &disagree);
        let orders: Vec<u64> = rows.iter().map(|r| r.monodromy_order).collect();
        c.check("monodromy order divides 11! and is divisible by 11", orders.iter().all(|&o| 39916800 % o == 0 && o % 11 == 0), &orders);

        let ts3 = compose(&covers::diagram_v(), &Perm11::long_cycle().pow(3));
        c.check_eq("diagram V: TS³ images", "8,5,7,6,4,9,3,1,11,2,10".to_string(), ts3.to_string());
        c.check_eq("diagram V: TS³ cycle type", vec![7, 2, 2], ts3.cycle_type().nontrivial());
        c.check_eq("diagram V: TS³ order", 14, ts3.order());

        c.witness("classes", &rows);
        c.witness("summary", format!("classes={} accepted={}", classes.len(), accepted));
    })
}

pub fn group_verify(p: &RunParams) -> Certificate {
    timed("group verify", |c| {
        c.param("conjugate", p.conjugate);
        c.anchor("S, T matrices").anchor("C = S⁶TS²TS⁶T").anchor("subgroup of order 60").anchor("invariant forms");
        let g = match build_group() {
            Ok(g) => g,
            Err(e) => {
                c.check_result::<()>("build group", &Err(e));
                return;
            }
        };
        c.check_eq("elements", 660, g.len());
        c.check("closure is exact", g.exact_closure, g.exact_closure);

        // products of the canonical matrices against the table
        let mut bad = Vec::new();
        for a in 0..g.len() {
            let b = (a * 389 + 7) % g.len();
            let m = g.elements[a].canonical.then(&g.elements[b].canonical);
            if g.find(&m) != Some(g.product(a, b)) {
                bad.push(format!("{} · {}", g.elements[a].word, g.elements[b].word));
            }
        }
        c.check("matrix products agree with the table", bad.is_empty(), &bad);

        let census = g.order_census();
        let want: BTreeMap<u32, usize> = [(1, 1), (2, 55), (3, 110), (5, 264), (6, 110), (11, 120)].into_iter().collect();
        c.check_eq("element orders", want, census);

        let (s, t, cm) = generators();
        let u = cm.pow(2);
        let v = s.pow(10).then(&t).then(&s);
        let stst = word_matrix("S^6 T S^2 T S^6 T");
        let relations = [
            ("S¹¹ ≡ 1", s.pow(11)),
            ("T² ≡ 1", t.pow(2)),
            ("U⁵ ≡ 1", u.pow(5)),
            ("V² ≡ 1", v.pow(2)),
            ("(UV)³ ≡ 1", u.then(&v).pow(3)),
        ];
        for (name, m) in relations {
            c.check(name, m.is_proj_identity(), m.is_proj_identity());
        }
        match stst {
            Ok(w) => c.check("C ≡ S⁶TS²TS⁶T", w.proj_eq(&cm), w.proj_eq(&cm)),
            Err(e) => c.check_result::<()>("C ≡ S⁶TS²TS⁶T", &Err(e)),
        };
        c.check_eq("orders of S, T, U, V", [Some(11), Some(2), Some(5), Some(2)], [s, t, u, v].map(|m| m.proj_order(20)));

        match group660::subgroup60(&g) {
            Ok(sub) => c.check_eq("subgroup ⟨C, V⟩", 60, sub.len()),
            Err(e) => c.check_result::<()>("subgroup ⟨C, V⟩", &Err(e)),
        };

        let Some(f) = forms(c, p) else { return };
        if p.conjugate {
            match group660::subgroup60_from(&g, &f.stabilizer) {
                Ok(sub) => {
                    let plain = group660::subgroup60(&g).unwrap_or_default();
                    c.check_eq("conjugate subgroup", 60, sub.len());
                    c.check("conjugate subgroup differs", sub != plain, sub != plain);
                }
                Err(e) => {
                    c.check_result::<()>("conjugate subgroup", &Err(e));
                }
            }
        }
        invariance_checks(c, &f);
    })
}

fn invariance_checks(c: &mut Certificate, f: &NamedForms) {
    let (s, t, _) = generators();
    let names = ["S", "T"];
    for (form, poly) in [("∇", &f.nabla), ("C", &f.c_form)] {
        let r = is_invariant(poly, &[s.clone(), t.clone()]);
        c.check(&format!("{form} invariant under S, T"), r.holds(), invariance_value(&r, &names));
    }
    let sub_names = ["C", "V"];
    for (form, poly) in [("φ₀", &f.phi[0]), ("f₀", &f.f[0])] {
        let r = is_invariant(poly, &f.stabilizer);
        c.check(&format!("{form} invariant under C, V"), r.holds(), invariance_value(&r, &sub_names));
        let r = is_invariant(poly, &[s.clone()]);
        c.check(&format!("{form} not invariant under S"), !r.holds(), invariance_value(&r, &["S"]));
    }
    let phi_ok = f.phi[0] == f.sum_p_pow(2).scale(&f.phi_factor());
    c.check("φ₀ = ((−1 + √−11)/12)·Σp²", phi_ok, exact(&f.phi_factor()));
    c.check_eq("deg H", Some(5), f.h.degree());
}

fn invariance_value(r: &Invariance, names: &[&str]) -> Value {
    match r {
        Invariance::Invariant => Value::from("invariant"),
        Invariance::NotInvariant { witness } => json!({ "moved_by": names[*witness] }),
    }
}

fn charts(c: &mut Certificate, f: &NamedForms, order: i64) -> Option<Vec<BranchChart<Rational>>> {
    let r = klein::lift_charts(f, order, 4);
    match r {
        Ok(ch) => Some(ch),
        Err(e) => {
            c.check_result::<()>("lift charts", &Err(e));
            None
        }
    }
}

pub fn curve_verify(p: &RunParams) -> Certificate {
    timed("curve verify", |c| {
        c.param("order", p.order).param("conjugate", p.conjugate);
        c.anchor("H = det of the symmetric matrix").anchor("branch table at I, IV, V, IX, III").anchor("degree 20, genus 26");
        let Some(f) = forms(c, p) else { return };
        c.check_eq("minors", 15, f.minors.len());
        c.check("minors closed under the index cycle", klein::minors_cyclically_closed(&f), true);
        let Some(ch) = charts(c, &f, p.order) else { return };
        for chart in &ch {
            let r = klein::hik_orders(&f, chart);
            let ok = matches!(&r, Ok(o) if o.len() == 15 && o.iter().all(|&x| x >= p.order));
            match r {
                Ok(o) => c.check(&format!("H_ik vanish at {}", chart.label), ok, &o),
                Err(e) => c.check_result::<()>(&format!("H_ik vanish at {}", chart.label), &Err(e)),
            };
        }
        let third = ch.iter().find(|x| x.label == ChartLabel::III).cloned();
        if let Some(third) = third {
            let bad: Vec<String> = [ChartLabel::I, ChartLabel::IV, ChartLabel::V, ChartLabel::IX]
                .into_iter()
                .enumerate()
                .filter(|(k, l)| ch.iter().find(|x| x.label == *l).map(|x| x.series != third.cyclic_shift(k + 1).series).unwrap_or(true))
                .map(|(_, l)| l.to_string())
                .collect();
            c.check("charts are cyclic shifts", bad.is_empty(), &bad);
        }
        match klein::curve_degree_certificate(&f, &ch) {
            Ok(d) => {
                c.check_eq("degree", 20, d.degree);
                c.check("unit coordinates", d.unit_coordinates_ok, d.unit_coordinates_ok);
                c.witness("degree", &d);
            }
            Err(e) => {
                c.check_result::<()>("degree", &Err(e));
            }
        }
        let g = klein::genus_certificate();
        c.check_eq("genus", Rational::from(26), g.genus.clone());
        c.check_eq("genus without the third branching", Rational::from(-139), g.without_third_branching.clone());
        c.check_eq("genus with period-3 third branching", Rational::from(81), g.third_branching_three.clone());
        let lines = klein::match_eq13(&f);
        let inside = lines.iter().all(|l| !matches!(l, klein::LineMatch::Outside));
        c.check("printed minor lines lie in the span", inside, &lines);
    })
}

pub fn resolvent_derive(p: &RunParams, form: Form, label: ChartLabel) -> Certificate {
    let task = match form {
        Form::Z => "resolvent z",
        Form::Xi => "resolvent xi",
    };
    timed(task, |c| {
        c.param("order", p.order).param("conjugate", p.conjugate).param("chart", label);
        let Some(f) = forms(c, p) else { return };
        let Some(ch) = charts(c, &f, p.order) else { return };
        let Some(chart) = ch.iter().find(|x| x.label == label) else {
            c.check("chart", false, label);
            return;
        };
        let chart = klein::to_cyclotomic(chart);
        match form {
            Form::Z => derive_z(c, &f, &chart),
            Form::Xi => derive_xi(c, &f, &chart),
        }
    })
}

fn derive_z(c: &mut Certificate, f: &NamedForms, chart: &BranchChart<Cyclotomic>) {
    c.anchor("J : J − 1 : 1 in z").anchor("k = −1/1728").anchor("φ³ = f² − 3f∇ + (5 − √−11)∇²");
    let r = match klein::derive_resolvent_z(f, chart) {
        Ok(r) => r,
        Err(e) => {
            c.check_result::<()>("derive", &Err(e));
            return;
        }
    };
    let printed = klein::printed_z(&f.s);
    c.check_eq("A, B", exacts(&printed.quadratic), exacts(&r.quadratic));
    c.check_eq("a, b, c", exacts(&printed.cubic), exacts(&r.cubic));
    c.check_eq("A, B, Γ", exacts(&printed.cubic_b), exacts(&r.cubic_b));
    c.check_eq("α, β, γ, δ", exacts(&printed.quartic), exacts(&r.quartic));
    c.check_eq("k", exact(&Cyclotomic::from_rational(&printed.k)), exact(&r.k));
    c.check_eq("k from the squared quartic", exact(&r.k), exact(&r.k_second));
    c.check("overdetermination margin", r.margin() > 0, r.margin());
    let d = klein::eq20_difference(&f.s);
    let unit = d.degree() == Some(0) && d.coeff(0) == Cyclotomic::from_i64(-1728);
    c.check("numerator(J) − numerator(J − 1) = −1728", unit, exacts(d.coeffs()));
    let mut bridges = Vec::new();
    let mut ok = true;
    for v in 0..11 {
        match klein::verify_bridge_26_27(f, chart, v) {
            Ok(b) => {
                ok &= b.holds();
                bridges.push(serde_json::to_value(&b).unwrap_or(Value::Null));
            }
            Err(e) => {
                ok = false;
                bridges.push(Value::from(e.to_string()));
            }
        }
    }
    c.check("homogenized bridge for all v", ok, &bridges);
    c.witness("matched", r.matched);
    c.witness(
        "coefficients",
        json!({
            "A, B": exacts(&r.quadratic),
            "a, b, c": exacts(&r.cubic),
            "A, B, Γ": exacts(&r.cubic_b),
            "α, β, γ, δ": exacts(&r.quartic),
            "k": exact(&r.k),
        }),
    );
}

fn derive_xi(c: &mut Certificate, f: &NamedForms, chart: &BranchChart<Cyclotomic>) {
    c.anchor("degree-11 equation in φ, ∇, C").anchor("ξ = φ/∇^(2/3)");
    let r = match klein::derive_resolvent_xi(f, chart) {
        Ok(r) => r,
        Err(e) => {
            c.check_result::<()>("derive", &Err(e));
            return;
        }
    };
    c.check_eq("α … ζ", exacts(&klein::printed_xi(&f.s)), exacts(&r.coeffs));
    c.check("overdetermination margin", r.equations > 6, r.equations - 6);
    let terms: Vec<Value> = klein::eq25_terms(&r)
        .iter()
        .map(|t| json!({ "xi_power": t.xi_power, "coeff": exact(&t.coeff), "g_power": t.g_power }))
        .collect();
    c.witness("xi equation", terms);
    c.witness("coefficients", exacts(&r.coeffs));
}

pub fn qmod_verify(p: &RunParams, id: Identity) -> Certificate {
    timed(&format!("qmod {}", id.tag()), |c| {
        c.param("qorder", p.qorder).param("identity", id.tag());
        let n = p.qorder;
        match id {
            Identity::Multiplier | Identity::SquaredTheta => {
                c.anchor("multiplier equation of degree 12").anchor("√z = signed theta sum");
                match qmod::verify_multiplier(n) {
                    Ok(r) => {
                        if id == Identity::Multiplier {
                            c.check("twelve roots annihilate", r.annihilation.len() == 12 && r.annihilation.iter().all(|&o| o >= n), &r.annihilation);
                            c.check("trace vanishes", r.trace >= n, r.trace);
                            c.check("(12g₂)³ − (216g₃)² = 1728Δ", r.discriminant >= n, r.discriminant);
                            c.check("radicals of Δ", r.delta_roots.iter().all(|&(_, o)| o >= n), &r.delta_roots);
                        } else {
                            c.check("squared theta sums", r.squared_theta.len() == 12 && r.squared_theta.iter().all(|&o| o >= n), &r.squared_theta);
                        }
                    }
                    Err(e) => {
                        c.check_result::<()>("multiplier", &Err(e));
                    }
                }
            }
            Identity::Brioschi => {
                c.anchor("A₀⁵ + A₁A₄A₅A₉A₃ = 0");
                match qmod::ThetaFamily::build(n) {
                    Ok(t) => {
                        c.check_result("residual order", &qmod::verify_brioschi(&t, n));
                        match t.ds_signs() {
                            Ok(signs) => c.check_eq("leading signs in ds", [-1, 1, -1, -1, 1, 1], signs),
                            Err(e) => c.check_result::<()>("leading signs in ds", &Err(e)),
                        };
                        c.witness("printed discrepancies", &t.discrepancies);
                    }
                    Err(e) => {
                        c.check_result::<()>("theta", &Err(e));
                    }
                }
            }
            Identity::RatioCycle => {
                c.anchor("y-ratios as theta quotients").anchor("q^(2/11) = −ds");
                match qmod::reconstruct_y(n) {
                    Ok(y) => {
                        c.check("cycle product is 1", y.cycle_order >= n, y.cycle_order);
                        c.check_eq("chart", Some(ChartLabel::III), y.chart);
                        let lead: Vec<String> = y.leading.iter().map(|(e, k)| format!("{k}·u^{e}")).collect();
                        c.witness("leading", lead);
                        c.witness("shift", y.shift);
                    }
                    Err(e) => {
                        c.check_result::<()>("reconstruct", &Err(e));
                    }
                }
            }
            Identity::Hik => {
                c.anchor("H_ik on the theta curve");
                let Some(f) = forms(c, p) else { return };
                match qmod::reconstruct_y(n) {
                    Ok(y) => {
                        let r = qmod::verify_hik(&f, &y, n);
                        let ok = matches!(&r, Ok(o) if o.len() == 15);
                        match r {
                            Ok(o) => c.check("15 minors vanish", ok, &o),
                            Err(e) => c.check_result::<()>("15 minors vanish", &Err(e)),
                        };
                    }
                    Err(e) => {
                        c.check_result::<()>("reconstruct", &Err(e));
                    }
                }
            }
            Identity::J => {
                c.anchor("J = −C³/1728∇¹¹").anchor("1728J = 1/x + 744 + 196884x + …");
                let Some(f) = forms(c, p) else { return };
                match qmod::verify_j_identity(&f, n) {
                    Ok(r) => {
                        c.check("a substitution matches", r.winner.is_some(), &r.candidates);
                        let best = r.candidates.iter().map(|k| k.matched).max().unwrap_or(0);
                        c.check("matched coefficients ≥ 8", best >= 8, best);
                        c.check("∇ has finite order", r.nabla_order > 0, r.nabla_order);
                        c.witness("winner", r.winner.map(|s| format!("x = u^{s}")));
                        c.witness("oracle", &r.leading);
                    }
                    Err(e) => {
                        c.check_result::<()>("J", &Err(e));
                    }
                }
            }
        }
    })
}

pub const SPOT_TOLERANCE: f64 = 1e-8;

pub fn qmod_spotcheck(p: &RunParams, omega: Complex64, tolerance: f64) -> Certificate {
    timed("qmod spotcheck", |c| {
        c.param("omega", (omega.re, omega.im)).param("tolerance", tolerance).param("conjugate", p.conjugate);
        c.anchor("eleven z_v from theta values").anchor("F(z) = J");
        let Some(f) = forms(c, p) else { return };
        match qmod::numeric_spotcheck(&f, omega, tolerance) {
            Ok(r) => {
                c.check("|F(z_v) − J| scaled", r.passed, &r.scaled);
                c.witness("residuals", &r.residuals);
                c.witness("j", json!({ "eisenstein": r.j_eisenstein, "curve": r.j_curve }));
            }
            Err(e) => {
                c.check_result::<()>("spotcheck", &Err(e));
            }
        }
    })
}

/// Every suite, run concurrently and reported in a fixed order.
pub fn all(p: &RunParams) -> Certificate {
    let start = Instant::now();
    type Job<'a> = Box<dyn Fn() -> Certificate + Send + Sync + 'a>;
    let mut jobs: Vec<Job> = vec![
        Box::new(covers_census),
        Box::new(|| group_verify(p)),
        Box::new(|| curve_verify(p)),
        Box::new(|| resolvent_derive(p, Form::Z, ChartLabel::I)),
        Box::new(|| resolvent_derive(p, Form::Xi, ChartLabel::I)),
    ];
    for id in Identity::ALL {
        jobs.push(Box::new(move || qmod_verify(p, id)));
    }
    jobs.push(Box::new(|| qmod_spotcheck(p, Complex64::new(0.0, 1.5), SPOT_TOLERANCE)));
    let results: Vec<Certificate> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|j| s.spawn(|| j())).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    let mut c = Certificate::new("all");
    c.param("order", p.order).param("qorder", p.qorder).param("conjugate", p.conjugate);
    for r in results {
        c.add_suite(r);
    }
    c.timing_ms = start.elapsed().as_millis() as u64;
    c
}

/// `Ok(z)` for text like "1.5i", "0.3+1.2i", "-0.5-2i" or "2".
pub fn parse_omega(s: &str) -> Result<Complex64> {
    let err = || crate::Error::Parse(format!("expected a+bi, got {s:?}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().ok().filter(|x| x.is_finite()).map(|x| Complex64::new(x, 0.0)).ok_or_else(err);
    };
    // split at the last sign that is not a leading sign or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    let re: f64 = re.parse().map_err(|_| err())?;
    let im: f64 = im.parse().map_err(|_| err())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(err());
    }
    Ok(Complex64::new(re, im))
}
