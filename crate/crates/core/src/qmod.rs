//! q-expansions: the theta series A₀ … A₃, the multiplier equation of degree
//! twelve and the y-curve rebuilt from the A.
//!
//! Everything lives on the lattice u = q^(1/132), q = e^{iπω}, so every
//! fractional power of q that occurs is an integer power of u. The factors
//! μ = √(ω₂/π) and 2π/ω₂ are dropped; each series keeps its weight instead
//! (A: 1/2, z: 1, E₄: 4, E₆: 6, Δ: 12).

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{series_eval_at, ChartLabel, LaurentSeries, SparsePoly, UniPoly, SEED_III};
use crate::exact::{Cyclotomic, Rational, Ring};
use crate::klein::{monic_from, printed_z, NamedForms};
use crate::{Error, Result};

pub const DEFAULT_QORDER: i64 = 1200;

/// Residue labels of the theta series, in storage order.
pub const A_INDICES: [u8; 6] = [0, 1, 4, 5, 9, 3];

/// `k` with k² ≡ index (mod 11), for the nonzero indices in storage order.
const K_OF: [i64; 6] = [0, 1, 2, 4, 3, 5];

/// One bilateral sum Σₕ (−1)^(h+sign) q^(33h² + b·h + c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bilateral {
    pub sign: i64,
    pub b: i64,
    pub c: i64,
}

/// The six series as printed: u-offset and one or two bilateral sums.
pub const PRINTED_THETA: [(i64, &[Bilateral]); 6] = [
    (121, &[Bilateral { sign: 1, b: 55, c: 22 }]),
    (1, &[Bilateral { sign: 0, b: 1, c: 0 }, Bilateral { sign: 1, b: 13, c: 14 }]),
    (37, &[Bilateral { sign: 0, b: 13, c: 1 }, Bilateral { sign: 1, b: 31, c: 7 }]),
    (49, &[Bilateral { sign: 0, b: 37, c: 10 }, Bilateral { sign: 1, b: 7, c: 0 }]),
    (97, &[Bilateral { sign: 1, b: 19, c: 2 }, Bilateral { sign: 0, b: 25, c: 4 }]),
    (25, &[Bilateral { sign: 0, b: 49, c: 18 }, Bilateral { sign: 0, b: 61, c: 28 }]),
];

fn parity(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Terms (u-exponent, sign) of u^off·Σₕ (−1)^(h+sign) q^(33h² + bh + c) below `n`.
fn bilateral_terms(off: i64, bl: &Bilateral, n: i64) -> Vec<(i64, i64)> {
    let e = |h: i64| off + 132 * (33 * h * h + bl.b * h + bl.c);
    let mut out = Vec::new();
    let vertex = -bl.b / 66;
    let mut h = vertex;
    while e(h) < n || h <= vertex + 1 {
        if e(h) < n {
            out.push((e(h), parity(h + bl.sign)));
        }
        h += 1;
    }
    let mut h = vertex - 1;
    while e(h) < n || h >= vertex - 1 {
        if e(h) < n {
            out.push((e(h), parity(h + bl.sign)));
        }
        h -= 1;
    }
    out
}

/// Terms of the closed formula for A_{k²}, k = 1 … 5; k = 0 gives 2·A₀.
fn general_terms(k: i64, n: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for (b, cn) in [(-(11 + 12 * k), 2 * (k + 1) * (6 * k + 5)), (-(11 - 12 * k), 2 * (k - 1) * (6 * k - 5))] {
        // q^(cn/11) must land on the u-lattice
        assert_eq!((132 * cn) % 11, 0, "exponent off the u-lattice");
        let c = 132 * cn / 11;
        let e = |h: i64| 1 + 132 * (33 * h * h + b * h) + c;
        let vertex = -b / 66;
        for dir in [1i64, -1] {
            let mut h = if dir == 1 { vertex } else { vertex - 1 };
            while e(h) < n || (h - vertex).abs() <= 1 {
                if e(h) < n {
                    out.push((e(h), parity(h)));
                }
                h += dir;
            }
        }
    }
    out
}

fn to_series(terms: Vec<(i64, i64)>, n: i64) -> LaurentSeries<Rational> {
    LaurentSeries::from_terms(terms.into_iter().map(|(e, s)| (e, Rational::from(s))), n)
}

/// A u-series together with its weight.
#[derive(Clone, Debug, PartialEq)]
pub struct USeries<R: Ring = Rational> {
    pub series: LaurentSeries<R>,
    pub weight: Rational,
}

impl<R: Ring> USeries<R> {
    pub fn new(series: LaurentSeries<R>, weight: Rational) -> Self {
        USeries { series, weight }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        USeries { series: self.series.mul(&rhs.series), weight: self.weight.add_ref(&rhs.weight) }
    }

    pub fn pow(&self, e: u32) -> Self {
        USeries { series: self.series.pow(e), weight: self.weight.mul_ref(&Rational::from(e as i64)) }
    }

    /// Sum of two series of equal weight.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.weight != rhs.weight {
            return Err(Error::Check(format!("adding weights {} and {}", self.weight, rhs.weight)));
        }
        Ok(USeries { series: self.series.add(&rhs.series), weight: self.weight.clone() })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        USeries { series: self.series.neg(), weight: self.weight.clone() }
    }

    pub fn scale(&self, k: &R) -> Self {
        USeries { series: self.series.scale(k), weight: self.weight.clone() }
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> USeries<S> {
        USeries { series: self.series.map_coeffs(f), weight: self.weight.clone() }
    }
}

impl USeries<Rational> {
    pub fn to_cyclotomic(&self) -> USeries<Cyclotomic> {
        self.map_coeffs(Cyclotomic::from_rational)
    }
}

/// First exponent at which two theta series differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaDiscrepancy {
    pub index: u8,
    pub exponent: i64,
    pub printed: String,
    pub general: String,
}

/// A₀, A₁, A₄, A₅, A₉, A₃ known below u^order.
#[derive(Clone, Debug)]
pub struct ThetaFamily {
    pub order: i64,
    pub a: [USeries; 6],
    /// Printed series that disagree with the closed formula.
    pub discrepancies: Vec<ThetaDiscrepancy>,
}

fn first_difference(a: &LaurentSeries<Rational>, b: &LaurentSeries<Rational>) -> Option<(i64, Rational, Rational)> {
    let d = a.sub(b);
    d.leading().map(|(e, _)| (*e, a.coeff_or_zero(*e), b.coeff_or_zero(*e)))
}

impl ThetaFamily {
    /// Builds all six series from the closed formula and compares them with the printed ones.
    pub fn build(order: i64) -> Result<Self> {
        if order < 1 {
            return Err(Error::Check("theta order must be positive".into()));
        }
        let half = Rational::new(1, 2)?;
        let mut a = Vec::with_capacity(6);
        let mut discrepancies = Vec::new();
        for (slot, &k) in K_OF.iter().enumerate() {
            let mut general = to_series(general_terms(k, order), order);
            if k == 0 {
                general = general.scale(&half);
            }
            let (off, sums) = PRINTED_THETA[slot];
            let printed = to_series(sums.iter().flat_map(|bl| bilateral_terms(off, bl, order)).collect(), order);
            if let Some((e, p, g)) = first_difference(&printed, &general) {
                discrepancies.push(ThetaDiscrepancy { index: A_INDICES[slot], exponent: e, printed: p.to_string(), general: g.to_string() });
            }
            a.push(USeries::new(general, half.clone()));
        }
        let a: [USeries; 6] = a.try_into().expect("six series");
        Ok(ThetaFamily { order, a, discrepancies })
    }

    /// Builds the family from the printed sums alone.
    pub fn build_printed(order: i64) -> Result<Self> {
        let half = Rational::new(1, 2)?;
        let a: Vec<USeries> = PRINTED_THETA
            .iter()
            .map(|(off, sums)| USeries::new(to_series(sums.iter().flat_map(|bl| bilateral_terms(*off, bl, order)).collect(), order), half.clone()))
            .collect();
        Ok(ThetaFamily { order, a: a.try_into().expect("six series"), discrepancies: Vec::new() })
    }

    /// Errors on the first printed series that disagrees with the closed formula.
    pub fn check_printed(&self) -> Result<()> {
        match self.discrepancies.first() {
            None => Ok(()),
            Some(d) => Err(Error::Check(format!(
                "A{}: printed and general series differ at u^{} ({} vs {})",
                d.index, d.exponent, d.printed, d.general
            ))),
        }
    }

    /// The series with residue label `index`.
    pub fn get(&self, index: u8) -> &USeries {
        let slot = A_INDICES.iter().position(|&i| i == index).expect("residue label");
        &self.a[slot]
    }

    /// Negates the coefficient of u^exponent in A_index.
    pub fn perturb(&mut self, index: u8, exponent: i64) {
        let slot = A_INDICES.iter().position(|&i| i == index).expect("residue label");
        let s = &self.a[slot].series;
        let c = s.coeff_or_zero(exponent);
        let delta = LaurentSeries::from_terms([(exponent, c.neg_ref().add_ref(&c.neg_ref()))], s.prec());
        self.a[slot].series = s.add(&delta);
    }

    /// Signs of the leading terms written in ds = −u²⁴ after removing the common u.
    pub fn ds_signs(&self) -> Result<[i64; 6]> {
        let lead = self.leading_terms()?;
        Ok(std::array::from_fn(|i| {
            let (e, c) = &lead[i];
            let s = if c.is_negative() { -1 } else { 1 };
            if ((e - 1) / 24) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Leading (exponent, coefficient) of each series; A₉ starts at u³⁶¹.
    pub fn leading_terms(&self) -> Result<Vec<(i64, Rational)>> {
        self.a
            .iter()
            .map(|s| s.series.leading().cloned().ok_or(Error::PrecisionExceeded { requested: 362, achievable: self.order }))
            .collect()
    }
}

fn residual_error(what: &str, s: &LaurentSeries<impl Ring>, n: i64) -> Error {
    match s.leading() {
        Some((e, c)) if *e < n => Error::Check(format!("{what}: nonzero coefficient {c} at u^{e}")),
        _ => Error::PrecisionExceeded { requested: n, achievable: s.prec() },
    }
}

/// Checks the residual vanishes below u^n and returns its vanishing order.
fn require(what: &str, s: &LaurentSeries<impl Ring>, n: i64) -> Result<i64> {
    let ord = s.vanishing_order();
    if ord < n {
        return Err(residual_error(what, s, n));
    }
    Ok(ord)
}

/// A₀⁵ + A₁A₄A₅A₉A₃.
pub fn brioschi_residual(theta: &ThetaFamily) -> Result<USeries> {
    let a = &theta.a;
    let lhs = a[0].pow(5);
    let rhs = a[1].mul(&a[2]).mul(&a[3]).mul(&a[4]).mul(&a[5]);
    lhs.add(&rhs)
}

/// Vanishing order of the Brioschi residual; at least `n` on success.
pub fn verify_brioschi(theta: &ThetaFamily, n: i64) -> Result<i64> {
    if theta.order < n {
        return Err(Error::PrecisionExceeded { requested: n, achievable: theta.order });
    }
    require("Brioschi residual", &brioschi_residual(theta)?.series, n)
}

/// u^shift·∏_{λ≥1} (1 − c(λ)·u^(step·λ))^power below u^n.
pub fn eta_product<R: Ring>(shift: i64, lead: R, step: i64, power: u32, c: impl Fn(i64) -> R, n: i64) -> LaurentSeries<R> {
    let len = (n - shift).max(0) as usize;
    let mut buf: Vec<R> = vec![R::zero(); len];
    if len > 0 {
        buf[0] = lead;
    }
    let mut lambda = 1;
    while ((step * lambda) as usize) < len {
        let m = (step * lambda) as usize;
        let cl = c(lambda);
        for _ in 0..power {
            for e in (m..len).rev() {
                if buf[e - m].is_zero() {
                    continue;
                }
                let t = buf[e - m].mul_ref(&cl);
                buf[e].sub_assign_ref(&t);
            }
        }
        lambda += 1;
    }
    LaurentSeries::from_terms(buf.into_iter().enumerate().map(|(i, c)| (shift + i as i64, c)), n)
}

fn sigma(n: i64, k: u32) -> i64 {
    (1..=n).filter(|d| n % d == 0).map(|d| d.pow(k)).sum()
}

/// E₄, E₆ and Δ as u-series in x = u^step (x = q² for step 264).
#[derive(Clone, Debug)]
pub struct ModularScalars {
    pub step: i64,
    pub e4: USeries,
    pub e6: USeries,
    pub delta: USeries,
}

impl ModularScalars {
    pub fn build(step: i64, n: i64) -> Self {
        // built in x = u^step, then spread out
        let nx = n.div_euclid(step) + i64::from(n.rem_euclid(step) != 0);
        let e = |c: i64, k: u32| {
            let terms = std::iter::once((0, Rational::from(1))).chain((1..nx).map(|m| (m, Rational::from(c * sigma(m, k)))));
            LaurentSeries::from_terms(terms, nx)
        };
        let delta = eta_product(1, Rational::from(1), 1, 24, |_| Rational::from(1), nx);
        let spread = |s: LaurentSeries<Rational>| s.dilate(step).truncate(n);
        ModularScalars {
            step,
            e4: USeries::new(spread(e(240, 3)), Rational::from(4)),
            e6: USeries::new(spread(e(-504, 5)), Rational::from(6)),
            delta: USeries::new(spread(delta), Rational::from(12)),
        }
    }

    /// E₄³ − E₆² − 1728Δ.
    pub fn discriminant_residual(&self) -> Result<USeries> {
        self.e4.pow(3).sub(&self.e6.pow(2))?.sub(&self.delta.scale(&Rational::from(1728)))
    }

    /// Δ^(1/m) from the η-product.
    pub fn delta_root_eta(&self, m: i64, n: i64) -> USeries {
        let p = 24 / m;
        let s = eta_product(self.step / m, Rational::from(1), self.step, p as u32, |_| Rational::from(1), n);
        USeries::new(s, Rational::new(12, m).expect("m > 0"))
    }

    /// Δ^(1/m) as the principal power series root.
    pub fn delta_root_series(&self, m: i64) -> Result<USeries> {
        let s = self.delta.series.rational_pow(&Rational::new(1, m)?, &Rational::from(1))?;
        Ok(USeries::new(s, Rational::new(12, m)?))
    }

    /// J = E₄³/(E₄³ − E₆²), scaled by 1728.
    pub fn j1728(&self) -> Result<LaurentSeries<Rational>> {
        let num = self.e4.series.pow(3).scale(&Rational::from(1728));
        let den = self.e4.series.pow(3).sub(&self.e6.series.pow(2));
        num.div(&den)
    }
}

/// Degree-12 multiplier equation: (power of z, integer factor, E₄ power, E₆ power, m of Δ^(1/m)).
pub const EQ28_TERMS: [(u32, i64, u32, u32, i64); 7] = [
    (12, 1, 0, 0, 0),
    (6, -90 * 11, 0, 0, 2),
    (4, 40 * 11, 1, 0, 3),
    (3, -15 * 11, 0, 1, 4),
    (2, 2 * 11, 2, 0, 6),
    (1, -1, 1, 1, 12),
    (0, -11, 0, 0, 1),
];

/// The roots z₀ … z₁₀ and z∞ from their η-products.
pub fn multiplier_roots(n: i64) -> Vec<USeries<Cyclotomic>> {
    let one = Rational::from(1);
    let mut roots: Vec<USeries<Cyclotomic>> = (0..11)
        .map(|v| {
            let s = eta_product(2, Cyclotomic::rho(2 * v), 24, 2, |l| Cyclotomic::rho(2 * v * l), n);
            USeries::new(s, one.clone())
        })
        .collect();
    let inf = eta_product(242, Cyclotomic::from_i64(-11), 2904, 2, |_| Cyclotomic::one(), n);
    roots.push(USeries::new(inf, one));
    roots
}

/// The roots as squares of theta combinations: (A₀ + Σₖ ρ^(k²v)A_{k²})² and −11A₀².
pub fn theta_roots(theta: &ThetaFamily) -> Result<Vec<USeries<Cyclotomic>>> {
    let a: Vec<USeries<Cyclotomic>> = theta.a.iter().map(|s| s.to_cyclotomic()).collect();
    let mut out = Vec::with_capacity(12);
    for v in 0..11i64 {
        let mut s = a[0].clone();
        for slot in 1..6 {
            s = s.add(&a[slot].scale(&Cyclotomic::rho(A_INDICES[slot] as i64 * v)))?;
        }
        out.push(s.pow(2));
    }
    out.push(a[0].pow(2).scale(&Cyclotomic::from_i64(-11)));
    Ok(out)
}

/// Left side of the multiplier equation at one root.
pub fn eq28_residual(z: &USeries<Cyclotomic>, scalars: &ModularScalars, roots: &[(i64, USeries)]) -> Result<USeries<Cyclotomic>> {
    let e4 = scalars.e4.to_cyclotomic();
    let e6 = scalars.e6.to_cyclotomic();
    let mut powers = vec![USeries::new(LaurentSeries::one(), Rational::from(0))];
    for _ in 0..12 {
        let next = powers.last().expect("nonempty").mul(z);
        powers.push(next);
    }
    let mut acc: Option<USeries<Cyclotomic>> = None;
    for &(zp, factor, p4, p6, m) in &EQ28_TERMS {
        let mut t = powers[zp as usize].scale(&Cyclotomic::from_i64(factor));
        t = t.mul(&e4.pow(p4)).mul(&e6.pow(p6));
        if m > 0 {
            let root = roots.iter().find(|(k, _)| *k == m).ok_or_else(|| Error::Check(format!("missing Δ^(1/{m})")))?;
            t = t.mul(&root.1.to_cyclotomic());
        }
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t)?,
        });
    }
    Ok(acc.expect("seven terms"))
}

/// Orders reached by every identity around the multiplier equation.
#[derive(Clone, Debug, Serialize)]
pub struct MultiplierReport {
    pub order: i64,
    /// Agreement of the η-product roots with the squared theta sums, v = 0 … 10 then ∞.
    pub squared_theta: Vec<i64>,
    /// Vanishing order of the degree-12 equation at each root, same order.
    pub annihilation: Vec<i64>,
    /// Σ zᵥ + z∞.
    pub trace: i64,
    /// E₄³ − E₆² − 1728Δ.
    pub discriminant: i64,
    /// Agreement of Δ^(1/m) from the η-product and from the series root, m = 1, 2, 3, 4, 6, 12.
    pub delta_roots: Vec<(i64, i64)>,
}

pub fn verify_multiplier(n: i64) -> Result<MultiplierReport> {
    let theta = ThetaFamily::build(n)?;
    // Δ^(1/m) keeps only the relative precision of Δ
    let scalars = ModularScalars::build(264, n + 264);
    let discriminant = require("E4^3 - E6^2 - 1728 Delta", &scalars.discriminant_residual()?.series, n)?;

    let mut roots = Vec::new();
    let mut delta_roots = Vec::new();
    for m in [1i64, 2, 3, 4, 6, 12] {
        let eta = scalars.delta_root_eta(m, n);
        let series = scalars.delta_root_series(m)?;
        let agree = require(&format!("Delta^(1/{m}) routes"), &eta.sub(&series)?.series, n)?;
        delta_roots.push((m, agree));
        roots.push((m, eta));
    }

    let eta_roots = multiplier_roots(n);
    let th_roots = theta_roots(&theta)?;
    let mut squared_theta = Vec::new();
    let mut annihilation = Vec::new();
    for (i, (z, t)) in eta_roots.iter().zip(&th_roots).enumerate() {
        let name = if i == 11 { "inf".to_string() } else { i.to_string() };
        squared_theta.push(require(&format!("squared theta sum, root {name}"), &z.sub(t)?.series, n)?);
        let r = eq28_residual(z, &scalars, &roots)?;
        annihilation.push(require(&format!("multiplier equation, root {name}"), &r.series, n)?);
    }
    let mut sum = eta_roots[0].clone();
    for z in &eta_roots[1..] {
        sum = sum.add(z)?;
    }
    let trace = require("trace of the roots", &sum.series, n)?;
    Ok(MultiplierReport { order: n, squared_theta, annihilation, trace, discriminant, delta_roots })
}

/// The y-curve as u-series.
#[derive(Clone, Debug)]
pub struct YCurve {
    pub order: i64,
    /// y₁ … y₃ in variable order, polynomial in the A, divided by the smallest leading power of u.
    pub normalized: [LaurentSeries<Rational>; 5],
    /// Power of u removed from the polynomial gauge.
    pub shift: i64,
    /// Vanishing order of (product of the five ratios) − 1.
    pub cycle_order: i64,
    /// Chart whose seed has the same leading exponents (in steps of u²⁴) and signs.
    pub chart: Option<ChartLabel>,
    pub leading: [(i64, Rational); 5],
}

impl YCurve {
    /// The projective gauge y₁ = 1.
    pub fn gauge_one(&self) -> Result<[LaurentSeries<Rational>; 5]> {
        let inv = self.normalized[0].inv()?;
        Ok(std::array::from_fn(|i| if i == 0 { LaurentSeries::one() } else { self.normalized[i].mul(&inv) }))
    }
}

/// Polynomial gauge: y₁ = A₀A₄A₅A₉, y₄ = −A₃A₄A₅A₉, y₅ = −A₀⁴, y₉ = A₀³A₄, y₃ = −A₀²A₄A₅.
fn polynomial_gauge(theta: &ThetaFamily) -> [LaurentSeries<Rational>; 5] {
    let a = |i: u8| theta.get(i).series.clone();
    let (a0, a3, a4, a5, a9) = (a(0), a(3), a(4), a(5), a(9));
    let a45 = a4.mul(&a5);
    let a459 = a45.mul(&a9);
    [a0.mul(&a459), a3.mul(&a459).neg(), a0.pow(4).neg(), a0.pow(3).mul(&a4), a0.pow(2).mul(&a45).neg()]
}

/// Product of y₄/y₅, y₅/y₉, y₉/y₃, y₃/y₁, y₁/y₄ written as −A₀/Aₖ.
fn cycle_product(theta: &ThetaFamily) -> Result<LaurentSeries<Rational>> {
    let a0 = &theta.get(0).series;
    let mut acc = LaurentSeries::one();
    for k in [1u8, 4, 5, 9, 3] {
        acc = acc.mul(&a0.div(&theta.get(k).series)?.neg());
    }
    Ok(acc)
}

fn leading_pattern(ys: &[LaurentSeries<Rational>; 5]) -> Result<[(i64, Rational); 5]> {
    let mut out = Vec::new();
    for y in ys {
        out.push(y.leading().cloned().ok_or_else(|| Error::Check("zero coordinate".into()))?);
    }
    Ok(out.try_into().expect("five"))
}

/// The chart whose seed has these leading exponents (in units of `unit`) and signs, up to a common factor,
/// when the chart parameter is `param_sign`·u^unit.
pub fn match_seed(leading: &[(i64, Rational); 5], unit: i64, param_sign: i64) -> Option<ChartLabel> {
    let base = leading.iter().map(|t| t.0).min()?;
    let sign = |(e, c): &(i64, Rational)| {
        let s = if c.is_negative() { -1 } else { 1 };
        s * param_sign.pow(((e - base) / unit).rem_euclid(2) as u32)
    };
    for label in ChartLabel::ALL {
        // charts are cyclic shifts of the III seed, which sits at unit index 4
        let k = (label.unit_index() + 1) % 5;
        let pat = |i: usize| SEED_III[(i + 5 - k) % 5];
        let ok = (0..5).all(|i| leading[i].0 - base == pat(i).0 * unit && sign(&leading[i]) * pat(0).1 == sign(&leading[0]) * pat(i).1);
        if ok {
            return Some(label);
        }
    }
    None
}

/// Rebuilds y from the A and checks that the five ratios close up.
pub fn reconstruct_y(n: i64) -> Result<YCurve> {
    // the normalized gauge loses the 460 powers of u shared by all five coordinates
    let probe = ThetaFamily::build(1000)?;
    let shift = polynomial_gauge(&probe).iter().map(|y| y.valuation()).min().expect("five");
    let theta = ThetaFamily::build(n + shift + 600)?;
    let poly = polynomial_gauge(&theta);
    let normalized: [LaurentSeries<Rational>; 5] = std::array::from_fn(|i| poly[i].shift(-shift));
    for y in &normalized {
        if y.prec() < n {
            return Err(Error::PrecisionExceeded { requested: n, achievable: y.prec() });
        }
    }
    let normalized = normalized.map(|y| y.truncate(n));
    let cycle = cycle_product(&theta)?.sub(&LaurentSeries::one());
    let cycle_order = require("cycle of ratios", &cycle, n)?;
    let leading = leading_pattern(&normalized)?;
    // the chart parameter is ds with q^(2/11) = −ds
    let chart = match_seed(&leading, 24, -1);
    Ok(YCurve { order: n, normalized, shift, cycle_order, chart, leading })
}

/// Vanishing orders of the fifteen H_ik on the given coordinates, up to u^n.
pub fn hik_on(forms: &NamedForms, ys: &[LaurentSeries<Rational>; 5], n: i64) -> Result<Vec<i64>> {
    forms.rational_minors().iter().map(|m| series_eval_at(m, ys, n).map(|s| s.vanishing_order())).collect()
}

/// All fifteen H_ik vanish on y(u) below u^n.
pub fn verify_hik(forms: &NamedForms, curve: &YCurve, n: i64) -> Result<Vec<i64>> {
    let orders = hik_on(forms, &curve.normalized, n)?;
    for (i, &o) in orders.iter().enumerate() {
        if o < n {
            let m = &forms.minors[i];
            return Err(Error::Check(format!("H[{}][{}] vanishes only to u^{o}", m.row, m.col)));
        }
    }
    Ok(orders)
}

/// Replaces every exponent e by e/k; all exponents and the precision must be divisible.
fn squeeze<R: Ring>(s: &LaurentSeries<R>, k: i64) -> Result<LaurentSeries<R>> {
    if s.terms().iter().any(|(e, _)| e % k != 0) {
        return Err(Error::Check(format!("series is not in u^{k}")));
    }
    let prec = s.prec().div_euclid(k) + i64::from(s.prec().rem_euclid(k) != 0);
    Ok(LaurentSeries::from_terms(s.terms().iter().map(|(e, c)| (e / k, c.clone())), prec))
}

/// Outcome of matching J from the curve against the Eisenstein oracle.
#[derive(Clone, Debug, Serialize)]
pub struct JCandidate {
    /// Exponent of u identified with the oracle's q².
    pub step: i64,
    /// Consecutive oracle coefficients reproduced, counting from the pole.
    pub matched: i64,
    /// First exponent (in u) where the two series differ, if any within precision.
    pub mismatch: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct JReport {
    /// Exponent of u that plays the role of x in 1728J = 1/x + 744 + …
    pub winner: Option<i64>,
    pub candidates: Vec<JCandidate>,
    pub nabla_order: i64,
    /// First coefficients of 1728J from the curve, in the winning variable.
    pub leading: Vec<String>,
}

/// 1728·J = −C³/∇¹¹ along y(u), as a series in w = u²⁴.
pub fn curve_j(forms: &NamedForms, theta_order: i64) -> Result<(LaurentSeries<Rational>, i64)> {
    let theta = ThetaFamily::build(theta_order)?;
    let poly = polynomial_gauge(&theta);
    let shift = poly.iter().map(|y| y.valuation()).min().expect("five");
    let ys: Vec<LaurentSeries<Rational>> = poly.iter().map(|y| squeeze(&y.shift(-shift), 24)).collect::<Result<_>>()?;
    let ys: [LaurentSeries<Rational>; 5] = ys.try_into().expect("five");
    let n = ys.iter().map(|y| y.prec()).min().expect("five");
    let c = forms.c_form.map_coeffs(|x| x.as_rational().expect("rational C"));
    let nabla = forms.nabla.map_coeffs(|x| x.as_rational().expect("rational nabla"));
    let cs = series_eval_at(&c, &ys, n)?;
    let ns = series_eval_at(&nabla, &ys, n)?;
    if ns.is_zero() {
        return Err(Error::Check("nabla vanishes identically on y(u)".into()));
    }
    let j = cs.pow(3).neg().div(&ns.pow(11))?;
    Ok((j, ns.valuation()))
}

/// Compares −C³/∇¹¹ on y(u) against 1728·E₄³/(E₄³ − E₆²) with x = u^264 and x = u^24.
pub fn verify_j_identity(forms: &NamedForms, n: i64) -> Result<JReport> {
    let mut theta_order = n.max(DEFAULT_QORDER) + 2400;
    let (j, nabla_order) = loop {
        let (j, nab) = curve_j(forms, theta_order)?;
        // ten steps of u²⁶⁴ are 110 steps of w
        if j.prec() - j.valuation() >= 120 || theta_order > 40_000 {
            break (j, nab);
        }
        theta_order *= 2;
    };
    let mut candidates = Vec::new();
    let mut winner = None;
    for step in [264i64, 24] {
        let w = step / 24;
        let prec = (j.prec() - j.valuation()) * 24 + 264;
        let oracle = ModularScalars::build(step, prec).j1728()?;
        let oracle = squeeze(&oracle, 24)?;
        let diff = j.sub(&oracle);
        let common = diff.prec();
        let mismatch = diff.leading().map(|(e, _)| *e);
        let upto = mismatch.unwrap_or(common);
        let matched = (upto - oracle.valuation()).div_euclid(w);
        let mismatch = mismatch.map(|e| e * 24);
        if mismatch.is_none() && matched >= 8 && winner.is_none() {
            winner = Some(step);
        }
        candidates.push(JCandidate { step, matched, mismatch });
    }
    let leading = match winner {
        Some(step) => {
            let w = step / 24;
            (0..4).map(|i| j.coeff_or_zero(j.valuation() + i * w).to_string()).collect()
        }
        None => Vec::new(),
    };
    let report = JReport { winner, candidates, nabla_order: nabla_order * 24, leading };
    if report.winner.is_none() {
        return Err(Error::Check(format!("no substitution matches the Eisenstein J: {:?}", report.candidates)));
    }
    Ok(report)
}

fn eval_complex(p: &SparsePoly<Cyclotomic>, y: &[Complex64; 5]) -> Complex64 {
    p.terms()
        .map(|(e, c)| {
            let mut t = c.complex_eval();
            for i in 0..5 {
                t *= y[i].powi(e[i] as i32);
            }
            t
        })
        .sum()
}

/// Classical J(ω) = E₄³/1728Δ with q = e^{2πiω} and Δ = q∏(1 − qⁿ)²⁴.
pub fn j_eisenstein(omega: Complex64) -> Complex64 {
    let q = (Complex64::i() * 2.0 * std::f64::consts::PI * omega).exp();
    let mut e4 = Complex64::new(1.0, 0.0);
    let mut eta = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..400 {
        qn *= q;
        if qn.norm() < 1e-40 {
            break;
        }
        e4 += qn * 240.0 * sigma(n, 3) as f64;
        eta *= Complex64::new(1.0, 0.0) - qn;
    }
    let delta = q * eta.powi(24);
    e4 * e4 * e4 / (delta * 1728.0)
}

/// Theta series at q = e^{iπω}, all six from the closed formula.
pub fn theta_numeric(omega: Complex64) -> [Complex64; 6] {
    let base = Complex64::i() * std::f64::consts::PI * omega / 132.0;
    // terms past u^n are below 1e−40 relative to the leading ones
    let n = (100.0 / (std::f64::consts::PI * omega.im / 132.0)) as i64 + 2000;
    std::array::from_fn(|slot| {
        let k = K_OF[slot];
        let s: Complex64 = general_terms(k, n).into_iter().map(|(e, sg)| (base * e as f64).exp() * sg as f64).sum();
        if k == 0 {
            s / 2.0
        } else {
            s
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpotReport {
    pub omega: (f64, f64),
    pub tolerance: f64,
    pub j_eisenstein: (f64, f64),
    pub j_curve: (f64, f64),
    /// |F(zᵥ) − J| for v = 0 … 10.
    pub residuals: Vec<f64>,
    /// The same divided by max(1, |J|); this is what the tolerance applies to.
    pub scaled: Vec<f64>,
    pub passed: bool,
}

/// Evaluates the eleven zᵥ = fᵥ/∇ numerically on y(ω) and checks F(zᵥ) = J(ω).
pub fn numeric_spotcheck(forms: &NamedForms, omega: Complex64, tolerance: f64) -> Result<SpotReport> {
    if omega.im <= 0.0 {
        return Err(Error::Check("omega must lie in the upper half plane".into()));
    }
    let [a0, _a1, a4, a5, a9, a3] = theta_numeric(omega);
    let y = [a0 * a4 * a5 * a9, -a3 * a4 * a5 * a9, -a0.powi(4), a0.powi(3) * a4, -a0 * a0 * a4 * a5];
    let scale = y.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let y: [Complex64; 5] = y.map(|c| c / scale);
    let nabla = eval_complex(&forms.nabla, &y);
    let c = eval_complex(&forms.c_form, &y);
    let j_curve = -c.powi(3) / (nabla.powi(11) * 1728.0);
    let pz = printed_z(&forms.s);
    let k = pz.k.to_f64();
    let jnum: UniPoly<Cyclotomic> = monic_from(&pz.quadratic).mul(&monic_from(&pz.cubic).pow(3));
    let coeffs: Vec<Complex64> = jnum.coeffs().iter().map(|c| c.complex_eval()).collect();
    let f = |z: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c) * k;
    let j = j_eisenstein(omega);
    let residuals: Vec<f64> = forms.f.iter().map(|fv| (f(eval_complex(fv, &y) / nabla) - j).norm()).collect();
    let unit = j.norm().max(1.0);
    let scaled: Vec<f64> = residuals.iter().map(|r| r / unit).collect();
    let passed = scaled.iter().all(|r| *r < tolerance) && (j_curve - j).norm() / unit < tolerance;
    Ok(SpotReport {
        omega: (omega.re, omega.im),
        tolerance,
        j_eisenstein: (j.re, j.im),
        j_curve: (j_curve.re, j_curve.im),
        residuals,
        scaled,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_terms_and_signs() {
        let t = ThetaFamily::build(400).unwrap();
        let lead = t.leading_terms().unwrap();
        let exps: Vec<i64> = lead.iter().map(|l| l.0 - 1).collect();
        assert_eq!(exps, vec![120, 0, 168, 48, 360, 24]);
        let signs: Vec<bool> = lead.iter().map(|l| l.1.is_negative()).collect();
        assert_eq!(signs, vec![false, false, false, true, true, true]);
        assert_eq!(t.ds_signs().unwrap(), [-1, 1, -1, -1, 1, 1]);
    }

    #[test]
    fn printed_a1_is_the_only_discrepancy() {
        let t = ThetaFamily::build(3000).unwrap();
        let idx: Vec<u8> = t.discrepancies.iter().map(|d| d.index).collect();
        assert_eq!(idx, vec![1]);
        assert!(t.check_printed().is_err());
    }

    #[test]
    fn general_formula_at_zero_is_twice_a0() {
        let n = 5000;
        let g = to_series(general_terms(0, n), n);
        let p = to_series(bilateral_terms(121, &PRINTED_THETA[0].1[0], n), n);
        assert_eq!(g, p.scale(&Rational::from(2)));
    }

    #[test]
    fn brioschi_and_control() {
        let mut t = ThetaFamily::build(1200).unwrap();
        assert!(verify_brioschi(&t, 1200).unwrap() >= 1200);
        let e = t.get(9).series.leading().unwrap().0;
        t.perturb(9, e);
        assert!(verify_brioschi(&t, 1200).is_err());
    }

    #[test]
    fn printed_a1_breaks_brioschi() {
        let t = ThetaFamily::build_printed(1500).unwrap();
        let r = brioschi_residual(&t).unwrap();
        assert!(r.series.vanishing_order() < 1500);
    }

    #[test]
    fn weights_are_enforced() {
        let t = ThetaFamily::build(100).unwrap();
        assert!(t.a[0].add(&t.a[0].pow(2)).is_err());
    }

    #[test]
    fn discriminant_identity() {
        let m = ModularScalars::build(264, 3000);
        assert!(m.discriminant_residual().unwrap().series.vanishing_order() >= 3000);
    }

    #[test]
    fn j_oracle_leading() {
        let m = ModularScalars::build(1, 6);
        let j = m.j1728().unwrap();
        let c: Vec<String> = (-1..3).map(|e| j.coeff_or_zero(e).to_string()).collect();
        assert_eq!(c, ["1/1", "744/1", "196884/1", "21493760/1"]);
    }

    #[test]
    fn j_at_i_is_one() {
        let j = j_eisenstein(Complex64::i());
        assert!((j - 1.0).norm() < 1e-12);
    }
}
