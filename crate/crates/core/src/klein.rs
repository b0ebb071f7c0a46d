//! The named forms ∇, H, H_ik, C, p, φ_v, f_v; the curve cut out by the
//! H_ik through its five branch charts; and both resolvents of degree 11.

use serde::Serialize;

use crate::algebra::{
    det5, lift_branch, minors4, mono, series_eval, span_coefficients, BranchChart, ChartLabel, LaurentSeries,
    Minor, PolyMatrix, SparsePoly, UniPoly,
};
use crate::covers::{self, Perm11};
use crate::exact::{Cyclotomic, Field, Rational, Ring};
use crate::group660::{self, generators, word_matrix};
use crate::{Error, Result};

type P = SparsePoly<Cyclotomic>;

/// Default truncation order for branch charts.
pub const DEFAULT_ORDER: i64 = 40;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

/// `a + b·s` with s the chosen square root of −11.
pub fn quad(s: &Cyclotomic, a: Rational, b: Rational) -> Cyclotomic {
    Cyclotomic::from_rational(&a).add_ref(&s.scale(&b))
}

fn cyc(e: [u16; 5]) -> P {
    mono::<Cyclotomic>(1, e).cyclic_sum()
}

/// The matrix whose determinant is H.
pub fn eq4_matrix() -> PolyMatrix<Cyclotomic> {
    // slots: 0 y1, 1 y4, 2 y5, 3 y9, 4 y3
    const LAYOUT: [[Option<usize>; 5]; 5] = [
        [Some(3), None, Some(2), Some(0), None],
        [None, Some(4), None, Some(3), Some(1)],
        [Some(2), None, Some(0), None, Some(4)],
        [Some(0), Some(3), None, Some(1), None],
        [None, Some(1), Some(4), None, Some(2)],
    ];
    LAYOUT.iter().map(|row| row.iter().map(|c| c.map_or_else(P::zero, P::var)).collect()).collect()
}

/// The three displayed generators of the H_ik system, as printed.
pub fn eq13_lines() -> [P; 3] {
    let m = |c: i64, e: [u16; 5]| mono::<Cyclotomic>(c, e);
    [
        m(1, [0, 1, 1, 1, 1]).add(&m(-1, [2, 0, 1, 0, 1])).add(&m(1, [2, 2, 0, 0, 0])).add(&m(1, [1, 0, 0, 0, 3])),
        m(1, [2, 0, 1, 1, 0]).add(&m(-1, [0, 2, 1, 0, 1])).add(&m(-1, [1, 0, 0, 1, 2])),
        m(1, [0, 3, 0, 1, 0]).add(&m(1, [0, 0, 1, 3, 0])).add(&m(1, [1, 0, 0, 0, 3])),
    ]
}

/// Printed linear form p₀ (exponent quadruples a, b, c, d of 2(ρᵃ − ρᵇ) + (ρᶜ − ρᵈ)), over √−11.
pub const P0_PRINTED: [[i64; 4]; 5] = [[7, 1, 9, 10], [6, 4, 3, 7], [2, 5, 1, 6], [8, 9, 4, 2], [10, 3, 5, 8]];

pub fn p0_printed() -> P {
    let g_inv = Cyclotomic::sqrt_m11().inv().expect("nonzero");
    let r = Cyclotomic::rho;
    P::from_terms(P0_PRINTED.iter().enumerate().map(|(i, &[a, b, c, d])| {
        let mut e = [0; 5];
        e[i] = 1;
        let coeff = r(a).sub_ref(&r(b)).scale_i64(2).add_ref(&r(c).sub_ref(&r(d)));
        (e, coeff.mul_ref(&g_inv))
    }))
}

/// All named forms, for one choice of the sign of √−11.
#[derive(Clone, Debug)]
pub struct NamedForms {
    pub conjugate: bool,
    /// The square root of −11 used in the printed constants.
    pub s: Cyclotomic,
    pub nabla: P,
    pub h_matrix: PolyMatrix<Cyclotomic>,
    pub h: P,
    pub minors: Vec<Minor<Cyclotomic>>,
    pub c_form: P,
    /// Factor taking Σ_G (g·y₁)¹¹ to C.
    pub c_normalization: Rational,
    /// p∞ followed by p₀ … p₄.
    pub p: Vec<P>,
    pub phi: Vec<P>,
    pub f: Vec<P>,
    /// Generators of the subgroup of order 60 fixing φ₀ and f₀.
    pub stabilizer: [group660::ProjMatrix5; 2],
}

impl NamedForms {
    pub fn build(conjugate: bool) -> Result<Self> {
        let g = Cyclotomic::sqrt_m11();
        let s = if conjugate { g.neg_ref() } else { g };
        let nabla = cyc([2, 0, 0, 1, 0]);
        let h_matrix = eq4_matrix();
        let h = det5(&h_matrix)?;
        let minors = minors4(&h_matrix)?;
        let (c_form, c_normalization) = group660::c_form();

        let p_inf = (0..5).fold(P::zero(), |acc, i| acc.add(&P::var(i)));
        // the second system belongs to the Galois-conjugate subgroup of order 60
        let v = word_matrix("S^-1 T S")?;
        let v = if conjugate { v.galois_conj(2)? } else { v };
        let p0 = v.act(&p_inf);
        let mut p = vec![p_inf];
        p.extend((0..5).map(|k| p0.cyclic_shift(k)));

        let half_m1_s = quad(&s, q(-1, 2), q(1, 2));
        let phi0 = cyc([2, 0, 0, 0, 0]).sub(&cyc([1, 0, 0, 1, 0])).add(&cyc([1, 1, 0, 0, 0]).scale(&half_m1_s));
        let hp = quad(&s, q(1, 2), q(1, 2));
        let one_s = quad(&s, q(1, 1), q(1, 1));
        let f0 = cyc([3, 0, 0, 0, 0])
            .add(&cyc([2, 0, 0, 0, 1]).scale(&Cyclotomic::from_i64(3)))
            .sub(&cyc([1, 1, 0, 1, 0]).scale(&Cyclotomic::from_i64(3)))
            .add(&cyc([2, 0, 1, 0, 0]).scale(&hp))
            .sub(&cyc([1, 1, 1, 0, 0]).scale(&hp))
            .sub(&cyc([2, 1, 0, 0, 0]).scale(&one_s));
        let phi = (0..11).map(|v| phi0.twist(v)).collect();
        let f = (0..11).map(|v| f0.twist(v)).collect();
        let stabilizer = [group660::generators().2, v];
        Ok(NamedForms { conjugate, s, nabla, h_matrix, h, minors, c_form, c_normalization, p, phi, f, stabilizer })
    }

    /// The H_ik with rational coefficients, for lifting over Q.
    pub fn rational_minors(&self) -> Vec<SparsePoly<Rational>> {
        self.minors.iter().map(|m| m.poly.map_coeffs(|c| c.as_rational().expect("rational minor"))).collect()
    }

    pub fn sum_p_pow(&self, k: u32) -> P {
        self.p.iter().fold(P::zero(), |acc, x| acc.add(&x.pow(k)))
    }

    /// `(−1 + s)/12`, the factor with φ₀ = factor·Σp².
    pub fn phi_factor(&self) -> Cyclotomic {
        quad(&self.s, q(-1, 12), q(1, 12))
    }

    /// `(λ, μ)` with f₀ = λ·Σp³ + μ·∇, λ fixed by the y₁³ coefficient.
    pub fn f_decomposition(&self) -> Option<(Cyclotomic, Cyclotomic)> {
        let sp3 = self.sum_p_pow(3);
        let e = [3, 0, 0, 0, 0];
        let lambda = self.f[0].coeff(&e).div_ref(&sp3.coeff(&e)).ok()?;
        let rest = self.f[0].sub(&sp3.scale(&lambda));
        let mu = rest.scalar_multiple_of(&self.nabla)?;
        Some((lambda, mu))
    }
}

/// How a printed line of the H_ik system relates to the computed minors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LineMatch {
    /// A cyclic shift of the line is a scalar multiple of one minor.
    Minor { row: usize, col: usize, shift: usize, scalar: String },
    /// The line lies in the span of the fifteen minors but matches none singly.
    Span { coefficients: Vec<String> },
    Outside,
}

pub fn match_eq13(forms: &NamedForms) -> Vec<LineMatch> {
    let basis: Vec<P> = forms.minors.iter().map(|m| m.poly.clone()).collect();
    eq13_lines()
        .iter()
        .map(|line| {
            for shift in 0..5 {
                let l = line.cyclic_shift(shift);
                for m in &forms.minors {
                    if let Some(k) = l.scalar_multiple_of(&m.poly) {
                        return LineMatch::Minor { row: m.row, col: m.col, shift, scalar: k.to_string() };
                    }
                }
            }
            match span_coefficients(&basis, line) {
                Some(c) => LineMatch::Span { coefficients: c.iter().map(ToString::to_string).collect() },
                None => LineMatch::Outside,
            }
        })
        .collect()
}

/// Whether the fifteen minors are permuted, up to scalar, by the cyclic relabeling.
pub fn minors_cyclically_closed(forms: &NamedForms) -> bool {
    forms.minors.iter().all(|m| {
        let shifted = m.poly.cyclic_shift(1);
        forms.minors.iter().any(|n| shifted.scalar_multiple_of(&n.poly).is_some())
    })
}

/// Lifts the five seeds to order `order`, `step` orders at a time.
pub fn lift_charts(forms: &NamedForms, order: i64, step: usize) -> Result<Vec<BranchChart<Rational>>> {
    let system = forms.rational_minors();
    ChartLabel::ALL.iter().map(|&l| lift_branch(&system, &BranchChart::seed(l), order, step)).collect()
}

pub fn to_cyclotomic(chart: &BranchChart<Rational>) -> BranchChart<Cyclotomic> {
    chart.map_coeffs(Cyclotomic::from_rational)
}

/// Vanishing orders of all H_ik along a chart; each should reach the chart order.
pub fn hik_orders(forms: &NamedForms, chart: &BranchChart<Rational>) -> Result<Vec<i64>> {
    forms.rational_minors().iter().map(|m| Ok(series_eval(m, chart, chart.order)?.vanishing_order())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCertificate {
    pub degree: i64,
    /// Per variable, the sum of its leading orders over the four charts where it vanishes.
    pub sums: [i64; 5],
    pub unit_coordinates_ok: bool,
    pub nabla_orders: Vec<i64>,
}

/// Intersection number of the curve with a coordinate hyperplane.
pub fn curve_degree_certificate(forms: &NamedForms, charts: &[BranchChart<Rational>]) -> Result<DegreeCertificate> {
    if charts.len() != 5 {
        return Err(Error::Check("five charts required".into()));
    }
    let mut sums = [0i64; 5];
    let mut unit_ok = true;
    for c in charts {
        let u = c.label.unit_index();
        let units: Vec<usize> = (0..5).filter(|&i| c.series[i].terms() == [(0, Rational::one())]).collect();
        unit_ok &= units == [u];
        for (j, s) in sums.iter_mut().enumerate() {
            if j != u {
                *s += c.series[j].valuation();
            }
        }
    }
    if sums.iter().any(|&s| s != sums[0]) {
        return Err(Error::Check(format!("hyperplane sections disagree: {sums:?}")));
    }
    let nabla = forms.nabla.map_coeffs(|c| c.as_rational().expect("rational"));
    let nabla_orders = charts.iter().map(|c| Ok(series_eval(&nabla, c, c.order)?.vanishing_order())).collect::<Result<_>>()?;
    Ok(DegreeCertificate { degree: sums[0], sums, unit_coordinates_ok: unit_ok, nabla_orders })
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusCertificate {
    pub genus: Rational,
    pub without_third_branching: Rational,
    pub third_branching_three: Rational,
}

pub fn genus_certificate() -> GenusCertificate {
    GenusCertificate {
        genus: covers::regular_genus(660, &[3, 11, 2]),
        without_third_branching: covers::regular_genus(660, &[3, 11]),
        third_branching_three: covers::regular_genus(660, &[3, 11, 3]),
    }
}

/// The resolvent J = k·(quadratic)·(cubic)³, J − 1 = k·(cubic′)·(quartic)².
#[derive(Clone, Debug)]
pub struct ResolventZ {
    pub chart: ChartLabel,
    pub order: i64,
    /// C³/∇¹¹ as a monic polynomial of degree 11 in z.
    pub p: UniPoly<Cyclotomic>,
    /// A, B
    pub quadratic: [Cyclotomic; 2],
    /// a, b, c
    pub cubic: [Cyclotomic; 3],
    /// A, B, Γ on the J − 1 side
    pub cubic_b: [Cyclotomic; 3],
    /// α, β, γ, δ
    pub quartic: [Cyclotomic; 4],
    /// k from the constant P mod (quartic)
    pub k: Cyclotomic,
    /// k from the constant P mod (quartic)²
    pub k_second: Cyclotomic,
    /// Lowest and highest exponent at which P(z) = C³/∇¹¹ was matched.
    pub matched: (i64, i64),
}

impl ResolventZ {
    pub fn j_numerator(&self) -> UniPoly<Cyclotomic> {
        monic_from(&self.quadratic).mul(&monic_from(&self.cubic).pow(3))
    }

    pub fn j1_numerator(&self) -> UniPoly<Cyclotomic> {
        monic_from(&self.cubic_b).mul(&monic_from(&self.quartic).pow(2))
    }

    /// Equations used minus unknowns determined.
    pub fn margin(&self) -> i64 {
        self.matched.1 - self.matched.0 + 1 - 12
    }
}

/// `zⁿ + c₀zⁿ⁻¹ + … + cₙ₋₁`
pub fn monic_from(c: &[Cyclotomic]) -> UniPoly<Cyclotomic> {
    let mut v: Vec<Cyclotomic> = c.iter().rev().cloned().collect();
    v.push(Cyclotomic::one());
    UniPoly::new(v)
}

/// z = f₀/∇ and C³/∇¹¹ along a chart.
pub fn z_and_w(forms: &NamedForms, chart: &BranchChart<Cyclotomic>, v: usize) -> Result<(LaurentSeries<Cyclotomic>, LaurentSeries<Cyclotomic>)> {
    let n = chart.order;
    let nabla = series_eval(&forms.nabla, chart, n)?;
    let f = series_eval(&forms.f[v], chart, n)?;
    let c = series_eval(&forms.c_form, chart, n)?;
    let z = f.div(&nabla)?;
    let w = c.pow(3).div(&nabla.pow(11))?;
    Ok((z, w))
}

/// Solves C³/∇¹¹ = P(z) order by order and factors P.
pub fn derive_resolvent_z(forms: &NamedForms, chart: &BranchChart<Cyclotomic>) -> Result<ResolventZ> {
    let (z, w) = z_and_w(forms, chart, 0)?;
    let vz = z.valuation();
    if vz >= 0 {
        return Err(Error::Check("z has no pole at this chart".into()));
    }
    let zp: Vec<LaurentSeries<Cyclotomic>> = (0..=11).map(|i| z.pow(i)).collect();
    let lo = 11 * vz;
    let hi = zp.iter().map(LaurentSeries::prec).chain([w.prec()]).min().expect("nonempty") - 1;
    // the coefficient of z^m first enters at order m·vz
    let mut e = vec![Cyclotomic::zero(); 12];
    for m in (0..=11).rev() {
        let ord = m as i64 * vz;
        let mut rhs = w.coeff(ord)?;
        for i in m + 1..=11 {
            rhs.sub_assign_ref(&e[i].mul_ref(&zp[i].coeff(ord)?));
        }
        e[m] = rhs.div_ref(&zp[m].coeff(ord)?)?;
    }
    if !e[11].is_one() {
        return Err(Error::Check(format!("leading coefficient {} is not 1", e[11])));
    }
    let p = UniPoly::new(e.clone());
    let mut resid = w.neg();
    for (i, c) in e.iter().enumerate() {
        resid = resid.add(&zp[i].scale(c));
    }
    let resid = resid.truncate(hi + 1);
    if let Some(&(ord, _)) = resid.leading() {
        return Err(Error::Inconsistent { order: ord });
    }

    let dp = p.derivative();
    let g = p.gcd(&dp).gcd(&dp.derivative());
    if g.degree() != Some(3) {
        return Err(Error::Check(format!("repeated factor has degree {:?}", g.degree())));
    }
    let (quad_part, r) = p.div_rem(&g.pow(3))?;
    if !r.is_zero() || quad_part.degree() != Some(2) {
        return Err(Error::Check("P is not quadratic times a cube".into()));
    }
    let (h, r) = dp.div_rem(&g.pow(2))?;
    if !r.is_zero() {
        return Err(Error::Check("P′ is not divisible by the square of the cubic".into()));
    }
    let h = h.monic();
    if h.degree() != Some(4) {
        return Err(Error::Check("derivative cofactor is not quartic".into()));
    }
    let (_, c1) = p.div_rem(&h)?;
    let (cubic_b, c2) = p.div_rem(&h.pow(2))?;
    let constant = |u: &UniPoly<Cyclotomic>| -> Result<Cyclotomic> {
        match u.degree() {
            None => Ok(Cyclotomic::zero()),
            Some(0) => Ok(u.coeff(0)),
            Some(_) => Err(Error::Check(format!("remainder {u} is not constant"))),
        }
    };
    let (c1, c2) = (constant(&c1)?, constant(&c2)?);
    let cubic_b = cubic_b.monic();
    let tail = |u: &UniPoly<Cyclotomic>, n: usize| -> Vec<Cyclotomic> { (0..n).rev().map(|i| u.coeff(i)).collect() };
    let to3 = |v: Vec<Cyclotomic>| -> [Cyclotomic; 3] { [v[0].clone(), v[1].clone(), v[2].clone()] };
    let qd = tail(&quad_part, 2);
    Ok(ResolventZ {
        chart: chart.label,
        order: chart.order,
        quadratic: [qd[0].clone(), qd[1].clone()],
        cubic: to3(tail(&g, 3)),
        cubic_b: to3(tail(&cubic_b, 3)),
        quartic: {
            let v = tail(&h, 4);
            [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
        },
        k: c1.inv()?,
        k_second: c2.inv()?,
        p,
        matched: (lo, hi),
    })
}

/// The printed constants of the z-resolvent, for the given sign of √−11.
pub struct PrintedZ {
    pub quadratic: [Cyclotomic; 2],
    pub cubic: [Cyclotomic; 3],
    pub cubic_b: [Cyclotomic; 3],
    pub quartic: [Cyclotomic; 4],
    pub k: Rational,
}

pub fn printed_z(s: &Cyclotomic) -> PrintedZ {
    let c = |a: (i64, i64), b: (i64, i64)| quad(s, q(a.0, a.1), q(b.0, b.1));
    PrintedZ {
        quadratic: [c((-3, 1), (0, 1)), c((5, 1), (-1, 1))],
        cubic: [c((1, 1), (0, 1)), c((-3, 2), (-3, 2)), c((7, 2), (-1, 2))],
        cubic_b: [c((4, 1), (0, 1)), c((7, 2), (-5, 2)), c((4, 1), (-6, 1))],
        quartic: [c((-2, 1), (0, 1)), c((3, 2), (-3, 2)), c((5, 1), (1, 1)), c((-15, 2), (-3, 2))],
        k: q(-1, 1728),
    }
}

/// The printed J : J − 1 : 1 identity as a single polynomial, J-side minus (J−1)-side.
pub fn eq20_difference(s: &Cyclotomic) -> UniPoly<Cyclotomic> {
    let pz = printed_z(s);
    let lhs = monic_from(&pz.quadratic).mul(&monic_from(&pz.cubic).pow(3));
    let rhs = monic_from(&pz.cubic_b).mul(&monic_from(&pz.quartic).pow(2));
    lhs.sub(&rhs)
}

/// Coefficients α … ζ of φ¹¹ + α∇²φ⁸ + β∇⁴φ⁵ + γ∇Cφ⁴ + δ∇⁶φ² + ε∇³Cφ + ζC² = 0.
#[derive(Clone, Debug)]
pub struct ResolventXi {
    pub chart: ChartLabel,
    pub order: i64,
    pub coeffs: [Cyclotomic; 6],
    /// Number of orders matched for six unknowns.
    pub equations: usize,
}

/// (∇-power, C-power, φ-power) of the six undetermined terms.
pub const XI_TERMS: [(u32, u32, u32); 6] = [(2, 0, 8), (4, 0, 5), (1, 1, 4), (6, 0, 2), (3, 1, 1), (0, 2, 0)];

pub fn derive_resolvent_xi(forms: &NamedForms, chart: &BranchChart<Cyclotomic>) -> Result<ResolventXi> {
    let n = chart.order;
    let nabla = series_eval(&forms.nabla, chart, n)?;
    let c = series_eval(&forms.c_form, chart, n)?;
    let phi = series_eval(&forms.phi[0], chart, n)?;
    let cols: Vec<LaurentSeries<Cyclotomic>> =
        XI_TERMS.iter().map(|&(a, b, k)| nabla.pow(a).mul(&c.pow(b)).mul(&phi.pow(k))).collect();
    let lead = phi.pow(11);
    let top = cols.iter().map(LaurentSeries::prec).chain([lead.prec()]).min().expect("nonempty");
    let lo = cols.iter().map(LaurentSeries::valuation).chain([lead.valuation()]).min().expect("nonempty");
    let mut a: Vec<Vec<Cyclotomic>> = (lo..top)
        .map(|o| {
            let mut row: Vec<Cyclotomic> = cols.iter().map(|s| s.coeff_or_zero(o)).collect();
            row.push(lead.coeff_or_zero(o).neg_ref());
            row
        })
        .collect();
    let equations = a.len();
    let pivots = crate::algebra::row_reduce(&mut a, 6);
    if pivots.len() < 6 {
        return Err(Error::RankDeficient { order: top, kernel_dim: 6 - pivots.len() });
    }
    if let Some(i) = a.iter().skip(6).position(|row| !row[6].is_zero()) {
        return Err(Error::Inconsistent { order: lo + 6 + i as i64 });
    }
    Ok(ResolventXi {
        chart: chart.label,
        order: n,
        coeffs: std::array::from_fn(|i| a[i][6].clone()),
        equations,
    })
}

pub fn printed_xi(s: &Cyclotomic) -> [Cyclotomic; 6] {
    let c = |a: (i64, i64), b: (i64, i64)| quad(s, q(a.0, a.1), q(b.0, b.1));
    [c((-22, 1), (0, 1)), c((99, 1), (-22, 1)), c((11, 1), (0, 1)), c((0, 1), (88, 1)), c((-33, 2), (11, 2)), c((-1, 1), (0, 1))]
}

/// One term of the ξ-equation: coefficient · (12g₂/∛Δ)^g · ξ^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiTerm {
    pub xi_power: u32,
    pub coeff: Cyclotomic,
    pub g_power: u32,
}

/// Passes to ξ = φ/∇^{2/3} using C/∇^{11/3} = −12g₂/∛Δ.
pub fn eq25_terms(xi: &ResolventXi) -> Vec<XiTerm> {
    let mut out = vec![XiTerm { xi_power: 11, coeff: Cyclotomic::one(), g_power: 0 }];
    for (&(_, cp, k), c) in XI_TERMS.iter().zip(&xi.coeffs) {
        let sign = if cp % 2 == 1 { c.neg_ref() } else { c.clone() };
        out.push(XiTerm { xi_power: k, coeff: sign, g_power: cp });
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    pub v: usize,
    pub order: i64,
    /// Vanishing order of φ³ − (f² − 3f∇ + (5 − s)∇²).
    pub homogenized: i64,
    /// Vanishing order of φ³ − (f² − 3f∇ + (5 − s)), as printed.
    pub printed: i64,
    /// Vanishing order of ξ³ − (z² − 3z + 5 − s), and its precision.
    pub eq27: i64,
    pub eq27_prec: i64,
}

impl BridgeReport {
    pub fn holds(&self) -> bool {
        self.homogenized >= self.order && self.eq27 >= self.eq27_prec && self.printed < self.order
    }
}

pub fn verify_bridge_26_27(forms: &NamedForms, chart: &BranchChart<Cyclotomic>, v: usize) -> Result<BridgeReport> {
    let n = chart.order;
    let nabla = series_eval(&forms.nabla, chart, n)?;
    let f = series_eval(&forms.f[v], chart, n)?;
    let phi = series_eval(&forms.phi[v], chart, n)?;
    let k = quad(&forms.s, q(5, 1), q(-1, 1));
    let phi3 = phi.pow(3);
    let base = f.pow(2).sub(&f.mul(&nabla).scale(&Cyclotomic::from_i64(3)));
    let homog = phi3.sub(&base.add(&nabla.pow(2).scale(&k)));
    let printed = phi3.sub(&base.add(&LaurentSeries::constant(k.clone()))).truncate(n);
    let nabla2_inv = nabla.pow(2).inv()?;
    let xi3 = phi3.mul(&nabla2_inv);
    let z = f.mul(&nabla.inv()?);
    let eq27 = xi3.sub(&z.pow(2).sub(&z.scale(&Cyclotomic::from_i64(3))).add(&LaurentSeries::constant(k)));
    Ok(BridgeReport {
        v,
        order: n,
        homogenized: homog.vanishing_order(),
        printed: printed.vanishing_order(),
        eq27: eq27.vanishing_order(),
        eq27_prec: eq27.prec(),
    })
}

/// Permutations of the eleven f_v induced by S and T.
pub fn z_permutations(forms: &NamedForms) -> Result<(Perm11, Perm11)> {
    let (s, t, _) = generators();
    let induced = |m: &group660::ProjMatrix5| -> Result<Perm11> {
        let mut images = Vec::with_capacity(11);
        for fv in &forms.f {
            let moved = m.act(fv);
            let w = forms.f.iter().position(|fw| *fw == moved).ok_or_else(|| Error::Check("f_v not permuted".into()))?;
            images.push(w + 1);
        }
        Perm11::from_images(&images)
    };
    Ok((induced(&s)?, induced(&t)?))
}

/// Relabels sheets so that the 11-cycle `sigma` becomes i ↦ i + 1, and applies that to `p`.
fn relabel_along(sigma: &Perm11, p: &Perm11) -> Result<Perm11> {
    let mut pos = [0usize; 11];
    let mut x = 0;
    for k in 0..11 {
        pos[x] = k;
        x = sigma.apply(x);
    }
    if x != 0 || sigma.cycle_count() != 1 {
        return Err(Error::Check("S does not act as an 11-cycle on the z_v".into()));
    }
    let mut inv = [0usize; 11];
    for (i, &k) in pos.iter().enumerate() {
        inv[k] = i;
    }
    let images: Vec<usize> = (0..11).map(|k| pos[p.apply(inv[k])] + 1).collect();
    Perm11::from_images(&images)
}

/// The cover class of the action of S and T on z₀ … z₁₀, with S over ∞ and T over 1.
///
/// The loop order of the census fixes an orientation; if the induced triple
/// does not fit it, S is replaced by S⁻¹.
pub fn z_cover_class(forms: &NamedForms) -> Result<covers::CoverClass> {
    let (s, t) = z_permutations(forms)?;
    for sigma in [s, s.inverse()] {
        let t1 = relabel_along(&sigma, &t)?;
        let sigma_0 = covers::compose(&t1, &Perm11::long_cycle()).inverse();
        if sigma_0.cycle_type() == covers::profile_0() && t1.cycle_type() == covers::profile_1() {
            return covers::classify(&[t1]).pop().ok_or_else(|| Error::Check("empty classification".into()));
        }
    }
    Err(Error::Check("the z_v permutations do not have the census profile".into()))
}
