use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::matrix::row_reduce;
use super::poly::SparsePoly;
use super::series::LaurentSeries;
use crate::exact::{Field, Rational, Ring};
use crate::{Error, Result};

/// The five coordinate points of the curve, named by the variable that is 1 there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ChartLabel {
    I,
    IV,
    V,
    IX,
    III,
}

impl ChartLabel {
    pub const ALL: [ChartLabel; 5] = [ChartLabel::I, ChartLabel::IV, ChartLabel::V, ChartLabel::IX, ChartLabel::III];

    /// Slot of the coordinate that equals 1.
    pub fn unit_index(self) -> usize {
        self as usize
    }

    /// Slot of the coordinate used as local parameter.
    pub fn param_index(self) -> usize {
        (self.unit_index() + 3) % 5
    }

    pub fn from_unit_index(i: usize) -> Self {
        Self::ALL[i % 5]
    }

    pub fn unknown_indices(self) -> [usize; 3] {
        let (u, p) = (self.unit_index(), self.param_index());
        let v: Vec<usize> = (0..5).filter(|&i| i != u && i != p).collect();
        [v[0], v[1], v[2]]
    }
}

impl fmt::Display for ChartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for ChartLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(ChartLabel::I),
            "IV" => Ok(ChartLabel::IV),
            "V" => Ok(ChartLabel::V),
            "IX" => Ok(ChartLabel::IX),
            "III" => Ok(ChartLabel::III),
            _ => Err(Error::Parse(format!("unknown chart label {s:?}"))),
        }
    }
}

/// Leading terms at III, slot by slot: (exponent, sign).
pub const SEED_III: [(i64, i64); 5] = [(10, 1), (6, 1), (1, 1), (3, -1), (0, 1)];

/// A truncated parametrization of the curve at one of the five points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BranchChart<R: Ring> {
    pub label: ChartLabel,
    pub order: i64,
    pub series: [LaurentSeries<R>; 5],
}

impl<R: Ring> BranchChart<R> {
    /// The leading-term seed of the table of expansions, valid below t¹¹.
    pub fn seed(label: ChartLabel) -> Self {
        let k = (label.unit_index() + 1) % 5;
        let mut series: [LaurentSeries<R>; 5] = std::array::from_fn(|_| LaurentSeries::zero(11));
        for (i, &(e, sign)) in SEED_III.iter().enumerate() {
            series[(i + k) % 5] = LaurentSeries::from_terms([(e, R::from_i64(sign))], 11);
        }
        BranchChart { label, order: 11, series }
    }

    /// Carries the chart along y₁→y₄→y₅→y₉→y₃, `k` times.
    pub fn cyclic_shift(&self, k: usize) -> Self {
        let mut series: [LaurentSeries<R>; 5] = std::array::from_fn(|_| LaurentSeries::zero(self.order));
        for (i, s) in self.series.iter().enumerate() {
            series[(i + k) % 5] = s.clone();
        }
        BranchChart { label: ChartLabel::from_unit_index(self.label.unit_index() + k), order: self.order, series }
    }

    pub fn leading_exponents(&self) -> [i64; 5] {
        std::array::from_fn(|i| self.series[i].valuation())
    }

    pub fn truncate(&self, n: i64) -> Self {
        BranchChart { label: self.label, order: self.order.min(n), series: std::array::from_fn(|i| self.series[i].truncate(n)) }
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S + Copy) -> BranchChart<S> {
        BranchChart { label: self.label, order: self.order, series: std::array::from_fn(|i| self.series[i].map_coeffs(f)) }
    }
}

/// Substitutes five series into a polynomial, up to (not including) tᴺ.
///
/// Works for series of any valuation; when all valuations are nonnegative the
/// inputs are truncated to N first.
pub fn series_eval_at<R: Ring>(p: &SparsePoly<R>, ys: &[LaurentSeries<R>; 5], order: i64) -> Result<LaurentSeries<R>> {
    let nonneg = ys.iter().all(|s| s.valuation() >= 0);
    let ys: Vec<LaurentSeries<R>> = ys.iter().map(|s| if nonneg { s.truncate(order) } else { s.clone() }).collect();
    let mut cache: Vec<Vec<LaurentSeries<R>>> = ys.iter().map(|s| vec![LaurentSeries::one(), s.clone()]).collect();
    let mut acc = LaurentSeries::<R>::zero(super::series::EXACT);
    for (e, c) in p.terms() {
        let mut t = LaurentSeries::constant(c.clone());
        for i in 0..5 {
            let k = e[i] as usize;
            if k == 0 {
                continue;
            }
            while cache[i].len() <= k {
                let next = cache[i].last().expect("nonempty").mul(&ys[i]);
                let next = if nonneg { next.truncate(order) } else { next };
                cache[i].push(next);
            }
            t = t.mul(&cache[i][k]);
            if nonneg {
                t = t.truncate(order);
            }
        }
        acc = acc.add(&t);
    }
    if acc.prec() < order {
        return Err(Error::PrecisionExceeded { requested: order, achievable: acc.prec() });
    }
    Ok(acc.truncate(order))
}

pub fn series_eval<R: Ring>(p: &SparsePoly<R>, chart: &BranchChart<R>, order: i64) -> Result<LaurentSeries<R>> {
    if order > chart.order {
        return Err(Error::PrecisionExceeded { requested: order, achievable: chart.order });
    }
    series_eval_at(p, &chart.series, order)
}

/// Extends `seed` to order `target` so that every polynomial in `system` vanishes to that order.
///
/// The unit coordinate and the parameter coordinate are held fixed; the other
/// three are solved for `step` orders at a time (at most the current order,
/// so the linearization stays exact).
pub fn lift_branch<R: Field>(system: &[SparsePoly<R>], seed: &BranchChart<R>, target: i64, step: usize) -> Result<BranchChart<R>> {
    if step == 0 {
        return Err(Error::Check("step must be positive".into()));
    }
    let unknowns = seed.label.unknown_indices();
    let mut ys: [LaurentSeries<R>; 5] =
        std::array::from_fn(|i| LaurentSeries::from_terms(seed.series[i].terms().iter().cloned(), super::series::EXACT));
    let mut m = seed.order;

    for (i, f) in system.iter().enumerate() {
        let r = series_eval_at(f, &ys, m)?;
        if !r.is_zero() {
            return Err(Error::Check(format!("seed fails equation {i} at t^{}", r.valuation())));
        }
    }

    let jac: Vec<Vec<SparsePoly<R>>> = system.iter().map(|f| unknowns.iter().map(|&j| f.partial(j)).collect()).collect();

    while m < target {
        let s = (step as i64).min(m.max(1)).min(target - m);
        let resid: Vec<LaurentSeries<R>> = system.iter().map(|f| series_eval_at(f, &ys, m + s)).collect::<Result<_>>()?;
        let jser: Vec<Vec<LaurentSeries<R>>> =
            jac.iter().map(|row| row.iter().map(|d| series_eval_at(d, &ys, s)).collect::<Result<_>>()).collect::<Result<_>>()?;
        let mut found: Vec<[R; 3]> = Vec::with_capacity(s as usize);
        for r in 0..s {
            let mut a: Vec<Vec<R>> = (0..system.len())
                .map(|i| {
                    let mut rhs = resid[i].coeff_or_zero(m + r);
                    for k in 1..=r {
                        for j in 0..3 {
                            rhs.mul_acc(&jser[i][j].coeff_or_zero(k), &found[(r - k) as usize][j]);
                        }
                    }
                    let mut row: Vec<R> = (0..3).map(|j| jser[i][j].coeff_or_zero(0)).collect();
                    row.push(rhs.neg_ref());
                    row
                })
                .collect();
            let pivots = row_reduce(&mut a, 3);
            if pivots.len() < 3 {
                return Err(Error::RankDeficient { order: m + r, kernel_dim: 3 - pivots.len() });
            }
            if a.iter().skip(3).any(|row| !row[3].is_zero()) {
                return Err(Error::Inconsistent { order: m + r });
            }
            found.push(std::array::from_fn(|j| a[j][3].clone()));
        }
        for (r, c) in found.iter().enumerate() {
            for (j, &idx) in unknowns.iter().enumerate() {
                ys[idx] = ys[idx].add(&LaurentSeries::monomial(m + r as i64, c[j].clone()));
            }
        }
        m += s;
    }

    Ok(BranchChart { label: seed.label, order: target, series: std::array::from_fn(|i| ys[i].truncate(target)) })
}

#[derive(Serialize, Deserialize)]
struct ChartJson<R> {
    label: ChartLabel,
    #[serde(rename = "N")]
    order: i64,
    series: Vec<BTreeMap<String, R>>,
}

impl<R: Ring + Serialize + DeserializeOwned> BranchChart<R> {
    pub fn to_json(&self) -> String {
        let j = ChartJson {
            label: self.label,
            order: self.order,
            series: self.series.iter().map(|s| s.terms().iter().map(|(e, c)| (e.to_string(), c.clone())).collect()).collect(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: ChartJson<R> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if j.series.len() != 5 {
            return Err(Error::Parse(format!("expected 5 series, got {}", j.series.len())));
        }
        let mut series: [LaurentSeries<R>; 5] = std::array::from_fn(|_| LaurentSeries::zero(j.order));
        for (slot, map) in series.iter_mut().zip(&j.series) {
            let mut terms = Vec::with_capacity(map.len());
            for (k, c) in map {
                let e: i64 = k.parse().map_err(|_| Error::Parse(format!("bad exponent {k:?}")))?;
                if e >= j.order {
                    return Err(Error::Parse(format!("exponent {e} not below N = {}", j.order)));
                }
                terms.push((e, c.clone()));
            }
            *slot = LaurentSeries::from_terms(terms, j.order);
        }
        Ok(BranchChart { label: j.label, order: j.order, series })
    }
}

/// Seeds over Q for all five points.
pub fn rational_seeds() -> Vec<BranchChart<Rational>> {
    ChartLabel::ALL.iter().map(|&l| BranchChart::seed(l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels() {
        assert_eq!(ChartLabel::III.param_index(), 2);
        assert_eq!(ChartLabel::I.param_index(), 3);
        assert_eq!(ChartLabel::III.unknown_indices(), [0, 1, 3]);
        for l in ChartLabel::ALL {
            assert_eq!(l.to_string().parse::<ChartLabel>().unwrap(), l);
        }
        assert!("II".parse::<ChartLabel>().is_err());
    }

    #[test]
    fn seed_table() {
        let i: BranchChart<Rational> = BranchChart::seed(ChartLabel::I);
        assert_eq!(i.leading_exponents(), [0, 10, 6, 1, 3]);
        assert_eq!(BranchChart::<Rational>::seed(ChartLabel::III).cyclic_shift(1), i);
    }

    #[test]
    fn json_roundtrip() {
        let c: BranchChart<Rational> = BranchChart::seed(ChartLabel::IX);
        let j = c.to_json();
        let d = BranchChart::<Rational>::from_json(&j).unwrap();
        assert_eq!(d, c);
        assert_eq!(d.to_json(), j);
        assert!(BranchChart::<Rational>::from_json(r#"{"label":"I","N":2,"series":[{"5":"1/1"},{},{},{},{}]}"#).is_err());
        assert!(BranchChart::<Rational>::from_json(r#"{"label":"I","N":2,"series":[]}"#).is_err());
    }
}
