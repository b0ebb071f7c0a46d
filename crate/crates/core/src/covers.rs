//! Eleven-sheeted covers of the J-sphere: the permutation kernel, the census
//! of covers with ramification 3³1² over 0, 2⁴1³ over 1 and an 11-cycle over
//! ∞, their monodromy groups, and the regular-branching genus formula.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exact::{Rational, Ring};
use crate::{Error, Result};

pub const DEGREE: usize = 11;

/// Element orders permitted in the group of 660.
pub const ALLOWED_PERIODS: [u64; 6] = [1, 2, 3, 5, 6, 11];

/// A permutation of eleven sheets. Stored zero-based, shown one-based.
///
/// Products read left to right: `compose(p, q)` applies `p` first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm11([u8; DEGREE]);

impl Perm11 {
    pub fn identity() -> Self {
        Perm11(std::array::from_fn(|i| i as u8))
    }

    /// The 11-cycle (1 2 … 11).
    pub fn long_cycle() -> Self {
        Perm11(std::array::from_fn(|i| ((i + 1) % DEGREE) as u8))
    }

    /// From one-line notation with one-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        if images.len() != DEGREE {
            return Err(Error::Parse(format!("expected {DEGREE} images, got {}", images.len())));
        }
        let mut seen = [false; DEGREE];
        let mut p = [0u8; DEGREE];
        for (i, &x) in images.iter().enumerate() {
            if !(1..=DEGREE).contains(&x) || seen[x - 1] {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
            seen[x - 1] = true;
            p[i] = (x - 1) as u8;
        }
        Ok(Perm11(p))
    }

    /// One-based images.
    pub fn images(&self) -> [usize; DEGREE] {
        std::array::from_fn(|i| self.0[i] as usize + 1)
    }

    /// Zero-based image of a zero-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn inverse(&self) -> Self {
        let mut r = [0u8; DEGREE];
        for (i, &x) in self.0.iter().enumerate() {
            r[x as usize] = i as u8;
        }
        Perm11(r)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(), |acc, _| compose(&acc, self))
    }

    /// `g⁻¹ · self · g`
    pub fn conjugate_by(&self, g: &Perm11) -> Self {
        compose(&compose(&g.inverse(), self), g)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut seen = [false; DEGREE];
        let mut lens = Vec::new();
        for i in 0..DEGREE {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = self.0[j] as usize;
                len += 1;
            }
            lens.push(len);
        }
        CycleType::new(lens)
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().order()
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_type().0.len()
    }
}

impl fmt::Display for Perm11 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Perm11 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Serialize for Perm11 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm11 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm11::from_images(&v).map_err(serde::de::Error::custom)
    }
}

/// `(p·q)(i) = q(p(i))`
pub fn compose(p: &Perm11, q: &Perm11) -> Perm11 {
    Perm11(std::array::from_fn(|i| q.0[p.0[i] as usize]))
}

/// Cycle lengths, largest first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType(pub Vec<usize>);

impl CycleType {
    pub fn new(mut lens: Vec<usize>) -> Self {
        lens.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(lens)
    }

    pub fn order(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, &l| acc.lcm(&(l as u64)))
    }

    /// Lengths of the nontrivial cycles, in the usual cycle-type notation.
    pub fn nontrivial(&self) -> Vec<usize> {
        self.0.iter().copied().filter(|&l| l > 1).collect()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nontrivial().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One conjugacy class of covers, represented by its canonical member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverClass {
    pub sigma_inf: Perm11,
    pub sigma_0: Perm11,
    pub sigma_1: Perm11,
    /// Number of raw solutions in this class.
    pub orbit_size: usize,
}

impl CoverClass {
    fn from_sigma_1(sigma_1: Perm11, orbit_size: usize) -> Self {
        let sigma_inf = Perm11::long_cycle();
        CoverClass { sigma_0: sigma_0_for(&sigma_1, &sigma_inf), sigma_inf, sigma_1, orbit_size }
    }

    /// Loop product around 0, 1, ∞ in that order.
    pub fn loop_product(&self) -> Perm11 {
        compose(&compose(&self.sigma_0, &self.sigma_1), &self.sigma_inf)
    }

    /// Genus of the covering surface by Riemann–Hurwitz.
    pub fn genus(&self) -> i64 {
        let ram: usize = [self.sigma_0, self.sigma_1, self.sigma_inf].iter().map(|p| DEGREE - p.cycle_count()).sum();
        // 2 − 2g = 2·11 − ram
        (ram as i64 - 2 * DEGREE as i64 + 2) / 2
    }

    pub fn is_transitive(&self) -> bool {
        orbit_of(0, &[self.sigma_1, self.sigma_inf]).len() == DEGREE
    }

    /// T·S³ with T the loop around 1 and S the loop around ∞.
    pub fn ts3(&self) -> Perm11 {
        compose(&self.sigma_1, &self.sigma_inf.pow(3))
    }

    pub fn monodromy_order(&self) -> u64 {
        group_order(&[self.sigma_inf, self.sigma_1])
    }

    pub fn period_criterion(&self) -> Verdict {
        let ts3 = self.ts3();
        let order = ts3.order();
        if ALLOWED_PERIODS.contains(&order) {
            Verdict::Accept
        } else {
            Verdict::Reject { witness: ts3.cycle_type(), order, ts3 }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject { witness: CycleType, order: u64, ts3: Perm11 },
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

fn sigma_0_for(sigma_1: &Perm11, sigma_inf: &Perm11) -> Perm11 {
    compose(sigma_1, sigma_inf).inverse()
}

pub fn profile_0() -> CycleType {
    CycleType(vec![3, 3, 3, 1, 1])
}

pub fn profile_1() -> CycleType {
    CycleType(vec![2, 2, 2, 2, 1, 1, 1])
}

/// Every involution of S₁₁ with exactly four transpositions.
pub fn involutions_2_4() -> Vec<Perm11> {
    fn rec(avail: &[u8], pairs: &mut Vec<(u8, u8)>, out: &mut Vec<Perm11>) {
        if pairs.len() == 4 {
            let mut p = Perm11::identity();
            for &(a, b) in pairs.iter() {
                p.0[a as usize] = b;
                p.0[b as usize] = a;
            }
            out.push(p);
            return;
        }
        if avail.len() < 2 * (4 - pairs.len()) {
            return;
        }
        let (a, rest) = (avail[0], &avail[1..]);
        for j in 0..rest.len() {
            let mut next: Vec<u8> = rest.to_vec();
            let b = next.remove(j);
            pairs.push((a, b));
            rec(&next, pairs, out);
            pairs.pop();
        }
        rec(rest, pairs, out);
    }
    let pts: Vec<u8> = (0..DEGREE as u8).collect();
    let mut out = Vec::new();
    rec(&pts, &mut Vec::new(), &mut out);
    out
}

/// All raw solutions σ₁ with σ_∞ = (1 2 … 11) fixed.
pub fn raw_solutions() -> Vec<Perm11> {
    let s = Perm11::long_cycle();
    involutions_2_4().into_iter().filter(|t| sigma_0_for(t, &s).cycle_type() == profile_0()).collect()
}

/// The σ_∞-conjugation orbit of a solution σ₁.
pub fn conjugation_orbit(sigma_1: &Perm11) -> Vec<Perm11> {
    let s = Perm11::long_cycle();
    let mut g = Perm11::identity();
    let mut orbit = Vec::with_capacity(DEGREE);
    for _ in 0..DEGREE {
        orbit.push(sigma_1.conjugate_by(&g));
        g = compose(&g, &s);
    }
    orbit
}

/// Census of covers up to conjugation by the centralizer of σ_∞, sorted by
/// canonical representative.
pub fn enumerate_covers() -> Vec<CoverClass> {
    classify(&raw_solutions())
}

/// Groups raw solutions into conjugation classes.
pub fn classify(solutions: &[Perm11]) -> Vec<CoverClass> {
    let mut classes: BTreeMap<Perm11, usize> = BTreeMap::new();
    for t in solutions {
        let rep = conjugation_orbit(t).into_iter().min().expect("nonempty orbit");
        *classes.entry(rep).or_default() += 1;
    }
    classes.into_iter().map(|(rep, n)| CoverClass::from_sigma_1(rep, n)).collect()
}

fn orbit_of(x: usize, gens: &[Perm11]) -> Vec<usize> {
    let mut seen = [false; DEGREE];
    seen[x] = true;
    let mut out = vec![x];
    let mut i = 0;
    while i < out.len() {
        let y = out[i];
        for g in gens {
            let z = g.apply(y);
            if !seen[z] {
                seen[z] = true;
                out.push(z);
            }
        }
        i += 1;
    }
    out
}

/// One level of a stabilizer chain: the orbit of the base point under the
/// strong generators fixing all earlier base points, with coset
/// representatives `u[b]` sending the base point to `b`.
struct Level {
    base: usize,
    transversal: [Option<Perm11>; DEGREE],
}

impl Level {
    fn orbit_len(&self) -> usize {
        self.transversal.iter().filter(|u| u.is_some()).count()
    }
}

struct StabilizerChain {
    base: Vec<usize>,
    strong: Vec<Perm11>,
    levels: Vec<Level>,
}

impl StabilizerChain {
    fn level_gens(&self, i: usize) -> Vec<Perm11> {
        self.strong.iter().copied().filter(|g| self.base[..i].iter().all(|&b| g.apply(b) == b)).collect()
    }

    fn rebuild(&mut self) {
        self.levels = (0..self.base.len())
            .map(|i| {
                let gens = self.level_gens(i);
                let b0 = self.base[i];
                let mut transversal: [Option<Perm11>; DEGREE] = [None; DEGREE];
                transversal[b0] = Some(Perm11::identity());
                let mut queue = VecDeque::from([b0]);
                while let Some(y) = queue.pop_front() {
                    let uy = transversal[y].expect("visited");
                    for g in &gens {
                        let z = g.apply(y);
                        if transversal[z].is_none() {
                            transversal[z] = Some(compose(&uy, g));
                            queue.push_back(z);
                        }
                    }
                }
                Level { base: b0, transversal }
            })
            .collect();
    }

    /// Strips `h` down the chain starting at level `from`; returns the
    /// residue and the level where stripping stopped.
    fn sift(&self, mut h: Perm11, from: usize) -> (Perm11, usize) {
        for (i, lvl) in self.levels.iter().enumerate().skip(from) {
            match lvl.transversal[h.apply(lvl.base)] {
                Some(u) => h = compose(&h, &u.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    /// Looks for a Schreier generator that does not sift to the identity.
    fn find_missing(&self) -> Option<Perm11> {
        for (i, lvl) in self.levels.iter().enumerate() {
            let gens = self.level_gens(i);
            for u in lvl.transversal.iter().flatten() {
                for s in &gens {
                    let us = compose(u, s);
                    let v = lvl.transversal[us.apply(lvl.base)].expect("orbit is closed");
                    let h = compose(&us, &v.inverse());
                    let (r, _) = self.sift(h, i + 1);
                    if !r.is_identity() {
                        return Some(r);
                    }
                }
            }
        }
        None
    }

    fn add_strong(&mut self, g: Perm11) {
        if self.base.iter().all(|&b| g.apply(b) == b) {
            let moved = (0..DEGREE).find(|&x| g.apply(x) != x).expect("nonidentity");
            self.base.push(moved);
        }
        self.strong.push(g);
        self.rebuild();
    }

    fn new(gens: &[Perm11]) -> Self {
        let mut chain = StabilizerChain { base: Vec::new(), strong: Vec::new(), levels: Vec::new() };
        for g in gens {
            let (r, _) = chain.sift(*g, 0);
            if !r.is_identity() {
                chain.add_strong(r);
            }
        }
        while let Some(r) = chain.find_missing() {
            chain.add_strong(r);
        }
        chain
    }

    fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit_len() as u64).product()
    }
}

/// Order of the permutation group generated by `gens` (Schreier–Sims).
pub fn group_order(gens: &[Perm11]) -> u64 {
    StabilizerChain::new(gens).order()
}

/// Whether `p` lies in the group generated by `gens`.
pub fn group_contains(gens: &[Perm11], p: &Perm11) -> bool {
    let chain = StabilizerChain::new(gens);
    chain.sift(*p, 0).0.is_identity()
}

/// All elements of a small group by closure; `limit` guards against
/// accidentally enumerating a large group.
pub fn enumerate_group(gens: &[Perm11], limit: usize) -> Option<Vec<Perm11>> {
    let mut seen: HashSet<Perm11> = HashSet::from([Perm11::identity()]);
    let mut out = vec![Perm11::identity()];
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y) {
                if out.len() >= limit {
                    return None;
                }
                out.push(y);
            }
        }
        i += 1;
    }
    Some(out)
}

/// Element orders of a small group with their multiplicities.
pub fn order_census(gens: &[Perm11]) -> Option<BTreeMap<u64, usize>> {
    let elems = enumerate_group(gens, 1_000_000)?;
    let mut census = BTreeMap::new();
    for e in elems {
        *census.entry(e.order()).or_default() += 1;
    }
    Some(census)
}

/// Genus p of a regularly branched surface: 2p − 2 = N(−2 + Σ(v−1)/v).
pub fn regular_genus(sheet_count: u64, ramification_orders: &[u64]) -> Rational {
    let mut inner = Rational::from(-2);
    for &v in ramification_orders {
        inner.add_assign_ref(&Rational::new(v as i64 - 1, v as i64).expect("v ≥ 1"));
    }
    let rhs = inner.mul_ref(&Rational::from(sheet_count as i64));
    rhs.add_ref(&Rational::from(2)).mul_ref(&Rational::new(1, 2).expect("nonzero"))
}

/// Summary of the full census.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusRow {
    pub sigma_1: Perm11,
    pub sigma_0_cycle_type: CycleType,
    pub monodromy_order: u64,
    pub verdict: Verdict,
    pub genus: i64,
}

pub fn census_rows(classes: &[CoverClass]) -> Vec<CensusRow> {
    classes
        .iter()
        .map(|c| CensusRow {
            sigma_1: c.sigma_1,
            sigma_0_cycle_type: c.sigma_0.cycle_type(),
            monodromy_order: c.monodromy_order(),
            verdict: c.period_criterion(),
            genus: c.genus(),
        })
        .collect()
}

/// σ₁ of the fifth drawn diagram, with σ_∞ = (1 2 … 11).
pub fn diagram_v() -> Perm11 {
    Perm11::from_images(&[5, 2, 4, 3, 1, 6, 11, 9, 8, 10, 7]).expect("valid permutation")
}
