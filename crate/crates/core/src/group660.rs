//! The group of 660 collineations generated by S and T, its normal-form
//! words C^α S^β and C^α S^β T S^γ, the subgroup of 60, and invariants.
//!
//! Words act on points, y′ = M·y, and are read left to right: the matrix of
//! the word X₁X₂…Xₙ is Xₙ⋯X₂X₁. A polynomial p is transformed to p(M·y).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{SparsePoly, LABELS};
use crate::exact::{Cyclotomic, Field, Rational, Ring};
use crate::{Error, Result};

pub type Mat5 = [[Cyclotomic; 5]; 5];

/// Exponent pairs (a, b) of the entries ρᵃ − ρᵇ of √−11·T.
pub const T_ROWS: [[(i64, i64); 5]; 5] = [
    [(9, 2), (4, 7), (3, 8), (5, 6), (1, 10)],
    [(4, 7), (3, 8), (5, 6), (1, 10), (9, 2)],
    [(3, 8), (5, 6), (1, 10), (9, 2), (4, 7)],
    [(5, 6), (1, 10), (9, 2), (4, 7), (3, 8)],
    [(1, 10), (9, 2), (4, 7), (3, 8), (5, 6)],
];

/// Word for C as a product of S and T.
pub const C_WORD: &str = "SSSSSSTSSTSSSSSST";

pub fn mat_identity() -> Mat5 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Cyclotomic::one() } else { Cyclotomic::zero() }))
}

pub fn mat_mul(a: &Mat5, b: &Mat5) -> Mat5 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Cyclotomic::zero();
            for k in 0..5 {
                acc.mul_acc(&a[i][k], &b[k][j]);
            }
            acc
        })
    })
}

pub fn mat_scale(a: &Mat5, k: &Cyclotomic) -> Mat5 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j].mul_ref(k)))
}

/// A 5×5 matrix considered up to a nonzero scalar.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjMatrix5 {
    m: Mat5,
}

impl ProjMatrix5 {
    pub fn new(m: Mat5) -> Self {
        ProjMatrix5 { m }
    }

    pub fn identity() -> Self {
        ProjMatrix5 { m: mat_identity() }
    }

    pub fn entries(&self) -> &Mat5 {
        &self.m
    }

    /// Product in word order: `self` first, then `rhs`.
    pub fn then(&self, rhs: &Self) -> Self {
        ProjMatrix5 { m: mat_mul(&rhs.m, &self.m) }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(), |acc, _| acc.then(self))
    }

    /// Representative with the first nonzero entry (row-major) equal to 1.
    pub fn canonical(&self) -> Result<Self> {
        let first = self.m.iter().flatten().find(|c| !c.is_zero()).ok_or(Error::SingularMatrix)?;
        Ok(ProjMatrix5 { m: mat_scale(&self.m, &first.inv()?) })
    }

    pub fn proj_eq(&self, other: &Self) -> bool {
        match (self.canonical(), other.canonical()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    pub fn is_proj_identity(&self) -> bool {
        self.proj_eq(&Self::identity())
    }

    pub fn scale(&self, k: &Cyclotomic) -> Self {
        ProjMatrix5 { m: mat_scale(&self.m, k) }
    }

    /// Entrywise Galois conjugate ρ ↦ ρᵏ.
    pub fn galois_conj(&self, k: i64) -> Result<Self> {
        let mut m = self.m.clone();
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e = e.galois_conj(k)?;
            }
        }
        Ok(ProjMatrix5 { m })
    }

    /// Projective order, searched up to `limit`.
    pub fn proj_order(&self, limit: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=limit {
            if p.is_proj_identity() {
                return Some(k);
            }
            p = p.then(self);
        }
        None
    }

    pub fn det(&self) -> Cyclotomic {
        let rows: Vec<Vec<SparsePoly<Cyclotomic>>> =
            self.m.iter().map(|r| r.iter().map(|c| SparsePoly::constant(c.clone())).collect()).collect();
        crate::algebra::det(&rows).coeff(&[0; 5])
    }

    /// `p(M·y)`.
    pub fn act(&self, p: &SparsePoly<Cyclotomic>) -> SparsePoly<Cyclotomic> {
        p.linear_substitute(&self.m)
    }
}

/// `p(M·y)`, refusing singular matrices.
pub fn linear_substitute(p: &SparsePoly<Cyclotomic>, m: &ProjMatrix5) -> Result<SparsePoly<Cyclotomic>> {
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(m.act(p))
}

/// √−11·T, with integral entries ρᵃ − ρᵇ.
pub fn t_integral() -> Mat5 {
    std::array::from_fn(|i| std::array::from_fn(|j| {
        let (a, b) = T_ROWS[i][j];
        Cyclotomic::rho(a).sub_ref(&Cyclotomic::rho(b))
    }))
}

/// The generators S, T and the cyclic permutation C.
pub fn generators() -> (ProjMatrix5, ProjMatrix5, ProjMatrix5) {
    let s = ProjMatrix5::new(std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { Cyclotomic::rho(LABELS[i]) } else { Cyclotomic::zero() })
    }));
    let g_inv = Cyclotomic::sqrt_m11().inv().expect("nonzero");
    let t = ProjMatrix5::new(mat_scale(&t_integral(), &g_inv));
    let c = ProjMatrix5::new(std::array::from_fn(|i| {
        std::array::from_fn(|j| if j == (i + 1) % 5 { Cyclotomic::one() } else { Cyclotomic::zero() })
    }));
    (s, t, c)
}

/// Evaluates a word over {S, T, C} with optional integer exponents,
/// e.g. "S^6 T S^2 T S^6 T", "S^-1 T S" or "SSST".
pub fn word_matrix(word: &str) -> Result<ProjMatrix5> {
    let (s, t, c) = generators();
    let mut out = ProjMatrix5::identity();
    let mut chars = word.chars().filter(|ch| !ch.is_whitespace()).peekable();
    while let Some(ch) = chars.next() {
        let (g, period) = match ch {
            'S' => (&s, 11),
            'T' => (&t, 2),
            'C' => (&c, 5),
            _ => return Err(Error::Parse(format!("unknown generator {ch:?} in {word:?}"))),
        };
        let mut e: i64 = 1;
        if chars.peek() == Some(&'^') {
            chars.next();
            let mut digits = String::new();
            if chars.peek() == Some(&'-') {
                digits.push('-');
                chars.next();
            }
            while let Some(d) = chars.peek().copied().filter(char::is_ascii_digit) {
                digits.push(d);
                chars.next();
            }
            e = digits.parse().map_err(|_| Error::Parse(format!("bad exponent in {word:?}")))?;
        }
        for _ in 0..e.rem_euclid(period) {
            out = out.then(g);
        }
    }
    Ok(out)
}

/// Normal-form word C^α S^β, or C^α S^β T S^γ when `gamma` is present.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    pub alpha: u8,
    pub beta: u8,
    pub gamma: Option<u8>,
}

impl Word {
    pub fn identity() -> Self {
        Word { alpha: 0, beta: 0, gamma: None }
    }

    /// Letters over {S, T}, C expanded.
    pub fn letters(&self) -> Vec<char> {
        let mut out = Vec::new();
        for _ in 0..self.alpha {
            out.extend(C_WORD.chars());
        }
        out.extend(std::iter::repeat('S').take(self.beta as usize));
        if let Some(g) = self.gamma {
            out.push('T');
            out.extend(std::iter::repeat('S').take(g as usize));
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C^{} S^{}", self.alpha, self.beta)?;
        if let Some(g) = self.gamma {
            write!(f, " T S^{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub word: Word,
    /// The exact product of the generator matrices.
    pub matrix: ProjMatrix5,
    pub canonical: ProjMatrix5,
}

/// All 660 elements, with right-multiplication tables for S, T and C.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub elements: Vec<GroupElement>,
    index: HashMap<ProjMatrix5, usize>,
    pub times_s: Vec<usize>,
    pub times_t: Vec<usize>,
    pub times_c: Vec<usize>,
    /// Whether every closure step matched exactly, not only up to scalar.
    pub exact_closure: bool,
}

impl GroupTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn find(&self, m: &ProjMatrix5) -> Option<usize> {
        self.index.get(&m.canonical().ok()?).copied()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    /// Applies a string of letters S, T to an element index.
    pub fn apply_letters(&self, mut g: usize, letters: &[char]) -> usize {
        for &ch in letters {
            g = match ch {
                'S' => self.times_s[g],
                'T' => self.times_t[g],
                'C' => self.times_c[g],
                _ => panic!("unknown letter {ch}"),
            };
        }
        g
    }

    /// Index of the product `a` then `b`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.apply_letters(a, &self.elements[b].word.letters())
    }

    pub fn order_of(&self, g: usize) -> u32 {
        let letters = self.elements[g].word.letters();
        let mut x = g;
        let mut k = 1;
        while x != self.identity_index() {
            x = self.apply_letters(x, &letters);
            k += 1;
        }
        k
    }

    pub fn order_census(&self) -> BTreeMap<u32, usize> {
        let mut census = BTreeMap::new();
        for g in 0..self.len() {
            *census.entry(self.order_of(g)).or_default() += 1;
        }
        census
    }

    /// Closure of the given element indices under products.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let letters: Vec<Vec<char>> = gens.iter().map(|&g| self.elements[g].word.letters()).collect();
        let mut seen = vec![false; self.len()];
        seen[self.identity_index()] = true;
        let mut out = vec![self.identity_index()];
        let mut i = 0;
        while i < out.len() {
            for l in &letters {
                let y = self.apply_letters(out[i], l);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }
}

/// All normal-form words in table order.
pub fn normal_form_words() -> Vec<Word> {
    let mut words = Vec::with_capacity(660);
    for alpha in 0..5 {
        for beta in 0..11 {
            words.push(Word { alpha, beta, gamma: None });
        }
    }
    for alpha in 0..5 {
        for beta in 0..11 {
            for gamma in 0..11 {
                words.push(Word { alpha, beta, gamma: Some(gamma) });
            }
        }
    }
    words
}

/// Builds the table and certifies distinctness and closure.
pub fn build_group() -> Result<GroupTable> {
    let (s, t, c) = generators();
    let mut c_pows = vec![ProjMatrix5::identity()];
    let mut s_pows = vec![ProjMatrix5::identity()];
    for k in 1..11 {
        if k < 5 {
            c_pows.push(c_pows[k - 1].then(&c));
        }
        s_pows.push(s_pows[k - 1].then(&s));
    }
    let mut elements = Vec::with_capacity(660);
    let mut index = HashMap::with_capacity(660);
    for w in normal_form_words() {
        let mut m = c_pows[w.alpha as usize].then(&s_pows[w.beta as usize]);
        if let Some(g) = w.gamma {
            m = m.then(&t).then(&s_pows[g as usize]);
        }
        let canonical = m.canonical()?;
        if let Some(&prev) = index.get(&canonical) {
            let prev: &GroupElement = &elements[prev];
            return Err(Error::Check(format!("words {} and {} coincide", prev.word, w)));
        }
        index.insert(canonical.clone(), elements.len());
        elements.push(GroupElement { word: w, matrix: m, canonical });
    }
    let mut exact_closure = true;
    let mut table = |g: &ProjMatrix5| -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(elements.len());
        for e in &elements {
            let prod = e.matrix.then(g);
            let &j = index
                .get(&prod.canonical()?)
                .ok_or_else(|| Error::Check(format!("{} times a generator leaves the table", e.word)))?;
            exact_closure &= prod == elements[j].matrix;
            out.push(j);
        }
        Ok(out)
    };
    let times_s = table(&s)?;
    let times_t = table(&t)?;
    let times_c = table(&c)?;
    Ok(GroupTable { elements, index, times_s, times_t, times_c, exact_closure })
}

/// The subgroup generated by C and V = S⁻¹TS, as element indices.
pub fn subgroup60(g: &GroupTable) -> Result<Vec<usize>> {
    let (_, _, c) = generators();
    subgroup60_from(g, &[c, word_matrix("S^-1 T S")?])
}

/// The subgroup generated by the given matrices, which must have 60 elements.
pub fn subgroup60_from(g: &GroupTable, gens: &[ProjMatrix5]) -> Result<Vec<usize>> {
    let idx = gens
        .iter()
        .enumerate()
        .map(|(i, m)| g.find(m).ok_or_else(|| Error::Check(format!("generator {i} not in group"))))
        .collect::<Result<Vec<_>>>()?;
    let sub = g.generated(&idx);
    if sub.len() != 60 {
        return Err(Error::Check(format!("subgroup has {} elements", sub.len())));
    }
    Ok(sub)
}

/// Outcome of an invariance test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariance {
    Invariant,
    NotInvariant { witness: usize },
}

impl Invariance {
    pub fn holds(&self) -> bool {
        matches!(self, Invariance::Invariant)
    }
}

/// Checks `p(M·y) = p` exactly for each matrix, reporting the first failure.
pub fn is_invariant(p: &SparsePoly<Cyclotomic>, elements: &[ProjMatrix5]) -> Invariance {
    for (i, m) in elements.iter().enumerate() {
        if m.act(p) != *p {
            return Invariance::NotInvariant { witness: i };
        }
    }
    Invariance::Invariant
}

/// The scalar χ with `p(M·y) = χ·p`, if one exists.
pub fn relative_character(p: &SparsePoly<Cyclotomic>, m: &ProjMatrix5) -> Option<Cyclotomic> {
    m.act(p).scalar_multiple_of(p)
}

/// Σ over the S-powers: keeps monomials of weight ≡ 0 mod 11, times 11.
pub fn sum_over_s(p: &SparsePoly<Cyclotomic>) -> SparsePoly<Cyclotomic> {
    let eleven = Cyclotomic::from_i64(11);
    SparsePoly::from_terms(p.terms().filter_map(|(e, c)| {
        let w: i64 = (0..5).map(|i| LABELS[i] * e[i] as i64).sum();
        (w % 11 == 0).then(|| (*e, c.mul_ref(&eleven)))
    }))
}

/// `p(T·y)` for homogeneous p, with √−11 factored out of T.
pub fn apply_t(p: &SparsePoly<Cyclotomic>) -> SparsePoly<Cyclotomic> {
    let Some(d) = p.degree() else { return SparsePoly::zero() };
    assert!(p.is_homogeneous(), "homogeneous input required");
    let g = Cyclotomic::sqrt_m11();
    let k = g.pow(d).inv().expect("nonzero");
    p.linear_substitute(&t_integral()).scale(&k)
}

/// Σ_{g ∈ G} p(M_g·y) by the coset factorization of the normal form.
pub fn group_sum(p: &SparsePoly<Cyclotomic>) -> SparsePoly<Cyclotomic> {
    let ps = sum_over_s(p);
    ps.add(&sum_over_s(&apply_t(&ps))).cyclic_sum()
}

/// Σ_{g ∈ G} p(M_g·y) by summing over the whole table.
pub fn group_sum_brute(p: &SparsePoly<Cyclotomic>, g: &GroupTable) -> SparsePoly<Cyclotomic> {
    g.elements.iter().fold(SparsePoly::zero(), |acc, e| acc.add(&e.matrix.act(p)))
}

#[derive(Clone, Debug)]
pub struct ReynoldsResult {
    /// The normalized invariant, or `None` when the average vanishes.
    pub invariant: Option<SparsePoly<Cyclotomic>>,
    /// The raw group sum.
    pub raw: SparsePoly<Cyclotomic>,
    /// Factor taking the raw sum to the normalized invariant.
    pub normalization: Option<Cyclotomic>,
}

/// Group average of a homogeneous polynomial, normalized so the coefficient of
/// the input's largest monomial is 1.
pub fn reynolds(p: &SparsePoly<Cyclotomic>) -> ReynoldsResult {
    let raw = group_sum(p);
    let (e, _) = match p.leading() {
        Some(t) => t,
        None => return ReynoldsResult { invariant: None, raw, normalization: None },
    };
    let lead = raw.coeff(e);
    if raw.is_zero() || lead.is_zero() {
        return ReynoldsResult { invariant: None, raw, normalization: None };
    }
    let k = lead.inv().expect("nonzero");
    ReynoldsResult { invariant: Some(raw.scale(&k)), raw, normalization: Some(k) }
}

/// The degree-11 invariant C with all pure eleventh powers having coefficient 1,
/// and the rational factor relating it to Σ_G (g·y₁)¹¹.
pub fn c_form() -> (SparsePoly<Cyclotomic>, Rational) {
    let y1_11 = SparsePoly::monomial([11, 0, 0, 0, 0], Cyclotomic::one());
    let r = reynolds(&y1_11);
    let k = r.normalization.expect("nonzero average").as_rational().expect("rational normalization");
    (r.invariant.expect("nonzero average"), k)
}
