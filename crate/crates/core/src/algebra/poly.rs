use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::exact::{Cyclotomic, Field, Ring};
use crate::{Error, Result};

/// Exponents of (y₁, y₄, y₅, y₉, y₃).
pub type Exp = [u16; 5];

/// Variable names in storage order.
pub const VARS: [&str; 5] = ["y1", "y4", "y5", "y9", "y3"];

/// The quadratic residue k² labelling each variable slot.
pub const LABELS: [i64; 5] = [1, 4, 5, 9, 3];

pub fn total_degree(e: &Exp) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

/// Sparse polynomial in the five variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly<R: Ring = Cyclotomic> {
    terms: BTreeMap<Exp, R>,
}

impl<R: Ring> Default for SparsePoly<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Ring> SparsePoly<R> {
    pub fn zero() -> Self {
        SparsePoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::monomial([0; 5], c)
    }

    pub fn monomial(e: Exp, c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        SparsePoly { terms }
    }

    /// The variable in slot `i`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 5];
        e[i] = 1;
        Self::monomial(e, R::one())
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exp, R)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, &c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp, c: &R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exp) -> R {
        self.terms.get(e).cloned().unwrap_or_else(R::zero)
    }

    /// Max total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(total_degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(total_degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        SparsePoly { terms: self.terms.iter().map(|(e, c)| (*e, c.neg_ref())).collect() }
    }

    pub fn scale(&self, k: &R) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.mul_ref(k))))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut acc: HashMap<Exp, R> = HashMap::with_capacity(self.len() * rhs.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exp = std::array::from_fn(|i| ea[i] + eb[i]);
                acc.entry(e).or_insert_with(R::zero).mul_acc(ca, cb);
            }
        }
        SparsePoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> SparsePoly<S> {
        SparsePoly::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Relabels variables along y₁→y₄→y₅→y₉→y₃→y₁, applied `k` times.
    pub fn cyclic_shift(&self, k: usize) -> Self {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (std::array::from_fn(|j| e[(j + 5 - k % 5) % 5]), c.clone()))
                .collect(),
        }
    }

    /// Sum of the five cyclic shifts.
    pub fn cyclic_sum(&self) -> Self {
        (0..5).fold(Self::zero(), |acc, k| acc.add(&self.cyclic_shift(k)))
    }

    pub fn partial(&self, i: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut f = *e;
            f[i] -= 1;
            (f, c.mul_ref(&R::from_i64(e[i] as i64)))
        }))
    }

    /// `p(M·y)`: each yᵢ becomes Σⱼ M[i][j]·yⱼ.
    pub fn linear_substitute(&self, m: &[[R; 5]; 5]) -> Self {
        let forms: Vec<Self> = (0..5)
            .map(|i| Self::from_terms((0..5).map(|j| {
                let mut e = [0; 5];
                e[j] = 1;
                (e, m[i][j].clone())
            })))
            .collect();
        self.substitute(&forms)
    }

    /// Replaces each variable by a polynomial.
    pub fn substitute(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), 5, "five images required");
        let mut cache: Vec<Vec<Self>> = images.iter().map(|f| vec![Self::one(), f.clone()]).collect();
        let mut out: HashMap<Exp, R> = HashMap::new();
        for (e, c) in &self.terms {
            let mut prod = Self::constant(c.clone());
            for i in 0..5 {
                let k = e[i] as usize;
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k {
                    let next = cache[i].last().expect("nonempty").mul(&images[i]);
                    cache[i].push(next);
                }
                prod = prod.mul(&cache[i][k]);
            }
            for (f, d) in prod.terms {
                out.entry(f).or_insert_with(R::zero).add_assign_ref(&d);
            }
        }
        SparsePoly { terms: out.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Evaluates at a point of R⁵.
    pub fn eval(&self, y: &[R; 5]) -> R {
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..5 {
                if e[i] > 0 {
                    t = t.mul_ref(&y[i].pow(e[i] as u32));
                }
            }
            acc.add_assign_ref(&t);
        }
        acc
    }

    /// Largest-exponent term, used to normalize up to scalar.
    pub fn leading(&self) -> Option<(&Exp, &R)> {
        self.terms.iter().next_back()
    }
}

impl<R: Field> SparsePoly<R> {
    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    /// `Some(λ)` with `self = λ·other`, if such a scalar exists.
    pub fn scalar_multiple_of(&self, other: &Self) -> Option<R> {
        if other.is_zero() {
            return if self.is_zero() { Some(R::one()) } else { None };
        }
        let (e, c) = other.leading()?;
        let lambda = self.coeff(e).div_ref(c).ok()?;
        if self.sub(&other.scale(&lambda)).is_zero() {
            Some(lambda)
        } else {
            None
        }
    }
}

impl SparsePoly<Cyclotomic> {
    /// Substitution y_{k²} → ρ^{k²v}·y_{k²}.
    pub fn twist(&self, v: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let w: i64 = (0..5).map(|i| LABELS[i] * e[i] as i64).sum();
            (*e, c.mul_ref(&Cyclotomic::rho(w * v)))
        }))
    }

    pub fn galois_conj(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, &c.galois_conj(k)?);
        }
        Ok(out)
    }

    /// Canonical text: terms from largest exponent down, joined by ` + `.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut s = c.to_bracketed();
                for i in 0..5 {
                    match e[i] {
                        0 => {}
                        1 => s.push_str(&format!("*{}", VARS[i])),
                        k => s.push_str(&format!("*{}^{}", VARS[i], k)),
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }

    pub fn parse_text(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in s.split('+') {
            let term = term.trim();
            let close = term.find(']').ok_or_else(|| Error::Parse(format!("missing coefficient in {term:?}")))?;
            let c = Cyclotomic::parse_bracketed(&term[..=close])?;
            let mut e = [0u16; 5];
            let rest = &term[close + 1..];
            if !rest.is_empty() {
                let rest = rest.strip_prefix('*').ok_or_else(|| Error::Parse(format!("expected '*' in {term:?}")))?;
                for factor in rest.split('*') {
                    let (name, pow) = match factor.split_once('^') {
                        Some((n, p)) => {
                            if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                                return Err(Error::Parse(format!("bad exponent in {factor:?}")));
                            }
                            (n, p.parse::<u16>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?)
                        }
                        None => (factor, 1),
                    };
                    let i = VARS
                        .iter()
                        .position(|v| *v == name)
                        .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                    e[i] = e[i]
                        .checked_add(pow)
                        .ok_or_else(|| Error::Parse(format!("exponent overflow in {term:?}")))?;
                }
            }
            out.add_term(e, &c);
        }
        Ok(out)
    }
}

impl<R: Ring> fmt::Display for SparsePoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for i in 0..5 {
                match e[i] {
                    0 => {}
                    1 => write!(f, "*{}", VARS[i])?,
                    k => write!(f, "*{}^{}", VARS[i], k)?,
                }
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for SparsePoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand for a monomial with integer coefficient.
pub fn mono<R: Ring>(c: i64, e: Exp) -> SparsePoly<R> {
    SparsePoly::monomial(e, R::from_i64(c))
}
