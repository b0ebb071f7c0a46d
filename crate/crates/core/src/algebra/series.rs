use std::collections::BTreeMap;
use std::fmt;

use crate::exact::{Field, Rational, Ring};
use crate::{Error, Result};

/// Precision marker of a series known exactly.
pub const EXACT: i64 = i64::MAX;

/// Truncated Laurent series Σ cₑ tᵉ.
///
/// Coefficients at exponents `≥ prec` are unknown. Terms are kept sorted and
/// nonzero; `prec == EXACT` marks a Laurent polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentSeries<R: Ring> {
    terms: Vec<(i64, R)>,
    prec: i64,
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a.saturating_add(b)
    }
}

impl<R: Ring> LaurentSeries<R> {
    pub fn zero(prec: i64) -> Self {
        LaurentSeries { terms: Vec::new(), prec }
    }

    pub fn one() -> Self {
        Self::monomial(0, R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(0, c)
    }

    /// The exact series c·tᵉ.
    pub fn monomial(e: i64, c: R) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(e, c)] };
        LaurentSeries { terms, prec: EXACT }
    }

    /// Builds from arbitrary terms, summing duplicates and dropping those at or past `prec`.
    pub fn from_terms(it: impl IntoIterator<Item = (i64, R)>, prec: i64) -> Self {
        let mut map: BTreeMap<i64, R> = BTreeMap::new();
        for (e, c) in it {
            if e >= prec {
                continue;
            }
            map.entry(e).or_insert_with(R::zero).add_assign_ref(&c);
        }
        LaurentSeries { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(), prec }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    pub fn terms(&self) -> &[(i64, R)] {
        &self.terms
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponent of the first nonzero known term, else the precision.
    pub fn valuation(&self) -> i64 {
        self.terms.first().map_or(self.prec, |t| t.0)
    }

    pub fn leading(&self) -> Option<&(i64, R)> {
        self.terms.first()
    }

    pub fn coeff(&self, e: i64) -> Result<R> {
        if e >= self.prec {
            return Err(Error::PrecisionExceeded { requested: e + 1, achievable: self.prec });
        }
        Ok(match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => R::zero(),
        })
    }

    /// Coefficient without precision check; zero past the known range.
    pub fn coeff_or_zero(&self, e: i64) -> R {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => R::zero(),
        }
    }

    /// Forgets everything at or past `n`.
    pub fn truncate(&self, n: i64) -> Self {
        let prec = self.prec.min(n);
        LaurentSeries { terms: self.terms.iter().filter(|t| t.0 < prec).cloned().collect(), prec }
    }

    /// Multiplies by tᵏ.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(), prec: sat_add(self.prec, k) }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) if x.0 == y.0 => {
                    i += 1;
                    j += 1;
                    (x.0, x.1.add_ref(&y.1))
                }
                (Some(x), Some(y)) if x.0 < y.0 => {
                    i += 1;
                    x.clone()
                }
                (Some(x), None) => {
                    i += 1;
                    x.clone()
                }
                (_, Some(y)) => {
                    j += 1;
                    y.clone()
                }
                (None, None) => unreachable!(),
            };
            if next.0 >= prec {
                break;
            }
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        LaurentSeries { terms: out, prec }
    }

    pub fn neg(&self) -> Self {
        LaurentSeries { terms: self.terms.iter().map(|(e, c)| (*e, c.neg_ref())).collect(), prec: self.prec }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: &R) -> Self {
        if k.is_zero() {
            return Self::zero(self.prec);
        }
        LaurentSeries { terms: self.terms.iter().map(|(e, c)| (*e, c.mul_ref(k))).collect(), prec: self.prec }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (va, vb) = (self.valuation(), rhs.valuation());
        let prec = sat_add(self.prec, vb).min(sat_add(rhs.prec, va));
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Self::zero(prec);
        }
        let lo = va + vb;
        let hi = if prec == EXACT {
            self.terms.last().expect("nonempty").0 + rhs.terms.last().expect("nonempty").0 + 1
        } else {
            prec
        };
        if hi <= lo {
            return Self::zero(prec);
        }
        let mut buf: Vec<Option<R>> = vec![None; (hi - lo) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                if e >= hi {
                    break;
                }
                let slot = &mut buf[(e - lo) as usize];
                match slot {
                    Some(acc) => acc.mul_acc(ca, cb),
                    None => *slot = Some(ca.mul_ref(cb)),
                }
            }
        }
        let terms = buf
            .into_iter()
            .enumerate()
            .filter_map(|(i, c)| c.filter(|c| !c.is_zero()).map(|c| (lo + i as i64, c)))
            .collect();
        LaurentSeries { terms, prec }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> LaurentSeries<S> {
        LaurentSeries::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))), self.prec)
    }

    /// Order of vanishing of the known part: the precision if nothing is known to be nonzero.
    pub fn vanishing_order(&self) -> i64 {
        self.valuation()
    }

    /// Replaces t by tᵏ.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k > 0, "dilation factor must be positive");
        LaurentSeries {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
            prec: if self.prec == EXACT { EXACT } else { self.prec.saturating_mul(k) },
        }
    }
}

impl<R: Field> LaurentSeries<R> {
    /// Multiplicative inverse. For an exact input the result is computed up to `cap`.
    pub fn inv_with(&self, cap: i64) -> Result<Self> {
        let (v, a0) = self.leading().cloned().ok_or(Error::NotInvertible)?;
        let rel = if self.prec == EXACT { cap.saturating_add(v) } else { self.prec - v };
        let prec = if self.prec == EXACT { cap } else { self.prec - 2 * v };
        let inv0 = a0.inv()?;
        let n = rel.max(0) as usize;
        let mut b: Vec<R> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                b.push(inv0.clone());
                continue;
            }
            let mut s = R::zero();
            for (e, c) in self.terms.iter().skip(1) {
                let d = (e - v) as usize;
                if d > k {
                    break;
                }
                s.mul_acc(c, &b[k - d]);
            }
            b.push(s.mul_ref(&inv0).neg_ref());
        }
        Ok(Self::from_terms(b.into_iter().enumerate().map(|(k, c)| (k as i64 - v, c)), prec))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_exact() {
            return Err(Error::Check("inverse of an exact series needs an explicit cap".into()));
        }
        self.inv_with(EXACT)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// `self^α` for rational α, given the chosen value `lead_pow` of a₀^α.
    ///
    /// The valuation times α must be an integer.
    pub fn rational_pow(&self, alpha: &Rational, lead_pow: &R) -> Result<Self> {
        let (v, a0) = self.leading().cloned().ok_or(Error::NotInvertible)?;
        let vv = Rational::from(v).mul_ref(alpha);
        if !vv.is_integer() {
            return Err(Error::Check(format!("valuation {v} times {alpha} is not integral")));
        }
        let v_out: i64 = vv.numer().try_into().map_err(|_| Error::Check("valuation overflow".into()))?;
        if self.prec == EXACT {
            return Err(Error::Check("rational power of an exact series needs a truncation".into()));
        }
        let rel = (self.prec - v).max(0) as usize;
        let inv0 = a0.inv()?;
        // f = 1 + Σ fₖ tᵏ,  g = f^α,  n·gₙ = Σₖ (α·k − (n − k))·fₖ·gₙ₋ₖ
        let f: Vec<R> = (0..rel).map(|k| self.coeff_or_zero(v + k as i64).mul_ref(&inv0)).collect();
        let al = R::from_rational(alpha);
        let mut g: Vec<R> = vec![R::one()];
        for n in 1..rel {
            let mut s = R::zero();
            for k in 1..=n {
                if f[k].is_zero() {
                    continue;
                }
                let w = al.mul_ref(&R::from_i64(k as i64)).sub_ref(&R::from_i64((n - k) as i64));
                s.mul_acc(&w.mul_ref(&f[k]), &g[n - k]);
            }
            g.push(s.div_ref(&R::from_i64(n as i64))?);
        }
        let prec = v_out + rel as i64;
        Ok(Self::from_terms(g.into_iter().enumerate().map(|(k, c)| (v_out + k as i64, c.mul_ref(lead_pow))), prec))
    }
}

impl<R: Ring> fmt::Display for LaurentSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})·t")?,
                _ => write!(f, "({c})·t^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        if self.prec != EXACT {
            write!(f, " + O(t^{})", self.prec)?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for LaurentSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
