use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Field, Rational, Ring};
use crate::{Error, Result};

/// Quadratic residues mod 11.
pub const QUADRATIC_RESIDUES: [usize; 5] = [1, 3, 4, 5, 9];

/// An element of Q(ρ), ρ = e^{2πi/11}, in the power basis ρ⁰..ρ⁹.
///
/// Stored as integer numerators over a shared positive denominator,
/// reduced so that the gcd of all of them is 1. The representation is
/// canonical, so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    num: [BigInt; 10],
    den: BigInt,
}

fn zero_array() -> [BigInt; 10] {
    std::array::from_fn(|_| BigInt::zero())
}

impl Cyclotomic {
    fn from_parts(num: [BigInt; 10], den: BigInt) -> Self {
        let mut c = Cyclotomic { num, den };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for n in &mut self.num {
                *n = -std::mem::take(n);
            }
        }
        if self.den.is_one() {
            return;
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for n in &self.num {
            if g.is_one() {
                return;
            }
            if !n.is_zero() {
                g = g.gcd(n);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for n in &mut self.num {
                *n /= &g;
            }
        }
    }

    /// Numerators as machine integers when they are small enough for exact i128 products.
    fn small(&self) -> Option<[i64; 10]> {
        const LIMIT: i64 = 1 << 40;
        let mut out = [0i64; 10];
        for (o, n) in out.iter_mut().zip(&self.num) {
            let x = n.to_i64()?;
            if !(-LIMIT..=LIMIT).contains(&x) {
                return None;
            }
            *o = x;
        }
        Some(out)
    }

    /// ρ^k for any integer k.
    pub fn rho(k: i64) -> Self {
        let k = k.rem_euclid(11) as usize;
        let mut num = zero_array();
        if k == 10 {
            for n in &mut num {
                *n = BigInt::from(-1);
            }
        } else {
            num[k] = BigInt::one();
        }
        Cyclotomic { num, den: BigInt::one() }
    }

    /// √−11 as the quadratic Gauss sum Σ_k (k/11) ρ^k.
    pub fn sqrt_m11() -> Self {
        let mut acc = Self::zero();
        for k in 1..11i64 {
            let r = if QUADRATIC_RESIDUES.contains(&(k as usize)) { 1 } else { -1 };
            acc.add_assign_ref(&Self::rho(k).scale_i64(r));
        }
        acc
    }

    /// `a + b·√−11`
    pub fn quadratic(a: &Rational, b: &Rational) -> Self {
        Self::from_rational(a).add_ref(&Self::sqrt_m11().scale(b))
    }

    pub fn from_coeffs(coeffs: &[Rational; 10]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = std::array::from_fn(|i| coeffs[i].numer() * (&den / coeffs[i].denom()));
        Self::from_parts(num, den)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        Rational::from_big(BigRational::new(self.num[i].clone(), self.den.clone()))
    }

    pub fn coeffs(&self) -> [Rational; 10] {
        std::array::from_fn(|i| self.coeff(i))
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let num = std::array::from_fn(|i| &self.num[i] * q.numer());
        Self::from_parts(num, &self.den * q.denom())
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&Rational::from(k))
    }

    /// The automorphism ρ ↦ ρ^k, k a unit mod 11.
    pub fn galois_conj(&self, k: i64) -> Result<Self> {
        let k = k.rem_euclid(11);
        if k == 0 {
            return Err(Error::BadGaloisExponent(k));
        }
        let mut acc: [BigInt; 11] = std::array::from_fn(|_| BigInt::zero());
        for (i, c) in self.num.iter().enumerate() {
            acc[(i * k as usize) % 11] += c;
        }
        let c10 = std::mem::take(&mut acc[10]);
        let num = std::array::from_fn(|i| &acc[i] - &c10);
        Ok(Self::from_parts(num, self.den.clone()))
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> Rational {
        let mut p = self.clone();
        for k in 2..11 {
            p = p.mul_ref(&self.galois_conj(k).expect("unit"));
        }
        p.as_rational().expect("norm is rational")
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(self.coeff(0))
        } else {
            None
        }
    }

    /// Writes the element as `a + b·√−11` when it lies in that subfield.
    pub fn as_quadratic(&self) -> Option<(Rational, Rational)> {
        let g = Self::sqrt_m11();
        // g has c1 = 2 (ρ¹ coefficient 1 minus ρ^10 contribution −1) and c2 = 0
        let gd = g.coeff(1).sub_ref(&g.coeff(2));
        let b = self.coeff(1).sub_ref(&self.coeff(2)).div_ref(&gd).ok()?;
        let a = self.sub_ref(&g.scale(&b)).as_rational()?;
        Some((a, b))
    }

    /// Numerical value under ρ = e^{2πi/11}.
    pub fn complex_eval(&self) -> Complex64 {
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut z = Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * i as f64 / 11.0);
            let q = BigRational::new(c.clone(), self.den.clone()).to_f64().unwrap_or(c.to_f64().unwrap_or(f64::NAN) / den);
            z += w * q;
        }
        z
    }

    /// Parses a bracketed list of ten rationals, `[p/q,...]`.
    pub fn parse_bracketed(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected bracketed vector, got {s:?}")))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 10 {
            return Err(Error::Parse(format!("expected 10 coefficients, got {}", parts.len())));
        }
        let mut coeffs: [Rational; 10] = std::array::from_fn(|_| Rational::zero());
        for (c, p) in coeffs.iter_mut().zip(parts) {
            *c = p.parse()?;
        }
        Ok(Self::from_coeffs(&coeffs))
    }

    pub fn to_bracketed(&self) -> String {
        let parts: Vec<String> = self.coeffs().iter().map(ToString::to_string).collect();
        format!("[{}]", parts.join(","))
    }

    /// Decodes the JSON array-of-ten-strings form.
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_quadratic() {
            Some((a, b)) if b.is_zero() => write!(f, "{}", fmt_q(&a)),
            Some((a, b)) if a.is_zero() => write!(f, "{}", fmt_root(&b)),
            Some((a, b)) => {
                let sign = if b.is_negative() { '-' } else { '+' };
                write!(f, "{} {sign} {}", fmt_q(&a), fmt_root(&b.abs()))
            }
            None => f.write_str(&self.to_bracketed()),
        }
    }
}

/// `b·√-11`, dropping a unit factor.
fn fmt_root(b: &Rational) -> String {
    if b.is_one() {
        "√-11".into()
    } else if b.neg_ref().is_one() {
        "-√-11".into()
    } else {
        format!("{}·√-11", fmt_q(b))
    }
}

fn fmt_q(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        q.to_string()
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <[Rational; 10]>::deserialize(d)?;
        Ok(Self::from_coeffs(&v))
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(&q)
    }
}

impl Ring for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic { num: zero_array(), den: BigInt::one() }
    }
    fn one() -> Self {
        Self::rho(0)
    }
    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }
    fn from_i64(n: i64) -> Self {
        let mut c = Self::zero();
        c.num[0] = BigInt::from(n);
        c
    }
    fn from_rational(q: &Rational) -> Self {
        let mut num = zero_array();
        num[0] = q.numer().clone();
        Cyclotomic { num, den: q.denom().clone() }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            let num = std::array::from_fn(|i| &self.num[i] + &rhs.num[i]);
            return Self::from_parts(num, self.den.clone());
        }
        let l = self.den.lcm(&rhs.den);
        let a = &l / &self.den;
        let b = &l / &rhs.den;
        let num = std::array::from_fn(|i| &self.num[i] * &a + &rhs.num[i] * &b);
        Self::from_parts(num, l)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let (Some(a), Some(b)) = (self.small(), rhs.small()) {
            let mut acc = [0i128; 11];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in b.iter().enumerate() {
                    acc[(i + j) % 11] += x as i128 * y as i128;
                }
            }
            let num = std::array::from_fn(|i| BigInt::from(acc[i] - acc[10]));
            return Self::from_parts(num, &self.den * &rhs.den);
        }
        let mut acc: [BigInt; 11] = std::array::from_fn(|_| BigInt::zero());
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[(i + j) % 11] += a * b;
            }
        }
        let c10 = std::mem::take(&mut acc[10]);
        let num = std::array::from_fn(|i| &acc[i] - &c10);
        Self::from_parts(num, &self.den * &rhs.den)
    }

    fn neg_ref(&self) -> Self {
        Cyclotomic { num: std::array::from_fn(|i| -&self.num[i]), den: self.den.clone() }
    }
}

impl Field for Cyclotomic {
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&q.inv()?));
        }
        // x · Π_{k≠1} σ_k(x) = N(x)
        let mut p = Self::one();
        for k in 2..11 {
            p = p.mul_ref(&self.galois_conj(k)?);
        }
        let n = self.mul_ref(&p).as_rational().expect("norm is rational");
        Ok(p.scale(&n.inv()?))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $via:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$via(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                self.$via(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn rho_has_order_11() {
        assert!(Cyclotomic::rho(1).pow(11).is_one());
        assert!(Cyclotomic::rho(3).mul_ref(&Cyclotomic::rho(8)).is_one());
        let s: Cyclotomic = (0..11).fold(Cyclotomic::zero(), |a, k| a + Cyclotomic::rho(k));
        assert!(s.is_zero());
    }

    #[test]
    fn gauss_sum() {
        let g = Cyclotomic::sqrt_m11();
        assert_eq!(g.mul_ref(&g), Cyclotomic::from_i64(-11));
        assert_eq!(g.galois_conj(2).unwrap(), g.neg_ref());
        assert_eq!(g.galois_conj(3).unwrap(), g);
        let eta0 = QUADRATIC_RESIDUES.iter().fold(Cyclotomic::zero(), |a, &k| a + Cyclotomic::rho(k as i64));
        let eta1 = [2, 6, 7, 8, 10].iter().fold(Cyclotomic::zero(), |a, &k| a + Cyclotomic::rho(k));
        assert_eq!(eta0.mul_ref(&eta1), Cyclotomic::from_i64(3));
        assert_eq!(g.as_quadratic(), Some((q(0, 1), q(1, 1))));
        let z = g.complex_eval();
        assert!(z.re.abs() < 1e-12 && (z.im - 11f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn inverse_and_norm() {
        let x = Cyclotomic::rho(1) + Cyclotomic::from_i64(2);
        let xi = x.inv().unwrap();
        assert!(x.mul_ref(&xi).is_one());
        let g = Cyclotomic::sqrt_m11();
        assert_eq!(g.norm(), Rational::from(11i64.pow(5)));
        assert!(Cyclotomic::zero().inv().is_err());
        assert!(g.galois_conj(22).is_err());
    }

    #[test]
    fn quadratic_roundtrip_and_display() {
        let x = Cyclotomic::quadratic(&q(-1, 2), &q(1, 2));
        assert_eq!(x.as_quadratic(), Some((q(-1, 2), q(1, 2))));
        assert_eq!(x.to_string(), "-1/2 + 1/2·√-11");
        assert_eq!(Cyclotomic::quadratic(&q(5, 1), &q(-1, 1)).to_string(), "5 - √-11");
        assert_eq!(Cyclotomic::quadratic(&q(0, 1), &q(-3, 2)).to_string(), "-3/2·√-11");
        assert_eq!(Cyclotomic::sqrt_m11().to_string(), "√-11");
        assert_eq!(Cyclotomic::rho(1).as_quadratic(), None);
    }

    #[test]
    fn serialization_roundtrip() {
        let x = Cyclotomic::rho(4).scale(&q(3, 7)) + Cyclotomic::from_i64(5);
        let j = x.to_json();
        assert_eq!(Cyclotomic::from_json(&j).unwrap(), x);
        assert_eq!(Cyclotomic::from_json(&j).unwrap().to_json(), j);
        assert_eq!(Cyclotomic::parse_bracketed(&x.to_bracketed()).unwrap(), x);
        assert!(Cyclotomic::from_json("[\"1/1\"]").is_err());
        assert!(Cyclotomic::parse_bracketed("[1,2]").is_err());
    }
}
