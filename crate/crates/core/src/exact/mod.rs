//! Exact arithmetic: big rationals and the cyclotomic field Q(ζ₁₁).
//!
//! The generic code elsewhere in the crate is written against the [`Ring`]
//! and [`Field`] traits so that the curve charts can be lifted over the
//! rationals while everything involving ρ or √−11 runs over [`Cyclotomic`].

mod cyclotomic;
mod rational;

pub use cyclotomic::{Cyclotomic, QUADRATIC_RESIDUES};
pub use rational::Rational;

use std::fmt;
use std::hash::Hash;

/// A commutative ring with exact, canonical equality.
pub trait Ring: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.add_ref(rhs);
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self = self.sub_ref(rhs);
    }

    /// `self += a * b`
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        self.add_assign_ref(&a.mul_ref(b));
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> crate::Result<Self>;

    fn div_ref(&self, rhs: &Self) -> crate::Result<Self> {
        Ok(self.mul_ref(&rhs.inv()?))
    }
}
