//! Exact computations around the degree-11 transformation of elliptic
//! functions: the group of order 660 acting on five variables, the invariant
//! quartic curve of degree 20, its resolvents, and their q-expansions.

pub mod algebra;
pub mod covers;
pub mod exact;
pub mod group660;
pub mod klein;
pub mod qmod;
pub mod suites;
pub mod certificate;

mod error;

pub use error::{Error, Result};
