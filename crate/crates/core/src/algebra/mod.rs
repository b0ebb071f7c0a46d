//! Polynomials in the five variables, truncated Laurent series, branch
//! charts and the linear algebra that ties them together.

mod chart;
mod matrix;
mod poly;
mod series;
mod unipoly;

pub use chart::{lift_branch, rational_seeds, series_eval, series_eval_at, BranchChart, ChartLabel, SEED_III};
pub use matrix::{delete, det, det5, hessian, minors4, row_reduce, span_coefficients, Minor, PolyMatrix};
pub use poly::{mono, total_degree, Exp, SparsePoly, LABELS, VARS};
pub use series::{LaurentSeries, EXACT};
pub use unipoly::UniPoly;
