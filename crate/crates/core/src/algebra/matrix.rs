use crate::exact::{Field, Ring};
use crate::{Error, Result};

use super::poly::SparsePoly;

pub type PolyMatrix<R> = Vec<Vec<SparsePoly<R>>>;

/// Determinant by cofactor expansion along the first row.
pub fn det<R: Ring>(m: &PolyMatrix<R>) -> SparsePoly<R> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    match n {
        0 => SparsePoly::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = SparsePoly::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor = det(&delete(m, 0, j));
                if minor.is_zero() {
                    continue;
                }
                let term = m[0][j].mul(&minor);
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

pub fn det5<R: Ring>(m: &PolyMatrix<R>) -> Result<SparsePoly<R>> {
    if m.len() != 5 || m.iter().any(|r| r.len() != 5) {
        return Err(Error::Check("det5 needs a 5×5 matrix".into()));
    }
    Ok(det(m))
}

/// The matrix with row `i` and column `k` removed.
pub fn delete<R: Ring>(m: &PolyMatrix<R>, i: usize, k: usize) -> PolyMatrix<R> {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != i)
        .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != k).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// A 4×4 minor together with the deleted row and column.
#[derive(Clone, Debug)]
pub struct Minor<R: Ring> {
    pub row: usize,
    pub col: usize,
    pub poly: SparsePoly<R>,
}

/// The fifteen minors `det(M without row i, column k)`, `i ≤ k`, of a symmetric 5×5 matrix.
pub fn minors4<R: Ring>(m: &PolyMatrix<R>) -> Result<Vec<Minor<R>>> {
    if m.len() != 5 || m.iter().any(|r| r.len() != 5) {
        return Err(Error::Check("minors4 needs a 5×5 matrix".into()));
    }
    for i in 0..5 {
        for k in 0..i {
            if m[i][k] != m[k][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut out = Vec::with_capacity(15);
    for i in 0..5 {
        for k in i..5 {
            out.push(Minor { row: i, col: k, poly: det(&delete(m, i, k)) });
        }
    }
    Ok(out)
}

/// Matrix of second partials.
pub fn hessian<R: Ring>(p: &SparsePoly<R>) -> PolyMatrix<R> {
    (0..5).map(|i| (0..5).map(|j| p.partial(i).partial(j)).collect()).collect()
}

/// Whether `target` is a linear combination of `basis` with scalar coefficients.
/// Returns the coefficients when it is.
pub fn span_coefficients<R: Field>(basis: &[SparsePoly<R>], target: &SparsePoly<R>) -> Option<Vec<R>> {
    use std::collections::BTreeSet;
    let monos: Vec<_> = basis
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|p| p.terms().map(|(e, _)| *e))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let ncols = basis.len();
    // rows = monomials, columns = basis elements, augmented with target
    let mut a: Vec<Vec<R>> = monos
        .iter()
        .map(|e| basis.iter().map(|p| p.coeff(e)).chain(std::iter::once(target.coeff(e))).collect())
        .collect();
    let pivots = row_reduce(&mut a, ncols);
    // inconsistent if a pivot lands in the augmented column
    if a.iter().any(|row| row[..ncols].iter().all(Ring::is_zero) && !row[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![R::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][ncols].clone();
    }
    Some(x)
}

/// Gauss–Jordan elimination over the first `ncols` columns; returns pivot columns.
pub fn row_reduce<R: Field>(a: &mut [Vec<R>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        let pivot_row: Vec<R> = a[r].iter().map(|x| x.mul_ref(&inv)).collect();
        a[r] = pivot_row;
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..a[i].len() {
                    let d = f.mul_ref(&a[r][j]);
                    a[i][j].sub_assign_ref(&d);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    pivots
}
