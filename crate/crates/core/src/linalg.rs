//! Exact dense linear algebra over [`Scalar`]: echelon forms, kernels,
//! inverses, determinants and echelon-canonical subspaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| crate::ring::unit_vec(n, i)).collect()
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Scalar::zero(); cols]; rows]
}

pub fn transpose<R: Ring>(m: &[Vec<R>]) -> Vec<Vec<R>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec<R: Ring>(m: &[Vec<R>], v: &[R]) -> Vec<R> {
    m.iter().map(|row| row.iter().zip(v).fold(R::zero(), |acc, (a, b)| acc.fma(a, b))).collect()
}

pub fn mat_mul<R: Ring>(a: &[Vec<R>], b: &[Vec<R>]) -> Vec<Vec<R>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| row.iter().zip(b).fold(R::zero(), |acc, (x, brow)| acc.fma(x, &brow[j]))).collect()).collect()
}

pub fn is_zero_matrix<R: Ring>(m: &[Vec<R>]) -> bool {
    m.iter().all(|r| crate::ring::is_zero_vec(r))
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Scalar>]) -> (Matrix, Vec<usize>) {
    let mut m: Matrix = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        m[r] = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : A x = 0}`, one vector per free column, in echelon-canonical form.
pub fn kernel(a: &[Vec<Scalar>], ncols: usize) -> Matrix {
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Scalar::zero(); ncols];
        v[f] = Scalar::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -&row[f];
        }
        basis.push(v);
    }
    rref(&basis).0
}

pub fn inverse(m: &[Vec<Scalar>]) -> Result<Matrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Singular);
    }
    let aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(crate::ring::unit_vec::<Scalar>(n, i));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Singular);
    }
    Ok(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by Gaussian elimination over the field.
pub fn det(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut d = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Scalar::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d = &d * &a[c][c];
        let inv = a[c][c].inv();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                let pivot_row = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    d
}

/// Determinant by cofactor expansion over any commutative ring; intended for the
/// small symbolic pairing matrices.
pub fn det_expand<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    let cols: Vec<usize> = (0..n).collect();
    det_minor(m, 0, &cols)
}

fn det_minor<R: Ring>(m: &[Vec<R>], row: usize, cols: &[usize]) -> R {
    if cols.is_empty() {
        return R::one();
    }
    let mut acc = R::zero();
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = m[row][c].times(&det_minor(m, row + 1, &rest));
        acc = if k % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
    }
    acc
}

/// Solves `A x = b`, returning one particular solution if the system is consistent.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); ncols];
    for (row, &p) in red.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// A linear subspace of `K^dim`, stored as its reduced echelon basis so that
/// equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient));
        let (rows, pivots) = rref(vectors);
        Subspace { ambient, rows, pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(ambient, &identity(ambient))
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vs: Matrix = indices.into_iter().map(|i| crate::ring::unit_vec(ambient, i)).collect();
        Self::span(ambient, &vs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &Matrix {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Dimensions of the parts supported below and from `split` on. Exact for
    /// graded subspaces, whose echelon rows are homogeneous.
    pub fn split_dims(&self, split: usize) -> (usize, usize) {
        let low = self.pivots.iter().filter(|&&p| p < split).count();
        (low, self.dim() - low)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rank(&rows) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::span(self.ambient, &rows)
    }

    /// `{f : f(v) = 0 for all v in self}`, identified with `K^dim` by the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        let k = kernel(&self.rows, self.ambient);
        Subspace::span(self.ambient, &k)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![Scalar::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.rows) {
            crate::ring::add_scaled(&mut rebuilt, c, row);
        }
        (rebuilt == v).then_some(coords)
    }
}
