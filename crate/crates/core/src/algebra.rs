//! Z2-graded algebras given by structure constants.
//!
//! Basis order is fixed: the even block first, then the odd block, so parity is
//! an index-range test. Constants are stored only for `i <= j`; the other order
//! is recovered from graded skew-symmetry when read.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::forms::OddForm;
use crate::linalg::{self, Matrix, Subspace};
use crate::ring::{self, Ring};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Structure<R> {
    names: Vec<String>,
    n_even: usize,
    constants: BTreeMap<(usize, usize), Vec<R>>,
}

/// Numeric Lie superalgebra candidate.
pub type SuperAlgebra = Structure<Scalar>;

/// `[x_j, x_i] = sign * [x_i, x_j]`.
fn swap_sign(pi: bool, pj: bool) -> bool {
    // -(-1)^{|i||j|}: negative unless both odd
    !(pi && pj)
}

impl<R: Ring> Structure<R> {
    pub fn new<S: AsRef<str>>(even: &[S], odd: &[S]) -> Result<Self> {
        let names: Vec<String> = even.iter().chain(odd).map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        Ok(Structure { names, n_even: even.len(), constants: BTreeMap::new() })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn n_even(&self) -> usize {
        self.n_even
    }

    pub fn m_odd(&self) -> usize {
        self.names.len() - self.n_even
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn even_names(&self) -> &[String] {
        &self.names[..self.n_even]
    }

    pub fn odd_names(&self) -> &[String] {
        &self.names[self.n_even..]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn is_odd(&self, i: usize) -> bool {
        i >= self.n_even
    }

    pub fn parity(&self, i: usize) -> u8 {
        u8::from(self.is_odd(i))
    }

    pub fn even_range(&self) -> std::ops::Range<usize> {
        0..self.n_even
    }

    pub fn odd_range(&self) -> std::ops::Range<usize> {
        self.n_even..self.dim()
    }

    /// Sets `[x_i, x_j]`, storing it under the canonical pair.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: Vec<R>) -> Result<()> {
        let n = self.dim();
        if i >= n || j >= n {
            return Err(Error::Dimension { expected: n, got: i.max(j) + 1 });
        }
        if value.len() != n {
            return Err(Error::Dimension { expected: n, got: value.len() });
        }
        let target_odd = self.is_odd(i) != self.is_odd(j);
        if value.iter().enumerate().any(|(k, c)| !c.is_zero() && self.is_odd(k) != target_odd) {
            return Err(Error::Grading { x: self.names[i].clone(), y: self.names[j].clone() });
        }
        if i == j && !self.is_odd(i) && !ring::is_zero_vec(&value) {
            return Err(Error::EvenDiagonal(self.names[i].clone()));
        }
        let (key, value) = if i <= j {
            ((i, j), value)
        } else {
            let neg = swap_sign(self.is_odd(i), self.is_odd(j));
            ((j, i), value.iter().map(|c| c.signed(neg)).collect())
        };
        if ring::is_zero_vec(&value) {
            self.constants.remove(&key);
        } else {
            self.constants.insert(key, value);
        }
        Ok(())
    }

    /// Sets `[x, y] = sum c_k z_k` by basis names.
    pub fn set<S: AsRef<str>>(&mut self, x: &str, y: &str, terms: &[(S, R)]) -> Result<()> {
        let (i, j) = (self.index(x)?, self.index(y)?);
        let mut v: Vec<R> = ring::zero_vec(self.dim());
        for (name, c) in terms {
            let k = self.index(name.as_ref())?;
            v[k] = v[k].plus(c);
        }
        self.set_bracket(i, j, v)
    }

    /// Stored constants for canonical pairs `i <= j`.
    pub fn constants(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<R>)> {
        self.constants.iter()
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<R> {
        if i <= j {
            self.constants.get(&(i, j)).cloned().unwrap_or_else(|| ring::zero_vec(self.dim()))
        } else {
            let neg = swap_sign(self.is_odd(i), self.is_odd(j));
            match self.constants.get(&(j, i)) {
                Some(v) => v.iter().map(|c| c.signed(neg)).collect(),
                None => ring::zero_vec(self.dim()),
            }
        }
    }

    /// All basis brackets, `table[i][j] = [x_i, x_j]`.
    pub fn bracket_table(&self) -> Vec<Vec<Vec<R>>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.basis_bracket(i, j)).collect()).collect()
    }

    /// Bilinear extension of the basis brackets.
    pub fn bracket(&self, x: &[R], y: &[R]) -> Result<Vec<R>> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::Dimension { expected: n, got: x.len().min(y.len()) });
        }
        let mut out = ring::zero_vec(n);
        for (&(i, j), v) in &self.constants {
            let c = x[i].times(&y[j]);
            if !c.is_zero() {
                ring::add_scaled(&mut out, &c, v);
            }
            if i != j {
                let c = x[j].times(&y[i]);
                if !c.is_zero() {
                    let neg = swap_sign(self.is_odd(i), self.is_odd(j));
                    ring::add_scaled(&mut out, &c.signed(neg), v);
                }
            }
        }
        Ok(out)
    }

    /// Every stored constant respects the grading (re-check of the constructor rule).
    pub fn respects_grading(&self) -> bool {
        self.constants.iter().all(|(&(i, j), v)| {
            let target_odd = self.is_odd(i) != self.is_odd(j);
            v.iter().enumerate().all(|(k, c)| c.is_zero() || self.is_odd(k) == target_odd)
        })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Structure<S> {
        let mut constants = BTreeMap::new();
        for (k, v) in &self.constants {
            let w: Vec<S> = v.iter().map(&f).collect();
            if !ring::is_zero_vec(&w) {
                constants.insert(*k, w);
            }
        }
        Structure { names: self.names.clone(), n_even: self.n_even, constants }
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// Returns a copy with basis vectors renamed (same order and parity).
    pub fn renamed<S: AsRef<str>>(&self, names: &[S]) -> Result<Self> {
        let even: Vec<&str> = names[..self.n_even].iter().map(AsRef::as_ref).collect();
        let odd: Vec<&str> = names[self.n_even..].iter().map(AsRef::as_ref).collect();
        let mut out = Structure::new(&even, &odd)?;
        out.constants = self.constants.clone();
        Ok(out)
    }
}

/// One failing triple of the super Jacobi identity.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiViolation<R> {
    pub triple: (usize, usize, usize),
    pub residual: Vec<R>,
}

/// Super Jacobi residual for basis vectors `x_i, x_j, x_k`:
/// `(-1)^{ik}[x,[y,z]] + (-1)^{ij}[y,[z,x]] + (-1)^{jk}[z,[x,y]]`.
pub fn jacobi_residual<R: Ring>(alg: &Structure<R>, table: &[Vec<Vec<R>>], i: usize, j: usize, k: usize) -> Vec<R> {
    let (pi, pj, pk) = (alg.is_odd(i), alg.is_odd(j), alg.is_odd(k));
    let mut out = ring::zero_vec(alg.dim());
    let mut term = |a: usize, b: usize, c: usize, neg: bool| {
        // (-1)^.. [x_a, [x_b, x_c]]
        for (l, coeff) in table[b][c].iter().enumerate() {
            if !coeff.is_zero() {
                ring::add_scaled(&mut out, &coeff.signed(neg), &table[a][l]);
            }
        }
    };
    term(i, j, k, pi && pk);
    term(j, k, i, pi && pj);
    term(k, i, j, pj && pk);
    out
}

/// All basis multisets `i <= j <= k`, the order in which Jacobi is checked.
pub fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                out.push((i, j, k));
            }
        }
    }
    out
}

pub fn super_jacobi_violations<R: Ring>(alg: &Structure<R>, exec: Exec) -> Vec<JacobiViolation<R>> {
    let table = alg.bracket_table();
    let ts = triples(alg.dim());
    exec.map(&ts, |&(i, j, k)| {
        let residual = jacobi_residual(alg, &table, i, j, k);
        (!ring::is_zero_vec(&residual)).then_some(JacobiViolation { triple: (i, j, k), residual })
    })
    .into_iter()
    .flatten()
    .collect()
}

pub fn is_lie_superalgebra(alg: &SuperAlgebra) -> bool {
    super_jacobi_violations(alg, Exec::Sequential).is_empty()
}

impl SuperAlgebra {
    /// Matrix of `x -> [x, b]`: column `i` is `[x_i, b]`.
    fn right_multiplication(&self, b: usize) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|i| self.basis_bracket(i, b)).collect();
        linalg::transpose(&cols)
    }

    /// Matrix of `ad(x_a)`: column `j` is `[x_a, x_j]`.
    pub fn ad_matrix(&self, a: usize) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| self.basis_bracket(a, j)).collect();
        linalg::transpose(&cols)
    }

    /// `m x m` matrix of `ad(x_a)` on the odd part, in odd-block coordinates.
    pub fn odd_action(&self, a: usize) -> Matrix {
        let off = self.n_even();
        let cols: Vec<Vec<Scalar>> = self.odd_range().map(|c| self.basis_bracket(a, c)[off..].to_vec()).collect();
        linalg::transpose(&cols)
    }

    pub fn even_part(&self) -> Subspace {
        Subspace::coordinate(self.dim(), self.even_range())
    }

    pub fn odd_part(&self) -> Subspace {
        Subspace::coordinate(self.dim(), self.odd_range())
    }

    /// `span{[u, w] : u in U, w in W}`.
    pub fn bracket_span(&self, u: &Subspace, w: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for a in u.basis() {
            for b in w.basis() {
                let v = self.bracket(a, b).expect("ambient dimension");
                if !ring::is_zero_vec(&v) {
                    vs.push(v);
                }
            }
        }
        Subspace::span(self.dim(), &vs)
    }

    /// Graded center, the kernel of the stacked right multiplications.
    pub fn center(&self) -> Subspace {
        let mut stacked = Vec::new();
        for b in 0..self.dim() {
            stacked.extend(self.right_multiplication(b));
        }
        Subspace::span(self.dim(), &linalg::kernel(&stacked, self.dim()))
    }

    /// `(even, odd)` dimensions of the center.
    pub fn center_dims(&self) -> (usize, usize) {
        self.center().split_dims(self.n_even())
    }

    /// `C^0 = whole, C^{k+1} = [C^k, whole]` until it stabilizes; `restrict_to_even`
    /// runs the series of the even Lie algebra alone.
    pub fn lower_central_series(&self, restrict_to_even: bool) -> Vec<Subspace> {
        let whole = if restrict_to_even { self.even_part() } else { Subspace::whole(self.dim()) };
        let mut series = vec![whole.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_span(last, &whole);
            if &next == last {
                break;
            }
            let done = next.is_zero();
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    pub fn lower_central_dims(&self, restrict_to_even: bool) -> Vec<usize> {
        self.lower_central_series(restrict_to_even).iter().map(Subspace::dim).collect()
    }

    pub fn is_nilpotent(&self, restrict_to_even: bool) -> bool {
        self.lower_central_series(restrict_to_even).last().is_some_and(Subspace::is_zero)
    }

    /// Transports the structure along the coordinate map `P`: the result satisfies
    /// `[Px, Py]' = P [x, y]`.
    pub fn change_basis(&self, p: &Matrix) -> Result<SuperAlgebra> {
        let n = self.dim();
        check_parity_preserving(p, n, self.n_even())?;
        let pinv = linalg::inverse(p)?;
        let cols = linalg::transpose(&pinv);
        let mut out = Structure::new(self.even_names(), self.odd_names())?;
        for i in 0..n {
            for j in i..n {
                let v = self.bracket(&cols[i], &cols[j])?;
                out.set_bracket(i, j, linalg::mat_vec(p, &v))?;
            }
        }
        Ok(out)
    }

    /// Same structure constants (names are ignored).
    pub fn same_constants(&self, other: &SuperAlgebra) -> bool {
        self.n_even() == other.n_even() && self.dim() == other.dim() && self.constants == other.constants
    }
}

pub fn check_parity_preserving(p: &Matrix, n: usize, n_even: usize) -> Result<()> {
    if p.len() != n || p.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension { expected: n, got: p.len() });
    }
    for (i, row) in p.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if (i < n_even) != (j < n_even) && !c.is_zero() {
                return Err(Error::ParityMixing);
            }
        }
    }
    Ok(())
}

/// Coordinate map sending old coordinates to coordinates in the basis whose
/// vectors (given in old coordinates) are `new_basis`, i.e. the inverse of the
/// matrix with those columns.
pub fn coordinate_change(new_basis: &[Vec<Scalar>]) -> Result<Matrix> {
    linalg::inverse(&linalg::transpose(new_basis))
}

/// Orthogonal direct sum. Basis order: evens of `a`, evens of `b`, odds of `a`,
/// odds of `b`. Clashing names get `_1` / `_2` suffixes.
pub fn direct_sum(a: &SuperAlgebra, b: &SuperAlgebra, ba: &OddForm, bb: &OddForm) -> Result<(SuperAlgebra, OddForm)> {
    for (alg, form) in [(a, ba), (b, bb)] {
        if !crate::forms::verify_odd_quadratic(alg, form, Exec::Sequential).passed() {
            return Err(Error::Invalid("direct summand is not odd-quadratic".into()));
        }
    }
    let clash = a.names().iter().any(|n| b.names().contains(n));
    let tag = |n: &String, s: &str| if clash { format!("{n}_{s}") } else { n.clone() };
    let even: Vec<String> = a.even_names().iter().map(|n| tag(n, "1")).chain(b.even_names().iter().map(|n| tag(n, "2"))).collect();
    let odd: Vec<String> = a.odd_names().iter().map(|n| tag(n, "1")).chain(b.odd_names().iter().map(|n| tag(n, "2"))).collect();
    let (na, nb) = (a.n_even(), b.n_even());
    let (ma, mb) = (a.m_odd(), b.m_odd());
    let n = na + nb;
    let embed_a = |i: usize| if i < na { i } else { n + (i - na) };
    let embed_b = |i: usize| if i < nb { na + i } else { n + ma + (i - nb) };
    let mut out = Structure::new(&even, &odd)?;
    let dim = out.dim();
    for (alg, embed) in [(a, &embed_a as &dyn Fn(usize) -> usize), (b, &embed_b)] {
        for (&(i, j), v) in alg.constants() {
            let mut w = ring::zero_vec(dim);
            for (k, c) in v.iter().enumerate() {
                w[embed(k)] = c.clone();
            }
            out.set_bracket(embed(i), embed(j), w)?;
        }
    }
    let mut pairing = linalg::zeros(n, ma + mb);
    for i in 0..na {
        for j in 0..ma {
            pairing[i][j] = ba.pairing()[i][j].clone();
        }
    }
    for i in 0..nb {
        for j in 0..mb {
            pairing[na + i][ma + j] = bb.pairing()[i][j].clone();
        }
    }
    Ok((out, OddForm::new(n, ma + mb, pairing)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn sign_completion() {
        let g = catalog::g6(0).algebra;
        let x1 = ring::unit_vec::<Scalar>(6, 0);
        let x2 = ring::unit_vec::<Scalar>(6, 1);
        assert_eq!(g.bracket(&x1, &x2).unwrap(), ring::unit_vec(6, 2));
        assert_eq!(g.bracket(&x2, &x1).unwrap(), ring::vec_scale(&s(-1), &ring::unit_vec(6, 2)));
        let g1 = catalog::g6(1).algebra;
        let e3 = ring::unit_vec::<Scalar>(6, 3);
        assert_eq!(g1.bracket(&e3, &e3).unwrap(), ring::unit_vec(6, 2));
    }

    #[test]
    fn grading_is_enforced() {
        let mut g = SuperAlgebra::new(&["X"], &["e"]).unwrap();
        assert!(matches!(g.set("X", "e", &[("X", s(1))]), Err(Error::Grading { .. })));
        assert!(matches!(g.set("X", "X", &[] as &[(&str, Scalar)]), Ok(())));
        let mut h = SuperAlgebra::new(&["X", "Y"], &[]).unwrap();
        assert!(h.set("X", "Y", &[("Y", s(1))]).is_ok());
        assert!(SuperAlgebra::new(&["X"], &["X"]).is_err());
    }

    #[test]
    fn even_diagonal_rejected() {
        let mut g = SuperAlgebra::new(&["X", "Y"], &[]).unwrap();
        assert_eq!(g.set("X", "X", &[("Y", s(1))]), Err(Error::EvenDiagonal("X".into())));
    }

    #[test]
    fn mutated_g6_breaks_jacobi_at_e3_cubed() {
        let mut g = catalog::g6(0).algebra;
        g.set("e3", "e3", &[("X1", s(1))]).unwrap();
        let v = super_jacobi_violations(&g, Exec::Sequential);
        assert!(v.iter().any(|x| x.triple == (3, 3, 3)));
    }

    #[test]
    fn center_of_g06() {
        let g = catalog::g6(0).algebra;
        assert_eq!(g.center(), Subspace::coordinate(6, [2, 4, 5]));
    }

    #[test]
    fn series_examples() {
        let g08 = catalog::g8(0).algebra;
        assert_eq!(g08.lower_central_dims(true), vec![4, 2, 1, 0]);
        let g16 = catalog::g6(1).algebra;
        assert_eq!(g16.lower_central_dims(false), vec![6, 3, 0]);
        let mut aff = SuperAlgebra::new(&["X", "Y"], &[]).unwrap();
        aff.set("X", "Y", &[("Y", s(1))]).unwrap();
        assert!(!aff.is_nilpotent(true));
        assert_eq!(aff.lower_central_dims(true), vec![2, 1]);
        let zero = SuperAlgebra::new::<&str>(&[], &[]).unwrap();
        assert!(zero.is_nilpotent(false));
    }

    #[test]
    fn change_basis_checks() {
        let g = catalog::g6(0).algebra;
        assert_eq!(g.change_basis(&linalg::identity(6)).unwrap(), g);
        let mut p = linalg::identity(6);
        p[0][3] = s(1);
        assert_eq!(g.change_basis(&p), Err(Error::ParityMixing));
        let mut q = linalg::identity(6);
        q[1][1] = Scalar::zero();
        assert_eq!(g.change_basis(&q), Err(Error::Singular));
    }

    #[test]
    fn direct_sum_center_adds() {
        let a = catalog::g6(0);
        let b = catalog::abelian2();
        let (sum, form) = direct_sum(&a.algebra, &b.algebra, a.form.as_ref().unwrap(), b.form.as_ref().unwrap()).unwrap();
        assert_eq!(sum.dim(), 8);
        assert_eq!(sum.center().dim(), 3 + 2);
        assert!(crate::forms::verify_odd_quadratic(&sum, &form, Exec::Sequential).passed());
    }
}
