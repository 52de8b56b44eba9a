//! Odd supersymmetric bilinear forms.
//!
//! Only the even-by-odd block `M[i][j] = B(even_i, odd_j)` is stored. The
//! even-even and odd-odd blocks vanish by construction and `B(odd_j, even_i)`
//! reads the same entry, so oddness and supersymmetry cannot fail.

use serde_json::json;

use crate::algebra::{Structure, SuperAlgebra};
use crate::cert::{Certificate, Report};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::{self, Matrix, Subspace};
use crate::ring::{self, Ring};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Form<R> {
    n_even: usize,
    m_odd: usize,
    pairing: Vec<Vec<R>>,
}

pub type OddForm = Form<Scalar>;

impl<R: Ring> Form<R> {
    pub fn new(n_even: usize, m_odd: usize, pairing: Vec<Vec<R>>) -> Result<Self> {
        if pairing.len() != n_even {
            return Err(Error::Dimension { expected: n_even, got: pairing.len() });
        }
        if let Some(r) = pairing.iter().find(|r| r.len() != m_odd) {
            return Err(Error::Dimension { expected: m_odd, got: r.len() });
        }
        Ok(Form { n_even, m_odd, pairing })
    }

    pub fn zero(n_even: usize, m_odd: usize) -> Self {
        Form { n_even, m_odd, pairing: vec![ring::zero_vec(m_odd); n_even] }
    }

    /// Builds a form on `alg` from `(even name, odd name, value)` entries.
    pub fn from_entries<S: Ring>(alg: &Structure<S>, entries: &[(&str, &str, R)]) -> Result<Self> {
        let mut f = Self::zero(alg.n_even(), alg.m_odd());
        for (x, y, v) in entries {
            f.set_named(alg, x, y, v.clone())?;
        }
        Ok(f)
    }

    pub fn set_named<S: Ring>(&mut self, alg: &Structure<S>, x: &str, y: &str, v: R) -> Result<()> {
        let (mut i, mut j) = (alg.index(x)?, alg.index(y)?);
        if alg.is_odd(i) && !alg.is_odd(j) {
            std::mem::swap(&mut i, &mut j);
        }
        if alg.is_odd(i) || !alg.is_odd(j) {
            return Err(Error::Invalid(format!("form entry ({x}, {y}) must pair an even with an odd vector")));
        }
        self.pairing[i][j - alg.n_even()] = v;
        Ok(())
    }

    pub fn n_even(&self) -> usize {
        self.n_even
    }

    pub fn m_odd(&self) -> usize {
        self.m_odd
    }

    pub fn pairing(&self) -> &[Vec<R>] {
        &self.pairing
    }

    /// `B(x_i, x_j)` for global basis indices.
    pub fn basis_value(&self, i: usize, j: usize) -> R {
        let n = self.n_even;
        match (i < n, j < n) {
            (true, false) => self.pairing[i][j - n].clone(),
            (false, true) => self.pairing[j][i - n].clone(),
            _ => R::zero(),
        }
    }

    pub fn eval(&self, x: &[R], y: &[R]) -> R {
        let n = self.n_even;
        let mut acc = R::zero();
        for i in 0..n {
            for j in 0..self.m_odd {
                let m = &self.pairing[i][j];
                if m.is_zero() {
                    continue;
                }
                let t = x[i].times(&y[n + j]).plus(&x[n + j].times(&y[i]));
                acc = acc.fma(m, &t);
            }
        }
        acc
    }

    /// Full Gram matrix over the whole basis.
    pub fn gram(&self) -> Vec<Vec<R>> {
        let d = self.n_even + self.m_odd;
        (0..d).map(|i| (0..d).map(|j| self.basis_value(i, j)).collect()).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Form<S> {
        Form { n_even: self.n_even, m_odd: self.m_odd, pairing: self.pairing.iter().map(|r| r.iter().map(&f).collect()).collect() }
    }
}

/// `B([x_i, x_j], x_k) - B(x_i, [x_j, x_k])`.
pub fn invariance_residual<R: Ring>(form: &Form<R>, table: &[Vec<Vec<R>>], i: usize, j: usize, k: usize) -> R {
    let n = table.len();
    let unit = |t: usize| ring::unit_vec::<R>(n, t);
    form.eval(&table[i][j], &unit(k)).minus(&form.eval(&unit(i), &table[j][k]))
}

/// Ordered basis triples where invariance fails, with the residual value.
pub fn invariance_violations<R: Ring>(alg: &Structure<R>, form: &Form<R>, exec: Exec) -> Vec<((usize, usize, usize), R)> {
    let table = alg.bracket_table();
    let n = alg.dim();
    let triples: Vec<(usize, usize, usize)> = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect();
    exec.map(&triples, |&(i, j, k)| {
        let r = invariance_residual(form, &table, i, j, k);
        (!r.is_zero()).then_some(((i, j, k), r))
    })
    .into_iter()
    .flatten()
    .collect()
}

impl OddForm {
    pub fn is_nondegenerate(&self) -> bool {
        self.n_even == self.m_odd && !linalg::det(&self.pairing).is_zero()
    }

    /// Form in the coordinates produced by `alg.change_basis(p)`:
    /// `B'(x, y) = B(P^{-1} x, P^{-1} y)`.
    pub fn change_basis(&self, p: &Matrix) -> Result<OddForm> {
        let d = self.n_even + self.m_odd;
        crate::algebra::check_parity_preserving(p, d, self.n_even)?;
        let pinv = linalg::inverse(p)?;
        let g = linalg::mat_mul(&linalg::mat_mul(&linalg::transpose(&pinv), &self.gram()), &pinv);
        let pairing = (0..self.n_even).map(|i| g[i][self.n_even..].to_vec()).collect();
        OddForm::new(self.n_even, self.m_odd, pairing)
    }
}

fn triple_names(alg: &SuperAlgebra, (i, j, k): (usize, usize, usize)) -> serde_json::Value {
    json!([alg.name(i), alg.name(j), alg.name(k)])
}

/// Invariance over all ordered basis triples plus non-degeneracy of the pairing.
pub fn verify_odd_quadratic(alg: &SuperAlgebra, form: &OddForm, exec: Exec) -> Report {
    let violations: Vec<serde_json::Value> =
        invariance_violations(alg, form, exec).into_iter().map(|(t, r)| json!({ "triple": triple_names(alg, t), "residual": r })).collect();
    let invariance = Certificate::from_violations("invariance", violations);
    let nondeg = if form.n_even != form.m_odd {
        Certificate::fail("non-degeneracy", json!({ "reason": "pairing is not square" }))
    } else {
        let d = linalg::det(&form.pairing);
        Certificate::from_bool("non-degeneracy", !d.is_zero(), json!({ "det": d }))
    };
    Report::new(vec![invariance, nondeg])
}

/// Jacobi certificate in the same shape as the form checks.
pub fn verify_jacobi(alg: &SuperAlgebra, exec: Exec) -> Certificate {
    let violations = crate::algebra::super_jacobi_violations(alg, exec)
        .into_iter()
        .map(|v| {
            let residual: serde_json::Map<String, serde_json::Value> =
                v.residual.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (alg.name(k).to_string(), json!(c))).collect();
            json!({ "triple": triple_names(alg, v.triple), "residual": residual })
        })
        .collect();
    Certificate::from_violations("jacobi", violations)
}

/// Graded skewness of every `ad(x_a)`:
/// `B([a,x],y) + (-1)^{|a||x|} B(x,[a,y]) = 0`; equivalent to invariance.
pub fn ad_skew_violations(alg: &SuperAlgebra, form: &OddForm) -> Vec<(usize, usize, usize)> {
    let table = alg.bracket_table();
    let n = alg.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for x in 0..n {
            for y in 0..n {
                let unit = |t: usize| ring::unit_vec::<Scalar>(n, t);
                let lhs = form.eval(&table[a][x], &unit(y));
                let rhs = form.eval(&unit(x), &table[a][y]);
                let neg = alg.is_odd(a) && alg.is_odd(x);
                if !(&lhs + &rhs.signed(neg)).is_zero() {
                    out.push((a, x, y));
                }
            }
        }
    }
    out
}

/// Orthogonal of a subspace and whether it is isotropic.
#[derive(Debug, Clone, PartialEq)]
pub struct Orthogonal {
    pub complement: Subspace,
    pub isotropic: bool,
}

pub fn orthogonal_complement(form: &OddForm, sub: &Subspace) -> Result<Orthogonal> {
    if !form.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let g = form.gram();
    let rows: Matrix = sub.basis().iter().map(|v| linalg::mat_vec(&g, v)).collect();
    let d = sub.ambient();
    let complement = Subspace::span(d, &linalg::kernel(&rows, d));
    let isotropic = complement.contains_subspace(sub);
    Ok(Orthogonal { complement, isotropic })
}

/// The module isomorphism `X -> B(X, .)` from the even part to the dual of the
/// odd part: square shape, invertibility, equivariance for the dual action
/// `(A.f)(v) = -f([A, v])`, and `B([X,Y],Z) = B([Y,Z],X)` on odd triples.
pub fn phi_module_check(alg: &SuperAlgebra, form: &OddForm) -> Report {
    let (n, m) = (alg.n_even(), alg.m_odd());
    if n != m {
        return Report::new(vec![Certificate::fail(
            "phi-dimensions",
            json!({ "n_even": n, "m_odd": m, "reason": "odd-quadratic forces equal dimensions" }),
        )]);
    }
    let mut certs = vec![Certificate::pass("phi-dimensions")];
    let d = linalg::det(form.pairing());
    certs.push(Certificate::from_bool("phi-invertible", !d.is_zero(), json!({ "det": d })));
    let table = alg.bracket_table();
    let unit = |t: usize| ring::unit_vec::<Scalar>(alg.dim(), t);
    let mut equiv = Vec::new();
    for a in alg.even_range() {
        for x in alg.even_range() {
            for v in alg.odd_range() {
                let lhs = form.eval(&table[a][x], &unit(v));
                let rhs = -form.eval(&unit(x), &table[a][v]);
                if lhs != rhs {
                    equiv.push(json!([alg.name(a), alg.name(x), alg.name(v)]));
                }
            }
        }
    }
    certs.push(Certificate::from_violations("phi-equivariance", equiv));
    let mut sym = Vec::new();
    for x in alg.odd_range() {
        for y in alg.odd_range() {
            for z in alg.odd_range() {
                let lhs = form.eval(&table[x][y], &unit(z));
                let rhs = form.eval(&table[y][z], &unit(x));
                if lhs != rhs {
                    sym.push(json!([alg.name(x), alg.name(y), alg.name(z)]));
                }
            }
        }
    }
    certs.push(Certificate::from_violations("phi-symmetry", sym));
    Report::new(certs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn g06_with_lambda_one_passes() {
        let e = catalog::g6(0);
        assert!(verify_odd_quadratic(&e.algebra, e.form.as_ref().unwrap(), Exec::Sequential).passed());
    }

    #[test]
    fn g08_passes() {
        let e = catalog::g8(0);
        assert!(verify_odd_quadratic(&e.algebra, e.form.as_ref().unwrap(), Exec::Sequential).passed());
    }

    #[test]
    fn lambda_zero_is_degenerate() {
        let g = catalog::g6(0).algebra;
        let f = OddForm::from_entries(&g, &[("X1", "v2", Scalar::one()), ("X2", "u2", -Scalar::one())]).unwrap();
        let r = verify_odd_quadratic(&g, &f, Exec::Sequential);
        assert!(!r.get("non-degeneracy").unwrap().passed());
    }

    #[test]
    fn supersymmetric_by_construction() {
        let e = catalog::g8(2);
        let f = e.form.unwrap();
        let g = f.gram();
        assert_eq!(g, linalg::transpose(&g));
    }

    #[test]
    fn complement_examples() {
        let e = catalog::g8(0);
        let f = e.form.as_ref().unwrap();
        let z0 = e.algebra.center().intersection(&e.algebra.even_part());
        let o = orthogonal_complement(f, &z0).unwrap();
        let g0_plus = e.algebra.even_part().sum(&e.algebra.bracket_span(&e.algebra.even_part(), &e.algebra.odd_part()));
        assert_eq!(o.complement.dim(), 7);
        assert_eq!(o.complement, g0_plus);
        assert!(o.isotropic);
        let whole = Subspace::whole(8);
        assert!(orthogonal_complement(f, &whole).unwrap().complement.is_zero());

        let e6 = catalog::g6(0);
        let span_e3 = Subspace::coordinate(6, [3]);
        let c = orthogonal_complement(e6.form.as_ref().unwrap(), &span_e3).unwrap().complement;
        assert!(!c.contains(&ring::unit_vec(6, 2)));
        assert_eq!(c.dim(), 5);
    }

    #[test]
    fn complement_rejects_degenerate() {
        let g = catalog::g6(0).algebra;
        let f = OddForm::zero(3, 3);
        assert_eq!(orthogonal_complement(&f, &Subspace::zero(6)), Err(Error::Degenerate));
        let _ = g;
    }

    #[test]
    fn phi_checks() {
        let e = catalog::g6(1);
        assert!(phi_module_check(&e.algebra, e.form.as_ref().unwrap()).passed());
        let a = catalog::abelian2();
        assert!(phi_module_check(&a.algebra, a.form.as_ref().unwrap()).passed());
    }

    #[test]
    fn change_basis_keeps_invariance() {
        let e = catalog::g8(2);
        let mut p = linalg::identity(8);
        p[1][2] = Scalar::from_int(3);
        p[5][6] = Scalar::from_frac(1, 2);
        let alg = e.algebra.change_basis(&p).unwrap();
        let f = e.form.unwrap().change_basis(&p).unwrap();
        assert!(verify_odd_quadratic(&alg, &f, Exec::Sequential).passed());
    }
}
