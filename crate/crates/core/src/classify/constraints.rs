//! Polynomial constraints from super Jacobi and invariance.

use crate::algebra::{jacobi_residual, triples};
use crate::exec::Exec;
use crate::forms::invariance_residual;
use crate::poly::Poly;

use super::{ParamAlgebra, ParamForm};

/// Nonzero constraint polynomials produced by one basis triple.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleConstraints {
    pub triple: (usize, usize, usize),
    pub polys: Vec<Poly>,
}

/// Coefficients of the super Jacobi residual of one triple, zeros dropped.
pub fn triple_jacobi(p: &ParamAlgebra, i: usize, j: usize, k: usize) -> Vec<Poly> {
    let table = p.structure.bracket_table();
    jacobi_residual(&p.structure, &table, i, j, k).into_iter().filter(|q| !q.is_empty()).collect()
}

/// Jacobi constraints grouped by basis multiset `i <= j <= k`.
pub fn jacobi_by_triple(p: &ParamAlgebra, exec: Exec) -> Vec<TripleConstraints> {
    let table = p.structure.bracket_table();
    exec.map(&triples(p.structure.dim()), |&(i, j, k)| {
        let polys: Vec<Poly> = jacobi_residual(&p.structure, &table, i, j, k).into_iter().filter(|q| !q.is_empty()).collect();
        (!polys.is_empty()).then_some(TripleConstraints { triple: (i, j, k), polys })
    })
    .into_iter()
    .flatten()
    .collect()
}

pub fn jacobi_constraints(p: &ParamAlgebra) -> Vec<Poly> {
    jacobi_by_triple(p, Exec::default()).into_iter().flat_map(|t| t.polys).collect()
}

/// `B([x_i, x_j], x_k) - B(x_i, [x_j, x_k])` over all ordered triples, zeros dropped.
pub fn invariance_by_triple(p: &ParamAlgebra, form: &ParamForm, exec: Exec) -> Vec<TripleConstraints> {
    let n = p.structure.dim();
    let table = p.structure.bracket_table();
    let ordered: Vec<(usize, usize, usize)> = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect();
    exec.map(&ordered, |&(i, j, k)| {
        let r = invariance_residual(form, &table, i, j, k);
        (!r.is_empty()).then(|| TripleConstraints { triple: (i, j, k), polys: vec![r] })
    })
    .into_iter()
    .flatten()
    .collect()
}

pub fn invariance_constraints(p: &ParamAlgebra, form: &ParamForm) -> Vec<Poly> {
    invariance_by_triple(p, form, Exec::default()).into_iter().flat_map(|t| t.polys).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn numeric_input_degenerates_to_jacobi_check() {
        let ok = ParamAlgebra::from_numeric(&catalog::g6(1).algebra).unwrap();
        assert!(jacobi_constraints(&ok).is_empty());
        let mut bad = catalog::g6(0).algebra;
        bad.set("e3", "u2", &[("X1", crate::Scalar::one())]).unwrap();
        let p = ParamAlgebra::from_numeric(&bad).unwrap();
        let cs = jacobi_constraints(&p);
        assert!(!cs.is_empty() && cs.iter().all(Poly::is_constant));
    }

    #[test]
    fn zero_form_gives_no_invariance_constraints() {
        let p = ParamAlgebra::from_numeric(&catalog::g8(1).algebra).unwrap();
        let zero = ParamForm::zero(4, 4);
        assert!(invariance_constraints(&p, &zero).is_empty());
    }
}
