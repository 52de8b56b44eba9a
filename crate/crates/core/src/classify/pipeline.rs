//! The classification pipeline for dimensions 6 and 8.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{coordinate_change, SuperAlgebra};
use crate::catalog;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::forms::{verify_jacobi, verify_odd_quadratic, OddForm};
use crate::linalg::{det_expand, identity, mat_mul, Matrix};
use crate::poly::{Poly, Var};
use crate::ring::{unit_vec, Ring};
use crate::scalar::{adjoin_sqrt, Scalar};

use super::constraints::{invariance_constraints, jacobi_constraints};
use super::eliminate::{solve_with_splits, Substitution};
use super::fingerprint::{fingerprint, verify_witness_isomorphism, Fingerprint};
use super::tables::skeleton;
use super::{instantiate_form, substitute_form, ParamAlgebra, ParamForm};

/// Values tried for every free bracket parameter.
const GRID: [i64; 4] = [0, 1, 2, -3];

/// A surviving case-split leaf.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchSummary {
    pub assumptions: Vec<String>,
    pub substitutions: Vec<(String, String)>,
    pub free_bracket_parameters: Vec<String>,
    pub free_form_parameters: Vec<String>,
}

/// One isomorphism class with the sample it was first reached from.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassRecord {
    pub name: Option<String>,
    pub algebra: SuperAlgebra,
    pub form: OddForm,
    pub fingerprint: Fingerprint,
    pub sample: SuperAlgebra,
    pub sample_values: BTreeMap<String, Scalar>,
    /// Coordinate map from the sample to the normal form.
    pub witness: Matrix,
    pub witness_verified: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub dim: usize,
    pub branches: Vec<BranchSummary>,
    pub samples: usize,
    pub classes: Vec<ClassRecord>,
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn is_form_var(p: &ParamAlgebra, v: Var) -> bool {
    let name = p.vars.name(v);
    name.starts_with("B_") || matches!(name, "lambda" | "alpha" | "beta")
}

/// Runs constraints, splits, sampling, normalization and catalog matching.
pub fn classify_dimension(n: usize, exec: Exec) -> Result<Classification> {
    let (p, form) = skeleton(n)?;
    check_even_part(&p, n)?;
    let internal = |e: super::ElimError| Error::Internal(e.to_string());

    let jac = jacobi_constraints(&p);
    let jbranches = solve_with_splits(Substitution::new(), &jac, &|_| true, exec).map_err(internal)?;

    let keep = |subs: &Substitution| !det_expand(substitute_form(&form, subs).pairing()).is_empty();
    let mut leaves = Vec::new();
    for jb in jbranches {
        let q = p.substituted(&jb.subs);
        let f = substitute_form(&form, &jb.subs);
        let inv = invariance_constraints(&q, &f);
        for mut leaf in solve_with_splits(jb.subs.clone(), &inv, &keep, exec).map_err(internal)? {
            let mut path = jb.assumptions.clone();
            path.append(&mut leaf.assumptions);
            leaf.assumptions = path;
            leaves.push(leaf);
        }
    }

    let mut branches = Vec::new();
    let mut samples = Vec::new();
    for leaf in &leaves {
        let q = p.substituted(&leaf.subs);
        let f = substitute_form(&form, &leaf.subs);
        let bracket_free: Vec<Var> = q.free_vars().into_iter().collect();
        let form_free: Vec<Var> = f
            .pairing()
            .iter()
            .flatten()
            .flat_map(Poly::vars)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .filter(|v| !bracket_free.contains(v))
            .collect();
        if let Some(&v) = bracket_free.iter().find(|&&v| is_form_var(&p, v)) {
            return Err(Error::Internal(format!("form entry {} leaked into the brackets", p.vars.name(v))));
        }
        branches.push(BranchSummary {
            assumptions: leaf.assumptions.iter().map(|a| p.render(a)).collect(),
            substitutions: leaf.subs.iter().map(|(v, e)| (p.vars.name(*v).to_string(), p.render(e))).collect(),
            free_bracket_parameters: bracket_free.iter().map(|&v| p.vars.name(v).to_string()).collect(),
            free_form_parameters: form_free.iter().map(|&v| p.vars.name(v).to_string()).collect(),
        });
        for point in grid_points(bracket_free.len()) {
            let mut values: BTreeMap<Var, Scalar> = bracket_free.iter().copied().zip(point).collect();
            for &v in &form_free {
                values.insert(v, if p.vars.name(v) == "lambda" { s(1) } else { s(0) });
            }
            samples.push((q.clone(), f.clone(), values));
        }
    }

    let evaluated = exec.map(&samples, |(q, f, values)| sample_class(n, q, f, values));
    let mut classes: Vec<ClassRecord> = Vec::new();
    let mut count = 0;
    for r in evaluated {
        let Some(rec) = r? else { continue };
        count += 1;
        if !classes.iter().any(|c| c.algebra.same_constants(&rec.algebra)) {
            classes.push(rec);
        }
    }
    classes.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(Classification { dim: n, branches, samples: count, classes })
}

fn grid_points(k: usize) -> Vec<Vec<Scalar>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|pt| GRID.iter().map(move |&g| [pt.clone(), vec![s(g)]].concat())).collect();
    }
    out
}

/// The fixed even part must be nilpotent with one-dimensional center.
fn check_even_part(p: &ParamAlgebra, n: usize) -> Result<()> {
    let k = p.structure.n_even();
    let mut g0 = crate::algebra::Structure::<Scalar>::new(p.structure.even_names(), &[] as &[String])?;
    for i in 0..k {
        for j in i + 1..k {
            let v = p.structure.basis_bracket(i, j);
            let w: Option<Vec<Scalar>> = v[..k].iter().map(|c| c.constant_value().map(Scalar::from_rational)).collect();
            let w = w.ok_or_else(|| Error::Internal("even part of the skeleton is parametric".into()))?;
            g0.set_bracket(i, j, w)?;
        }
    }
    if !g0.is_nilpotent(false) || g0.center().dim() != 1 {
        return Err(Error::Internal(format!("dimension-{n} skeleton has an unexpected even part")));
    }
    Ok(())
}

fn sample_class(n: usize, q: &ParamAlgebra, f: &ParamForm, values: &BTreeMap<Var, Scalar>) -> Result<Option<ClassRecord>> {
    let alg = q.instantiate(values)?;
    let form = instantiate_form(&q.vars, f, values)?;
    if !form.is_nondegenerate() {
        return Ok(None);
    }
    if !verify_jacobi(&alg, Exec::Sequential).passed() || !verify_odd_quadratic(&alg, &form, Exec::Sequential).passed() {
        return Err(Error::Internal("a solved branch produced an invalid sample".into()));
    }
    let witness = if n == 6 { normalize6(&alg)? } else { normalize8(&alg)? };
    let normal = alg.change_basis(&witness)?;
    let nform = form.change_basis(&witness)?;
    let targets: Vec<(String, SuperAlgebra)> = if n == 6 {
        (0..2).map(|d| (format!("g{d}_6"), catalog::g6(d).algebra)).collect()
    } else {
        (0..3).map(|v| (format!("g{v}_8"), catalog::g8(v).algebra)).collect()
    };
    let hit = targets.iter().find(|(_, t)| t.same_constants(&normal));
    let witness_verified = match hit {
        Some((_, t)) => verify_witness_isomorphism(&alg, t, &witness)?,
        None => false,
    };
    Ok(Some(ClassRecord {
        name: hit.map(|(name, _)| name.clone()),
        fingerprint: fingerprint(&normal),
        algebra: normal,
        form: nform,
        sample: alg,
        sample_values: values.iter().map(|(v, c)| (q.vars.name(*v).to_string(), c.clone())).collect(),
        witness,
        witness_verified,
    }))
}

fn coeff(alg: &SuperAlgebra, x: &str, y: &str, z: &str) -> Result<Scalar> {
    Ok(alg.basis_bracket(alg.index(x)?, alg.index(y)?)[alg.index(z)?].clone())
}

/// Coordinate map for the basis whose odd vectors are divided by `sqrt(c)`.
fn odd_scale(alg: &SuperAlgebra, c: &Scalar) -> Result<Matrix> {
    let r = c.as_rational().ok_or_else(|| Error::Internal("irrational scale parameter".into()))?;
    let root = adjoin_sqrt(r)?.root;
    let mut p = identity(alg.dim());
    for i in alg.odd_range() {
        p[i][i] = root.clone();
    }
    Ok(p)
}

/// Basis change replacing the vectors listed in `shears` (target, [(source, coefficient)]).
fn shear(alg: &SuperAlgebra, shears: &[(&str, &[(&str, Scalar)])]) -> Result<Matrix> {
    let n = alg.dim();
    let mut basis: Vec<Vec<Scalar>> = (0..n).map(|i| unit_vec(n, i)).collect();
    for (target, terms) in shears {
        let t = alg.index(target)?;
        for (src, c) in terms.iter() {
            let k = alg.index(src)?;
            basis[t][k] = basis[t][k].plus(c);
        }
    }
    coordinate_change(&basis)
}

fn then(alg: &mut SuperAlgebra, acc: &mut Matrix, step: Matrix) -> Result<()> {
    *alg = alg.change_basis(&step)?;
    *acc = mat_mul(&step, acc);
    Ok(())
}

/// Dimension 6: `[e3,e3] = c X3` with `c != 0` is scaled to `c = 1`.
fn normalize6(alg: &SuperAlgebra) -> Result<Matrix> {
    let c = coeff(alg, "e3", "e3", "X3")?;
    if c.is_zero() {
        Ok(identity(alg.dim()))
    } else {
        odd_scale(alg, &c)
    }
}

/// Dimension 8: shear away `b24`, then scale by `[e4,e4]` and shear away the
/// remaining `X4` component.
fn normalize8(alg: &SuperAlgebra) -> Result<Matrix> {
    let mut cur = alg.clone();
    let mut acc = identity(alg.dim());
    let b24 = coeff(&cur, "X2", "e4", "v2")?;
    if !b24.is_zero() {
        let step = shear(&cur, &[("X2", &[("X3", b24.clone())]), ("X3", &[("X4", b24)])])?;
        then(&mut cur, &mut acc, step)?;
    }
    let a = coeff(&cur, "e4", "e4", "X2")?;
    let b = coeff(&cur, "e4", "e4", "X4")?;
    if !a.is_zero() {
        let step = odd_scale(&cur, &a)?;
        then(&mut cur, &mut acc, step)?;
        let b = coeff(&cur, "e4", "e4", "X4")?;
        if !b.is_zero() {
            let step = shear(&cur, &[("X2", &[("X4", b)])])?;
            then(&mut cur, &mut acc, step)?;
        }
    } else if !b.is_zero() {
        let step = odd_scale(&cur, &b)?;
        then(&mut cur, &mut acc, step)?;
    }
    Ok(acc)
}

/// Brings `[X1,e4] = c14 e3 + a14 u2 + b14 v2` to `[X1,e4] = e3` in a
/// dimension-8 algebra with the skeleton's basis names. When `c14 = 0` the
/// first step uses `X1 + X2` (which needs `d24 != 0`). Returns the normalized
/// algebra and the coordinate map.
pub fn normalize_flag_action(alg: &SuperAlgebra) -> Result<(SuperAlgebra, Matrix)> {
    let mut cur = alg.clone();
    let mut acc = identity(alg.dim());
    if coeff(&cur, "X1", "e4", "e3")?.is_zero() {
        if coeff(&cur, "X2", "e4", "e3")?.is_zero() {
            return Err(Error::Invalid("[X1,e4] and [X2,e4] have no e3 component".into()));
        }
        let step = shear(&cur, &[("X1", &[("X2", s(1))]), ("u2", &[("v2", s(1))])])?;
        then(&mut cur, &mut acc, step)?;
    }
    let c14 = coeff(&cur, "X1", "e4", "e3")?;
    if !c14.is_one() {
        let mut step = identity(cur.dim());
        let e4 = cur.index("e4")?;
        step[e4][e4] = c14;
        then(&mut cur, &mut acc, step)?;
    }
    let (a14, b14) = (coeff(&cur, "X1", "e4", "u2")?, coeff(&cur, "X1", "e4", "v2")?);
    if !a14.is_zero() || !b14.is_zero() {
        let step = shear(&cur, &[("e3", &[("u2", a14), ("v2", b14)])])?;
        then(&mut cur, &mut acc, step)?;
    }
    Ok((cur, acc))
}
