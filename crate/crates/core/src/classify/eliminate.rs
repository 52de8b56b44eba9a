//! Linear substitution with case splits on `variable * factor` residuals.

use std::collections::BTreeMap;

use crate::exec::Exec;
use crate::poly::{inter_reduce, Poly, Var};

/// Fully reduced substitution: no key occurs in any value.
pub type Substitution = BTreeMap<Var, Poly>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElimError {
    #[error("empty variety branch: constraint reduces to the nonzero constant {0}")]
    EmptyBranch(String),
    #[error("residual {0} is neither linear in a variable nor divisible by one")]
    Unsplittable(String),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Elimination {
    pub subs: Substitution,
    /// Remaining constraints, inter-reduced and monic.
    pub residuals: Vec<Poly>,
}

/// One leaf of the case-split tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub subs: Substitution,
    /// Factors assumed zero along the way, outermost first.
    pub assumptions: Vec<Poly>,
}

pub fn apply(subs: &Substitution, p: &Poly) -> Poly {
    p.substitute_all(subs)
}

pub fn eliminate(constraints: &[Poly]) -> Result<Elimination, ElimError> {
    eliminate_from(Substitution::new(), constraints)
}

/// Extends `subs` by every constraint that is linear in some variable with a
/// constant coefficient. The highest-indexed such variable goes first, ties
/// broken by the shortest constraint.
pub fn eliminate_from(mut subs: Substitution, constraints: &[Poly]) -> Result<Elimination, ElimError> {
    let mut pending: Vec<Poly> = constraints.iter().map(|p| apply(&subs, p)).filter(|p| !p.is_empty()).collect();
    loop {
        pending = inter_reduce(&pending);
        if let Some(c) = pending.iter().find(|p| p.is_constant()) {
            return Err(ElimError::EmptyBranch(c.to_string()));
        }
        let mut best: Option<(Var, usize, usize)> = None;
        for (idx, p) in pending.iter().enumerate() {
            for v in p.vars() {
                if p.linear_in(v).is_none() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bv, blen, _)) => v > bv || (v == bv && p.len() < blen),
                };
                if better {
                    best = Some((v, p.len(), idx));
                }
            }
        }
        let Some((v, _, idx)) = best else {
            return Ok(Elimination { subs, residuals: pending });
        };
        let value = pending[idx].solve_for(v).expect("linear by construction");
        for old in subs.values_mut() {
            *old = old.substitute(v, &value);
        }
        subs.insert(v, value.clone());
        pending = pending.iter().map(|p| p.substitute(v, &value)).filter(|p| !p.is_empty()).collect();
    }
}

/// Eliminates, then splits residuals of the form `v * q` into the branches
/// `v = 0` and `q = 0` until none remain. Branches for which `keep` fails are
/// dropped, as are empty ones. Leaves come back in a fixed depth-first order.
pub fn solve_with_splits<K>(start: Substitution, constraints: &[Poly], keep: &K, exec: Exec) -> Result<Vec<Branch>, ElimError>
where
    K: Fn(&Substitution) -> bool + Sync,
{
    match eliminate_from(start, constraints) {
        Ok(e) => split(e, Vec::new(), keep, exec),
        Err(ElimError::EmptyBranch(_)) => Ok(Vec::new()),
        Err(e) => Err(e),
    }
}

fn split<K>(e: Elimination, assumptions: Vec<Poly>, keep: &K, exec: Exec) -> Result<Vec<Branch>, ElimError>
where
    K: Fn(&Substitution) -> bool + Sync,
{
    if !keep(&e.subs) {
        return Ok(Vec::new());
    }
    if e.residuals.is_empty() {
        return Ok(vec![Branch { subs: e.subs, assumptions }]);
    }
    let target = e
        .residuals
        .iter()
        .enumerate()
        .filter_map(|(idx, r)| r.common_var_factor().map(|f| (r.len(), idx, f)))
        .min_by_key(|(len, _, _)| *len);
    let Some((_, idx, (v, q))) = target else {
        return Err(ElimError::Unsplittable(e.residuals[0].to_string()));
    };
    let factors = [Poly::var(v), q];
    let results = exec.map(&factors, |f| {
        // The factor replaces the product it came from.
        let mut cs = e.residuals.clone();
        cs[idx] = f.clone();
        let mut path = assumptions.clone();
        path.push(f.clone());
        match eliminate_from(e.subs.clone(), &cs) {
            Ok(next) => split(next, path, keep, exec),
            Err(ElimError::EmptyBranch(_)) => Ok(Vec::new()),
            Err(err) => Err(err),
        }
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
