//! Exhaustive grid search for odd-quadratic algebras with a filiform odd part
//! and `dim g0 = dim g1 = n`.
//!
//! The even part is fixed per `n` (1: the line; 2: `[X1,X2] = c1 X1 + c2 X2`
//! over the grid; 3: Heisenberg). The even part acts on `e1..en` by strictly
//! upper-triangular matrices with grid entries. Assignments are pruned in
//! order: module axiom, filiform chain, existence of a non-degenerate pairing
//! invariant on (even, even, odd) triples. Survivors get odd-odd brackets from
//! the grid and a full check.

use serde::Serialize;

use crate::algebra::{jacobi_residual, super_jacobi_violations, Structure, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::flags::detect_filiform;
use crate::forms::{invariance_residual, verify_odd_quadratic, OddForm};
use crate::linalg::det_expand;
use crate::poly::{Poly, Var};
use crate::ring;
use crate::scalar::Scalar;

use super::eliminate::{eliminate, Substitution};
use super::fingerprint::{fingerprint, Fingerprint};
use super::{instantiate_form, substitute_form, ParamAlgebra, ParamForm};

/// Assignments beyond this many per stage are counted as unresolved.
const CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchHit {
    #[serde(serialize_with = "ser_alg")]
    pub algebra: SuperAlgebra,
    #[serde(serialize_with = "ser_form")]
    pub form: OddForm,
    pub fingerprint: Fingerprint,
}

fn ser_alg<S: serde::Serializer>(a: &SuperAlgebra, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::io::to_doc(a, None).serialize(s)
}

fn ser_form<S: serde::Serializer>(f: &OddForm, s: S) -> std::result::Result<S::Ok, S::Error> {
    f.pairing().serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub n_even: usize,
    pub grid: Vec<Scalar>,
    pub even_parts: usize,
    pub actions: usize,
    pub modules: usize,
    pub filiform: usize,
    pub pairable: usize,
    pub odd_assignments: usize,
    /// Stages skipped because they exceeded the enumeration cap.
    pub unresolved: usize,
    pub hits: Vec<SearchHit>,
    /// Hits deduplicated by fingerprint.
    pub classes: Vec<SearchHit>,
}

impl SearchReport {
    pub fn is_empty(&self) -> bool {
        self.hits.is_empty() && self.unresolved == 0
    }

    /// Exactly one class, and it is the zero-product algebra.
    pub fn only_abelian(&self) -> bool {
        self.unresolved == 0 && self.classes.len() == 1 && self.classes[0].algebra.is_abelian()
    }

    pub fn render(&self) -> String {
        let grid: Vec<String> = self.grid.iter().map(Scalar::to_string).collect();
        let mut out = format!(
            "n_even = {}, grid {{{}}}\n\
             even parts {}, actions {}, modules {}, filiform {}, pairable {}, odd assignments {}, unresolved {}\n\
             hits {}, classes {}\n",
            self.n_even,
            grid.join(", "),
            self.even_parts,
            self.actions,
            self.modules,
            self.filiform,
            self.pairable,
            self.odd_assignments,
            self.unresolved,
            self.hits.len(),
            self.classes.len()
        );
        for c in &self.classes {
            let abelian = if c.algebra.is_abelian() { "zero product" } else { "non-abelian" };
            out.push_str(&format!("  class: {abelian}, center {}, odd-odd rank {}\n", c.fingerprint.center, c.fingerprint.odd_odd_rank));
        }
        out
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn even_parts(n: usize, grid: &[Scalar]) -> Result<Vec<SuperAlgebra>> {
    let (xs, es) = (names("X", n), names("e", n));
    let base = Structure::new(&xs, &es)?;
    Ok(match n {
        1 => vec![base],
        2 => {
            let mut out = Vec::new();
            for c1 in grid {
                for c2 in grid {
                    let mut g = base.clone();
                    g.set("X1", "X2", &[("X1", c1.clone()), ("X2", c2.clone())])?;
                    out.push(g);
                }
            }
            out
        }
        3 => {
            let mut g = base;
            g.set("X1", "X2", &[("X3", Scalar::one())])?;
            vec![g]
        }
        _ => return Err(Error::Invalid(format!("the search covers n_even in {{1, 2, 3}}, not {n}"))),
    })
}

/// All tuples of length `k` over `grid`, or `None` past the cap.
fn tuples(grid: &[Scalar], k: usize) -> Option<Vec<Vec<Scalar>>> {
    let total = grid.len().checked_pow(k as u32)?;
    if total > CAP {
        return None;
    }
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|t: Vec<Scalar>| grid.iter().map(move |g| [t.clone(), vec![g.clone()]].concat())).collect();
    }
    Some(out)
}

struct Stage {
    modules: usize,
    filiform: usize,
    pairable: usize,
    odd_assignments: usize,
    unresolved: usize,
    hits: Vec<SearchHit>,
}

pub fn small_search_nonexistence(n_even: usize, grid: &[Scalar], exec: Exec) -> Result<SearchReport> {
    for needed in [-1, 0, 1] {
        if !grid.contains(&Scalar::from_int(needed)) {
            return Err(Error::Invalid("the grid must contain -1, 0 and 1".into()));
        }
    }
    let n = n_even;
    let parts = even_parts(n, grid)?;
    let slots: Vec<(usize, usize, usize)> = (0..n).flat_map(|a| (0..n).flat_map(move |j| (0..j).map(move |i| (a, i, j)))).collect();
    let actions = tuples(grid, slots.len()).ok_or_else(|| Error::Invalid("action grid exceeds the enumeration cap".into()))?;
    let mut jobs = Vec::new();
    for g0 in &parts {
        for act in &actions {
            jobs.push((g0, act));
        }
    }
    let stages = exec.map(&jobs, |(g0, act)| examine(g0, &slots, act, grid));
    let mut report = SearchReport {
        n_even,
        grid: grid.to_vec(),
        even_parts: parts.len(),
        actions: jobs.len(),
        modules: 0,
        filiform: 0,
        pairable: 0,
        odd_assignments: 0,
        unresolved: 0,
        hits: Vec::new(),
        classes: Vec::new(),
    };
    for st in stages {
        let st = st?;
        report.modules += st.modules;
        report.filiform += st.filiform;
        report.pairable += st.pairable;
        report.odd_assignments += st.odd_assignments;
        report.unresolved += st.unresolved;
        report.hits.extend(st.hits);
    }
    for h in &report.hits {
        if !report.classes.iter().any(|c| c.fingerprint == h.fingerprint) {
            report.classes.push(h.clone());
        }
    }
    Ok(report)
}

fn examine(g0: &SuperAlgebra, slots: &[(usize, usize, usize)], act: &[Scalar], grid: &[Scalar]) -> Result<Stage> {
    let n = g0.n_even();
    let mut st = Stage { modules: 0, filiform: 0, pairable: 0, odd_assignments: 0, unresolved: 0, hits: Vec::new() };
    let mut g = g0.clone();
    for a in 0..n {
        for j in 0..n {
            let mut v = ring::zero_vec(2 * n);
            for (&(sa, i, sj), c) in slots.iter().zip(act) {
                if sa == a && sj == j {
                    v[n + i] = c.clone();
                }
            }
            g.set_bracket(a, n + j, v)?;
        }
    }
    let table = g.bracket_table();
    let module_ok = (0..n).all(|a| (a + 1..n).all(|b| (n..2 * n).all(|e| ring::is_zero_vec(&jacobi_residual(&g, &table, a, b, e)))));
    if !module_ok {
        return Ok(st);
    }
    st.modules = 1;
    if !detect_filiform(&g) {
        return Ok(st);
    }
    st.filiform = 1;
    if pairing_solution(&g, |i, j, k| [i, j, k].iter().filter(|&&t| t >= n).count() == 1)?.is_none() {
        return Ok(st);
    }
    st.pairable = 1;

    let odd_slots: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|i| (i..n).flat_map(move |j| (0..n).map(move |k| (n + i, n + j, k)))).collect();
    let Some(assignments) = tuples(grid, odd_slots.len()) else {
        st.unresolved = 1;
        return Ok(st);
    };
    for odd in assignments {
        st.odd_assignments += 1;
        let mut h = g.clone();
        for i in n..2 * n {
            for j in i..2 * n {
                let mut v = ring::zero_vec(2 * n);
                for (&(si, sj, k), c) in odd_slots.iter().zip(&odd) {
                    if si == i && sj == j {
                        v[k] = c.clone();
                    }
                }
                h.set_bracket(i, j, v)?;
            }
        }
        if !super_jacobi_violations(&h, Exec::Sequential).is_empty() {
            continue;
        }
        let Some(form) = concrete_pairing(&h)? else { continue };
        if verify_odd_quadratic(&h, &form, Exec::Sequential).passed() && detect_filiform(&h) {
            st.hits.push(SearchHit { fingerprint: fingerprint(&h), algebra: h, form });
        }
    }
    Ok(st)
}

fn generic_pairing(g: &SuperAlgebra) -> Result<(ParamAlgebra, ParamForm)> {
    let mut p = ParamAlgebra::from_numeric(g)?;
    let form = super::generic_form(&mut p, &[])?;
    Ok((p, form))
}

/// Substitution solving the selected invariance triples, if some
/// non-degenerate pairing survives it.
fn pairing_solution(
    g: &SuperAlgebra,
    select: impl Fn(usize, usize, usize) -> bool,
) -> Result<Option<(ParamAlgebra, ParamForm, Substitution)>> {
    let (p, form) = generic_pairing(g)?;
    let table = p.structure.bracket_table();
    let d = g.dim();
    let mut cs = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if select(i, j, k) {
                    let r = invariance_residual(&form, &table, i, j, k);
                    if !r.is_empty() {
                        cs.push(r);
                    }
                }
            }
        }
    }
    let Ok(e) = eliminate(&cs) else { return Ok(None) };
    if !e.residuals.is_empty() {
        return Err(Error::Internal("invariance constraints of a numeric algebra are linear".into()));
    }
    let f = substitute_form(&form, &e.subs);
    if det_expand(f.pairing()).is_empty() {
        return Ok(None);
    }
    Ok(Some((p, form, e.subs)))
}

/// A concrete non-degenerate invariant pairing, if one exists.
fn concrete_pairing(h: &SuperAlgebra) -> Result<Option<OddForm>> {
    let Some((p, form, subs)) = pairing_solution(h, |_, _, _| true)? else { return Ok(None) };
    let f = substitute_form(&form, &subs);
    let det = det_expand(f.pairing());
    let free: Vec<Var> = f.pairing().iter().flatten().flat_map(Poly::vars).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let candidates: Vec<Scalar> = [1, 2, 3, -1, 5].iter().map(|&k| Scalar::from_int(k)).collect();
    let Some(points) = tuples(&candidates, free.len()) else { return Ok(None) };
    for pt in points {
        let values = free.iter().copied().zip(pt).collect();
        if det.evaluate(&values).is_some_and(|v| !v.is_zero()) {
            return Ok(Some(instantiate_form(&p.vars, &f, &values)?));
        }
    }
    Ok(None)
}
