//! Parametric structure constants and the dimension-6/8 classification.
//!
//! A [`ParamAlgebra`] carries polynomial structure constants. Super Jacobi and
//! invariance give polynomial constraints, [`eliminate`] reduces them by
//! linear substitution and case splits, and the surviving branches are
//! sampled, normalized by explicit basis changes and matched to the catalog.

mod constraints;
mod eliminate;
mod fingerprint;
mod pipeline;
mod search;
mod tables;

use std::collections::BTreeMap;

use crate::algebra::{Structure, SuperAlgebra};
use crate::error::{Error, Result};
use crate::forms::{Form, OddForm};
use crate::poly::{Poly, Var, VarTable};
use crate::scalar::Scalar;

pub use constraints::{
    invariance_by_triple, invariance_constraints, jacobi_by_triple, jacobi_constraints, triple_jacobi, TripleConstraints,
};
pub use eliminate::{apply, eliminate, eliminate_from, solve_with_splits, Branch, ElimError, Elimination, Substitution};
pub use fingerprint::{fingerprint, verify_witness_isomorphism, Fingerprint};
pub use pipeline::{classify_dimension, normalize_flag_action, BranchSummary, ClassRecord, Classification};
pub use search::{small_search_nonexistence, SearchHit, SearchReport};
pub use tables::{audit_invariance, audit_jacobi, skeleton, RowAudit, TableAudit};

/// Parametric pairing between the even and odd parts.
pub type ParamForm = Form<Poly>;

/// Superalgebra whose structure constants are polynomials in named indeterminates.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamAlgebra {
    pub structure: Structure<Poly>,
    pub vars: VarTable,
}

impl ParamAlgebra {
    pub fn new<S: AsRef<str>>(even: &[S], odd: &[S]) -> Result<Self> {
        Ok(ParamAlgebra { structure: Structure::new(even, odd)?, vars: VarTable::new() })
    }

    /// Lifts a rational algebra; irrational constants are rejected.
    pub fn from_numeric(alg: &SuperAlgebra) -> Result<Self> {
        if alg.constants().any(|(_, v)| v.iter().any(|c| !c.is_rational())) {
            return Err(Error::Invalid("parametric algebras need rational constants".into()));
        }
        let structure = alg.map(|c| Poly::constant(c.as_rational().expect("checked rational").clone()));
        Ok(ParamAlgebra { structure, vars: VarTable::new() })
    }

    pub fn declare(&mut self, name: &str) -> Poly {
        self.vars.var(name)
    }

    pub fn set<S: AsRef<str>>(&mut self, x: &str, y: &str, terms: &[(S, Poly)]) -> Result<()> {
        self.structure.set(x, y, terms)
    }

    /// Makes `[x, y]` a generic element of the part of matching parity, with
    /// fresh indeterminates `{prefix}_1, {prefix}_2, ...`.
    pub fn set_unknown(&mut self, x: &str, y: &str, prefix: &str) -> Result<Vec<Poly>> {
        let (i, j) = (self.structure.index(x)?, self.structure.index(y)?);
        let range =
            if self.structure.is_odd(i) == self.structure.is_odd(j) { self.structure.even_range() } else { self.structure.odd_range() };
        let mut value = crate::ring::zero_vec::<Poly>(self.structure.dim());
        let mut vars = Vec::new();
        for (k, slot) in range.enumerate() {
            let v = self.vars.var(&format!("{prefix}_{}", k + 1));
            value[slot] = v.clone();
            vars.push(v);
        }
        self.structure.set_bracket(i, j, value)?;
        Ok(vars)
    }

    /// Every variable in `subs` replaced.
    pub fn substituted(&self, subs: &Substitution) -> ParamAlgebra {
        ParamAlgebra { structure: self.structure.map(|p| apply(subs, p)), vars: self.vars.clone() }
    }

    /// Variables still occurring in some structure constant.
    pub fn free_vars(&self) -> std::collections::BTreeSet<Var> {
        self.structure.constants().flat_map(|(_, v)| v.iter().flat_map(Poly::vars)).collect()
    }

    /// Numeric algebra at the given values. Unbound variables are an error.
    pub fn instantiate(&self, values: &BTreeMap<Var, Scalar>) -> Result<SuperAlgebra> {
        let mut out = Structure::new(self.structure.even_names(), self.structure.odd_names())?;
        for (&(i, j), v) in self.structure.constants() {
            let w = v.iter().map(|p| evaluate(&self.vars, p, values)).collect::<Result<Vec<_>>>()?;
            out.set_bracket(i, j, w)?;
        }
        Ok(out)
    }

    pub fn render(&self, p: &Poly) -> String {
        self.vars.render(p)
    }
}

fn evaluate(vars: &VarTable, p: &Poly, values: &BTreeMap<Var, Scalar>) -> Result<Scalar> {
    p.evaluate(values).ok_or_else(|| {
        let missing: Vec<&str> = p.vars().into_iter().filter(|v| !values.contains_key(v)).map(|v| vars.name(v)).collect();
        Error::Invalid(format!("unbound indeterminates: {}", missing.join(", ")))
    })
}

/// Numeric form at the given values.
pub fn instantiate_form(vars: &VarTable, form: &ParamForm, values: &BTreeMap<Var, Scalar>) -> Result<OddForm> {
    let rows = form
        .pairing()
        .iter()
        .map(|r| r.iter().map(|p| evaluate(vars, p, values)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    OddForm::new(form.n_even(), form.m_odd(), rows)
}

/// Generic pairing with one indeterminate per (even, odd) basis pair. The
/// names listed in `named` (as `(even, odd, name)`) are declared first; the
/// rest are called `B_{even}_{odd}`.
pub fn generic_form(p: &mut ParamAlgebra, named: &[(&str, &str, &str)]) -> Result<ParamForm> {
    let (n, m) = (p.structure.n_even(), p.structure.m_odd());
    let mut rows = vec![vec![Poly::default(); m]; n];
    for &(x, y, name) in named {
        let (i, j) = (p.structure.index(x)?, p.structure.index(y)?);
        if p.structure.is_odd(i) || !p.structure.is_odd(j) {
            return Err(Error::Invalid(format!("form slot ({x}, {y}) must pair an even with an odd vector")));
        }
        rows[i][j - n] = p.vars.var(name);
    }
    for i in 0..n {
        for j in 0..m {
            if rows[i][j].is_empty() {
                let name = format!("B_{}_{}", p.structure.name(i), p.structure.name(n + j));
                rows[i][j] = p.vars.var(&name);
            }
        }
    }
    ParamForm::new(n, m, rows)
}

/// Form with every entry substituted.
pub fn substitute_form(form: &ParamForm, subs: &Substitution) -> ParamForm {
    form.map(|p| apply(subs, p))
}
