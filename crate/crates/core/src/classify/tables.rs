//! Dimension-6 and dimension-8 skeletons and the row-by-row constraint audit.
//!
//! Each audit row names a basis triple and the consequence expected from it.
//! The constraints computed for the triple, reduced by the substitutions of
//! all earlier rows, must span exactly the expected polynomials.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::forms::invariance_residual;
use crate::poly::{same_span, Poly};
use crate::ring::Ring;

use super::constraints::{invariance_by_triple, jacobi_by_triple, triple_jacobi};
use super::eliminate::{apply, eliminate, eliminate_from, Elimination};
use super::{generic_form, substitute_form, ParamAlgebra, ParamForm};

/// Skeleton of the classification in dimension `n`, with its generic form.
///
/// Variable order: the named bracket parameters, then auxiliary
/// brackets, then the form entries (`lambda`, `alpha`, `beta` first).
pub fn skeleton(n: usize) -> Result<(ParamAlgebra, ParamForm)> {
    match n {
        6 => skeleton6(),
        8 => skeleton8(),
        _ => Err(Error::Invalid(format!("classification skeletons exist for dimensions 6 and 8, not {n}"))),
    }
}

fn one() -> Poly {
    Poly::int(1)
}

fn skeleton6() -> Result<(ParamAlgebra, ParamForm)> {
    let mut p = ParamAlgebra::new(&["X1", "X2", "X3"], &["e3", "u2", "v2"])?;
    let (a, b, c) = (p.declare("a"), p.declare("b"), p.declare("c"));
    p.set("X1", "X2", &[("X3", one())])?;
    p.set("X1", "e3", &[("u2", one())])?;
    p.set("X2", "e3", &[("v2", one())])?;
    p.set("e3", "e3", &[("X1", a), ("X2", b), ("X3", c)])?;
    for (x, y) in [("e3", "u2"), ("e3", "v2"), ("u2", "u2"), ("u2", "v2"), ("v2", "v2")] {
        p.set_unknown(x, y, &format!("{x}{y}"))?;
    }
    let form = generic_form(&mut p, &[("X1", "v2", "lambda"), ("X1", "e3", "alpha"), ("X2", "e3", "beta")])?;
    Ok((p, form))
}

fn skeleton8() -> Result<(ParamAlgebra, ParamForm)> {
    let mut p = ParamAlgebra::new(&["X1", "X2", "X3", "X4"], &["e4", "e3", "u2", "v2"])?;
    let (d24, a24, b24) = (p.declare("d24"), p.declare("a24"), p.declare("b24"));
    p.set("X1", "X2", &[("X3", one())])?;
    p.set("X1", "X3", &[("X4", one())])?;
    p.set("X1", "e3", &[("u2", one())])?;
    p.set("X2", "e3", &[("v2", one())])?;
    p.set("X1", "e4", &[("e3", one())])?;
    p.set("X2", "e4", &[("e3", d24.clone()), ("u2", a24), ("v2", b24)])?;
    p.set("X3", "e4", &[("u2", d24), ("v2", Poly::int(-1))])?;
    p.set_unknown("e4", "e4", "a44")?;
    p.set_unknown("e3", "e3", "a33")?;
    for (x, y) in [("e3", "e4"), ("u2", "e4"), ("v2", "e4"), ("u2", "e3"), ("v2", "e3"), ("u2", "u2"), ("u2", "v2"), ("v2", "v2")] {
        p.set_unknown(x, y, &format!("{x}{y}"))?;
    }
    let form = generic_form(&mut p, &[("X1", "v2", "lambda"), ("X1", "e4", "alpha"), ("X2", "e4", "beta")])?;
    Ok((p, form))
}

struct Row {
    triple: [&'static str; 3],
    consequence: &'static str,
    expected: &'static [&'static str],
    /// Nonzero factor the computed constraint carries on top of `expected`.
    factor: Option<&'static str>,
}

const fn row(triple: [&'static str; 3], consequence: &'static str, expected: &'static [&'static str]) -> Row {
    Row { triple, consequence, expected, factor: None }
}

const JACOBI6: &[Row] = &[
    row(["e3", "e3", "e3"], "a = b = 0", &["a", "b"]),
    row(["X1", "e3", "e3"], "[u2,e3] = 0", &["e3u2_1", "e3u2_2", "e3u2_3"]),
    row(["X2", "e3", "e3"], "[v2,e3] = 0", &["e3v2_1", "e3v2_2", "e3v2_3"]),
    row(["X1", "e3", "u2"], "[u2,u2] = 0", &["u2u2_1", "u2u2_2", "u2u2_3"]),
    row(["X2", "e3", "v2"], "[v2,v2] = 0", &["v2v2_1", "v2v2_2", "v2v2_3"]),
    row(["X1", "e3", "v2"], "[u2,v2] = 0", &["u2v2_1", "u2v2_2", "u2v2_3"]),
];

const INVARIANCE6: &[Row] = &[
    row(["X1", "X1", "e3"], "B(X1,u2) = 0", &["B_X1_u2"]),
    row(["X2", "X2", "e3"], "B(X2,v2) = 0", &["B_X2_v2"]),
    row(["X3", "X1", "e3"], "B(X3,u2) = 0", &["B_X3_u2"]),
    row(["X3", "X2", "e3"], "B(X3,v2) = 0", &["B_X3_v2"]),
    row(["X1", "X2", "e3"], "B(X3,e3) = B(X1,v2)", &["B_X3_e3 - lambda"]),
    row(["X2", "X1", "e3"], "B(X3,e3) = -B(X2,u2)", &["B_X3_e3 + B_X2_u2"]),
];

const JACOBI8: &[Row] = &[
    row(["X1", "e4", "e4"], "[e3,e4] = 1/2 (a44_2 X3 + a44_3 X4)", &["e3e4_1", "e3e4_2", "e3e4_3 - 1/2*a44_2", "e3e4_4 - 1/2*a44_3"]),
    row(["e3", "e3", "e3"], "a33_1 = a33_2 = 0", &["a33_1", "a33_2"]),
    row(
        ["X1", "e3", "e4"],
        "[u2,e4] = -a33_3 X3 + (1/2 a44_2 - a33_4) X4",
        &["u2e4_1", "u2e4_2", "u2e4_3 + a33_3", "u2e4_4 - 1/2*a44_2 + a33_4"],
    ),
    row(["X1", "u2", "e4"], "[u2,e3] = -a33_3 X4", &["u2e3_1", "u2e3_2", "u2e3_3", "u2e3_4 + a33_3"]),
    row(["X1", "e3", "e3"], "a33_3 = 0", &["a33_3"]),
    row(["X2", "e3", "e3"], "[v2,e3] = 0", &["v2e3_1", "v2e3_2", "v2e3_3", "v2e3_4"]),
    row(["X1", "u2", "e3"], "[u2,u2] = 0", &["u2u2_1", "u2u2_2", "u2u2_3", "u2u2_4"]),
    row(["X2", "u2", "e3"], "[v2,u2] = 0", &["u2v2_1", "u2v2_2", "u2v2_3", "u2v2_4"]),
    row(["X2", "v2", "e3"], "[v2,v2] = 0", &["v2v2_1", "v2v2_2", "v2v2_3", "v2v2_4"]),
    row(["X2", "e3", "e4"], "[v2,e4] = -d24 a33_4 X4", &["v2e4_1", "v2e4_2", "v2e4_3", "v2e4_4 + d24*a33_4"]),
    row(
        ["X2", "e4", "e4"],
        "a44_1 = -d24 a44_2; 1/2 d24 a44_3 + 1/2 a24 a44_2 - a24 a33_4 - b24 d24 a33_4 = 0",
        &["a44_1 + d24*a44_2", "1/2*d24*a44_3 + 1/2*a24*a44_2 - a24*a33_4 - b24*d24*a33_4"],
    ),
    row(["e4", "e4", "e4"], "a44_3 = b24 a44_2; d24 a44_3 + a24 a44_2 = 0", &["a44_3 - b24*a44_2", "d24*a44_3 + a24*a44_2"]),
];

const INVARIANCE8: &[Row] = &[
    row(["X1", "X1", "e4"], "B(X1,e3) = 0", &["B_X1_e3"]),
    row(["X1", "X1", "e3"], "B(X1,u2) = 0", &["B_X1_u2"]),
    row(["X2", "X2", "e3"], "B(X2,v2) = 0", &["B_X2_v2"]),
    row(["X4", "X1", "e4"], "B(X4,e3) = 0", &["B_X4_e3"]),
    row(["X3", "X2", "e3"], "B(X3,v2) = 0", &["B_X3_v2"]),
    row(["X4", "X2", "e3"], "B(X4,v2) = 0", &["B_X4_v2"]),
    row(["X1", "X2", "u2"], "B(X3,u2) = 0", &["B_X3_u2"]),
    row(["X1", "X3", "u2"], "B(X4,u2) = 0", &["B_X4_u2"]),
    row(["X1", "X2", "e3"], "B(X3,e3) = B(X1,v2)", &["B_X3_e3 - lambda"]),
    row(["X2", "X1", "e3"], "B(X3,e3) = -B(X2,u2)", &["B_X3_e3 + B_X2_u2"]),
    row(["X3", "X1", "e4"], "B(X3,e3) = -B(X4,e4)", &["B_X3_e3 + B_X4_e4"]),
    row(["X2", "X1", "e4"], "B(X2,e3) = -B(X3,e4)", &["B_X2_e3 + B_X3_e4"]),
    row(["X1", "X2", "e4"], "B(X3,e4) = b24 B(X1,v2)", &["B_X3_e4 - b24*lambda"]),
    Row { triple: ["X2", "X3", "e4"], consequence: "d24 = 0", expected: &["d24"], factor: Some("lambda") },
    Row { triple: ["X2", "e4", "X2"], consequence: "a24 = 0", expected: &["a24"], factor: Some("lambda") },
    Row { triple: ["e4", "e4", "u2"], consequence: "a33_4 = -1/2 a44_2", expected: &["a33_4 + 1/2*a44_2"], factor: Some("lambda") },
];

/// One audited row.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RowAudit {
    pub triple: String,
    pub consequence: String,
    pub computed: Vec<String>,
    pub expected: Vec<String>,
    pub matched: bool,
}

/// Row audits of one table, plus what is left once every triple is folded in.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct TableAudit {
    pub title: String,
    pub rows: Vec<RowAudit>,
    /// Constraints from triples outside the table not implied by its rows.
    pub unexplained: Vec<String>,
    /// Residual products left after the last row.
    pub residuals: Vec<String>,
}

impl TableAudit {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.matched) && self.unexplained.is_empty()
    }

    /// Two-column `constraint | consequence` table with a status column.
    pub fn render(&self) -> String {
        let w = self.rows.iter().map(|r| r.triple.len()).max().unwrap_or(0).max(10);
        let mut out = format!("{}\n{:<w$} | consequence\n{}\n", self.title, "triple", "-".repeat(w + 40));
        for r in &self.rows {
            let status = if r.matched { "ok" } else { "MISMATCH" };
            out.push_str(&format!("{:<w$} | {}  [{}]\n", r.triple, r.consequence, status));
            if !r.matched {
                out.push_str(&format!("{:<w$} |   computed: {}\n", "", r.computed.join("; ")));
                out.push_str(&format!("{:<w$} |   expected: {}\n", "", r.expected.join("; ")));
            }
        }
        if !self.residuals.is_empty() {
            out.push_str(&format!("remaining: {}\n", self.residuals.join("; ")));
        }
        for u in &self.unexplained {
            out.push_str(&format!("unexplained: {u}\n"));
        }
        out
    }
}

fn indices(p: &ParamAlgebra, t: &[&str; 3]) -> Result<(usize, usize, usize)> {
    Ok((p.structure.index(t[0])?, p.structure.index(t[1])?, p.structure.index(t[2])?))
}

fn parse_all(p: &ParamAlgebra, texts: &[&str]) -> Result<Vec<Poly>> {
    texts.iter().map(|t| p.vars.parse(t).map_err(Error::Invalid)).collect()
}

fn internal(e: super::ElimError) -> Error {
    Error::Internal(e.to_string())
}

/// Walks the rows, comparing and then folding each row's constraints.
fn audit_rows(
    p: &ParamAlgebra,
    rows: &[Row],
    start: Elimination,
    computed_for: &dyn Fn(usize, usize, usize) -> Vec<Poly>,
) -> Result<(Vec<RowAudit>, Elimination)> {
    let mut state = start;
    let mut out = Vec::new();
    for r in rows {
        let (i, j, k) = indices(p, &r.triple)?;
        let computed: Vec<Poly> = computed_for(i, j, k).iter().map(|q| apply(&state.subs, q)).collect();
        let computed: Vec<Poly> = computed.into_iter().filter(|q| !q.is_empty()).collect();
        let mut expected = parse_all(p, r.expected)?;
        let mut folded = computed.clone();
        if let Some(f) = r.factor {
            let v = p.vars.get(f).ok_or_else(|| Error::Invalid(format!("unknown factor {f}")))?;
            expected = expected.iter().map(|e| e.times(&Poly::var(v))).collect();
            // The factor is nonzero on every non-degenerate form, so the row's
            // consequence is the quotient.
            folded = computed.iter().map(|q| q.divide_by_var(v).unwrap_or_else(|| q.clone())).collect();
        }
        let expected: Vec<Poly> = expected.iter().map(|e| apply(&state.subs, e)).filter(|e| !e.is_empty()).collect();
        out.push(RowAudit {
            triple: format!("({}, {}, {})", r.triple[0], r.triple[1], r.triple[2]),
            consequence: r.consequence.to_string(),
            computed: computed.iter().map(|q| p.render(q)).collect(),
            expected: expected.iter().map(|q| p.render(q)).collect(),
            matched: same_span(&computed, &expected),
        });
        let mut cs = state.residuals.clone();
        cs.extend(folded);
        state = eliminate_from(state.subs, &cs).map_err(internal)?;
    }
    Ok((out, state))
}

/// Constraints that stay nonzero under `state` and are not combinations of
/// its residuals.
fn unexplained(p: &ParamAlgebra, all: &[Poly], state: &Elimination) -> Vec<String> {
    all.iter()
        .map(|q| apply(&state.subs, q))
        .filter(|q| !q.is_empty())
        .filter(|q| {
            let mut with = state.residuals.clone();
            with.push(q.clone());
            !same_span(&with, &state.residuals)
        })
        .map(|q| p.render(&q))
        .collect()
}

fn jacobi_tables(n: usize) -> &'static [Row] {
    if n == 6 {
        JACOBI6
    } else {
        JACOBI8
    }
}

/// Audits the super Jacobi table of the dimension-`n` skeleton.
pub fn audit_jacobi(n: usize) -> Result<TableAudit> {
    let (p, _) = skeleton(n)?;
    let (rows, state) = audit_rows(&p, jacobi_tables(n), Elimination::default(), &|i, j, k| triple_jacobi(&p, i, j, k))?;
    let all: Vec<Poly> = jacobi_by_triple(&p, Exec::default()).into_iter().flat_map(|t| t.polys).collect();
    Ok(TableAudit {
        title: format!("super Jacobi, dimension {n}"),
        rows,
        unexplained: unexplained(&p, &all, &state),
        residuals: state.residuals.iter().map(|q| p.render(q)).collect(),
    })
}

/// Audits the invariance table of the dimension-`n` skeleton, on top of the
/// full Jacobi elimination.
pub fn audit_invariance(n: usize) -> Result<TableAudit> {
    let (p, form) = skeleton(n)?;
    let jac: Vec<Poly> = jacobi_by_triple(&p, Exec::default()).into_iter().flat_map(|t| t.polys).collect();
    let jstate = eliminate(&jac).map_err(internal)?;
    let q = p.substituted(&jstate.subs);
    let f = substitute_form(&form, &jstate.subs);
    let table = q.structure.bracket_table();
    let rows_def = if n == 6 { INVARIANCE6 } else { INVARIANCE8 };
    let (rows, state) = audit_rows(&q, rows_def, jstate.clone(), &|i, j, k| {
        let r = invariance_residual(&f, &table, i, j, k);
        if r.is_empty() {
            vec![]
        } else {
            vec![r]
        }
    })?;
    let all: Vec<Poly> = invariance_by_triple(&q, &f, Exec::default()).into_iter().flat_map(|t| t.polys).collect();
    Ok(TableAudit {
        title: format!("invariance, dimension {n}"),
        rows,
        unexplained: unexplained(&q, &all, &state),
        residuals: state.residuals.iter().map(|r| q.render(r)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skeleton_shapes() {
        let (p6, f6) = skeleton(6).unwrap();
        assert_eq!(p6.vars.len(), 3 + 15 + 9);
        assert_eq!(f6.n_even(), 3);
        let (p8, _) = skeleton(8).unwrap();
        assert_eq!(p8.vars.len(), 3 + 8 + 32 + 16);
        assert!(skeleton(7).is_err());
    }

    #[test]
    fn dim6_tables() {
        let j = audit_jacobi(6).unwrap();
        assert!(j.passed(), "{}", j.render());
        assert!(j.residuals.is_empty());
        let i = audit_invariance(6).unwrap();
        assert!(i.passed(), "{}", i.render());
    }

    #[test]
    fn dim8_tables() {
        let j = audit_jacobi(8).unwrap();
        assert!(j.passed(), "{}", j.render());
        assert_eq!(j.residuals.len(), 2, "{}", j.render());
        let i = audit_invariance(8).unwrap();
        assert!(i.passed(), "{}", i.render());
    }
}
