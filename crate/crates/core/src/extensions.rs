//! Odd double extensions and the inverse decomposition.
//!
//! The generalized extension by one odd vector `e` and its dual `e*` puts `e*`
//! last among the evens and `e` last among the odds.

use serde::Serialize;
use serde_json::json;

use crate::algebra::{Structure, SuperAlgebra};
use crate::derivations::{validate_extension_data, ExtensionData, OddDerivation};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::flags::{detect_weak_filiform, Flag};
use crate::forms::{invariance_violations, orthogonal_complement, verify_jacobi, verify_odd_quadratic, OddForm};
use crate::linalg::{self, Matrix, Subspace};
use crate::ring::{self, Ring};
use crate::scalar::Scalar;

/// How the input sits inside the output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionWitness {
    /// Columns are the images of the smaller algebra's basis vectors.
    pub embedding: Matrix,
    /// Coordinates of `e` and `e*` in the larger algebra.
    pub e: Vec<Scalar>,
    pub e_star: Vec<Scalar>,
    /// Coordinate map from the extension's basis to the larger algebra's basis,
    /// when the larger algebra was given (decomposition).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identification: Option<Matrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extension {
    pub algebra: SuperAlgebra,
    pub form: OddForm,
    pub flag: Flag,
    pub witness: ExtensionWitness,
}

fn fresh(names: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while names.contains(&name) {
        name.push('\'');
    }
    name
}

/// Builds the extension without validating the data.
fn build_generalized(g: &SuperAlgebra, b: &OddForm, data: &ExtensionData) -> Result<(SuperAlgebra, OddForm, Vec<usize>)> {
    let (n, m) = (g.n_even(), g.m_odd());
    let e_star_name = fresh(g.names(), "e*");
    let e_name = fresh(g.names(), "e");
    let even: Vec<String> = g.even_names().iter().cloned().chain([e_star_name]).collect();
    let odd: Vec<String> = g.odd_names().iter().cloned().chain([e_name]).collect();
    let mut t = Structure::new(&even, &odd)?;
    let dim = n + m + 2;
    let es = n;
    let e = dim - 1;
    let embed: Vec<usize> = (0..n).chain(n + 1..n + 1 + m).collect();
    let lift = |v: &[Scalar]| -> Vec<Scalar> {
        let mut w = ring::zero_vec(dim);
        for (k, c) in v.iter().enumerate() {
            w[embed[k]] = c.clone();
        }
        w
    };
    let gd = g.dim();
    let unit = |k: usize| ring::unit_vec::<Scalar>(gd, k);
    let dmat = data.d.matrix();
    let dcol = |k: usize| -> Vec<Scalar> { dmat.iter().map(|r| r[k].clone()).collect() };
    for x in 0..gd {
        for y in x..gd {
            let mut v = lift(&g.basis_bracket(x, y));
            v[es] = b.eval(&dcol(x), &unit(y));
            t.set_bracket(embed[x], embed[y], v)?;
        }
    }
    for x in 0..gd {
        let mut v = lift(&dcol(x));
        // -(-1)^{|X|} B(X, X0)
        v[es] = b.eval(&unit(x), &data.x0).signed(!g.is_odd(x));
        t.set_bracket(e, embed[x], v)?;
    }
    let mut ee = lift(&data.x0);
    ee[es] = data.lambda0.clone();
    t.set_bracket(e, e, ee)?;

    let mut pairing = linalg::zeros(n + 1, m + 1);
    for i in 0..n {
        for j in 0..m {
            pairing[i][j] = b.pairing()[i][j].clone();
        }
    }
    pairing[n][m] = Scalar::one();
    Ok((t, OddForm::new(n + 1, m + 1, pairing)?, embed))
}

fn failures_of(r: &crate::cert::Report) -> String {
    r.failures().map(|c| c.check.clone()).collect::<Vec<_>>().join(", ")
}

/// `t = Ke + g + P(Ke*)` with `[e,e] = X0 + lambda0 e*`,
/// `[e,X] = D(X) - (-1)^{|X|} B(X,X0) e*`, `[X,Y] = [X,Y]_g + B(DX,Y) e*`.
pub fn generalized_odd_double_extension(g: &SuperAlgebra, b: &OddForm, data: &ExtensionData) -> Result<Extension> {
    let flag = detect_weak_filiform(g).map_err(|d| Error::Invalid(format!("input is not weak filiform (chain {d:?})")))?;
    let report = validate_extension_data(g, b, data, &flag);
    if !report.passed() {
        return Err(Error::Invalid(format!("extension data fails: {}", failures_of(&report))));
    }
    let (t, bt, embed) = build_generalized(g, b, data)?;
    if !verify_jacobi(&t, Exec::Sequential).passed() {
        return Err(Error::Internal("extension violates the super Jacobi identity".into()));
    }
    let q = verify_odd_quadratic(&t, &bt, Exec::Sequential);
    if !q.passed() {
        return Err(Error::Internal(format!("extension is not odd-quadratic: {}", failures_of(&q))));
    }
    let tflag = detect_weak_filiform(&t).map_err(|d| Error::Internal(format!("extension lost the weak filiform flag (chain {d:?})")))?;
    let dim = t.dim();
    let e = ring::unit_vec::<Scalar>(dim, dim - 1);
    let mut embedding = linalg::zeros(dim, g.dim());
    for (k, &i) in embed.iter().enumerate() {
        embedding[i][k] = Scalar::one();
    }
    // the new top level is Ke + V_m, which is the whole odd part
    if tflag.m() != flag.m() + 1 || tflag.level(tflag.m() as isize) != t.odd_part() {
        return Err(Error::Internal("extension flag top is not Ke + V_m".into()));
    }
    let witness = ExtensionWitness { embedding, e, e_star: ring::unit_vec(dim, g.n_even()), identification: None };
    Ok(Extension { algebra: t, form: bt, flag: tflag, witness })
}

/// Result of splitting off `Ke* + Ke_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub h: SuperAlgebra,
    pub form: OddForm,
    pub data: ExtensionData,
    pub witness: ExtensionWitness,
}

/// Splits `g = h + Ke* + Ke_m` with `e*` spanning the even center and
/// `B(e*, e_m) = 1`, and reads the extension data off `[e_m, .]`.
pub fn decompose_weak_filiform(g: &SuperAlgebra, b: &OddForm, flag: &Flag) -> Result<Decomposition> {
    let dim = g.dim();
    if dim <= 2 {
        return Err(Error::Invalid("nothing to split off".into()));
    }
    let z0 = g.center().intersection(&g.even_part());
    if z0.dim() != 1 {
        return Err(Error::Invalid(format!("even center has dimension {}, expected 1", z0.dim())));
    }
    let em = flag.top().to_vec();
    let raw = z0.basis()[0].clone();
    let pair = b.eval(&raw, &em);
    if pair.is_zero() {
        return Err(Error::Invalid("even center is orthogonal to the top flag representative".into()));
    }
    let inv = pair.inv();
    let e_star: Vec<Scalar> = raw.iter().map(|c| c * &inv).collect();
    let a = Subspace::span(dim, &[e_star.clone(), em.clone()]);
    let h_space = orthogonal_complement(b, &a)?.complement;
    let (h0, h1): (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>) =
        h_space.basis().iter().cloned().partition(|r| g.odd_range().all(|k| r[k].is_zero()));
    if h1.iter().any(|r| g.even_range().any(|k| !r[k].is_zero())) {
        return Err(Error::Internal("complement basis is not homogeneous".into()));
    }
    let pivot_name = |r: &Vec<Scalar>| g.name(r.iter().position(|c| !c.is_zero()).unwrap()).to_string();
    let h_even: Vec<String> = h0.iter().map(pivot_name).collect();
    let h_odd: Vec<String> = h1.iter().map(pivot_name).collect();
    let (nh, mh) = (h0.len(), h1.len());
    let hdim = nh + mh;
    // t basis in g coordinates: h evens, e*, h odds, e_m
    let cols: Vec<Vec<Scalar>> = h0.iter().cloned().chain([e_star.clone()]).chain(h1.iter().cloned()).chain([em.clone()]).collect();
    let w = linalg::transpose(&cols);
    let winv = linalg::inverse(&w)?;
    let es_t = nh;
    let em_t = dim - 1;
    let t_of_h = |k: usize| if k < nh { k } else { k + 1 };
    let h_of_t = |c: &[Scalar]| -> Vec<Scalar> { (0..hdim).map(|k| c[t_of_h(k)].clone()).collect() };
    let split = |v: Vec<Scalar>, what: &str| -> Result<(Vec<Scalar>, Scalar)> {
        let c = linalg::mat_vec(&winv, &v);
        if !c[em_t].is_zero() {
            return Err(Error::Internal(format!("{what} has a component along e_m")));
        }
        Ok((h_of_t(&c), c[es_t].clone()))
    };
    let h_basis: Vec<&Vec<Scalar>> = h0.iter().chain(h1.iter()).collect();
    let mut h = Structure::new(&h_even, &h_odd)?;
    for x in 0..hdim {
        for y in x..hdim {
            let (alpha, _) = split(g.bracket(h_basis[x], h_basis[y])?, "bracket of h")?;
            h.set_bracket(x, y, alpha)?;
        }
    }
    let mut dm = linalg::zeros(hdim, hdim);
    for x in 0..hdim {
        let (dx, _) = split(g.bracket(&em, h_basis[x])?, "[e_m, h]")?;
        for (i, c) in dx.into_iter().enumerate() {
            dm[i][x] = c;
        }
    }
    let (x0, lambda0) = split(g.bracket(&em, &em)?, "[e_m, e_m]")?;
    let pairing: Matrix = h0.iter().map(|x| h1.iter().map(|y| b.eval(x, y)).collect()).collect();
    let form = OddForm::new(nh, mh, pairing)?;
    let data = ExtensionData { d: OddDerivation::new(&h, dm)?, x0, lambda0 };

    let (t, _, _) = build_generalized(&h, &form, &data)?;
    let back = t.change_basis(&w)?;
    if !back.same_constants(g) {
        return Err(Error::Internal("re-extension does not reproduce the input".into()));
    }
    let embedding = linalg::transpose(&h_basis.iter().map(|v| v.to_vec()).collect::<Vec<_>>());
    let witness = ExtensionWitness { embedding, e: em, e_star, identification: Some(w) };
    Ok(Decomposition { h, form, data, witness })
}

/// Checks that `t.change_basis(p)` reproduces `target` exactly, form included.
pub fn matches_via(t: &SuperAlgebra, bt: &OddForm, target: &SuperAlgebra, btarget: &OddForm, p: &Matrix) -> Result<bool> {
    Ok(t.change_basis(p)?.same_constants(target) && &bt.change_basis(p)? == btarget)
}

/// General odd double extension `t = h + g + P(h*)` by a Lie superalgebra `h`
/// through `psi: h -> Der_a(g, B)` (one matrix per basis vector of `h`, of that
/// vector's parity) and an odd invariant form `gamma` on `h`.
///
/// Basis order: evens of `h`, evens of `g`, duals of odd `h` vectors, then odds
/// of `h`, odds of `g`, duals of even `h` vectors.
pub fn odd_double_extension(
    g: &SuperAlgebra,
    b: &OddForm,
    h: &SuperAlgebra,
    psi: &[Matrix],
    gamma: &OddForm,
) -> Result<(SuperAlgebra, OddForm)> {
    let hd = h.dim();
    if psi.len() != hd {
        return Err(Error::Dimension { expected: hd, got: psi.len() });
    }
    for (z, p) in psi.iter().enumerate() {
        if !crate::derivations::is_skew_derivation(g, b, p, h.parity(z)) {
            return Err(Error::Invalid(format!("psi({}) is not a B-skew derivation", h.name(z))));
        }
    }
    // psi([Z,W]) = psi(Z) psi(W) - (-1)^{|Z||W|} psi(W) psi(Z)
    let htable = h.bracket_table();
    for z in 0..hd {
        for w in 0..hd {
            let mut lhs = linalg::zeros(g.dim(), g.dim());
            for (k, c) in htable[z][w].iter().enumerate() {
                if !c.is_zero() {
                    for (r, row) in psi[k].iter().enumerate() {
                        ring::add_scaled(&mut lhs[r], c, row);
                    }
                }
            }
            let zw = linalg::mat_mul(&psi[z], &psi[w]);
            let wz = linalg::mat_mul(&psi[w], &psi[z]);
            let sign = h.is_odd(z) && h.is_odd(w);
            let ok = (0..g.dim()).all(|i| (0..g.dim()).all(|j| lhs[i][j] == &zw[i][j] - &wz[i][j].signed(sign)));
            if !ok {
                return Err(Error::Invalid(format!("psi does not respect [{}, {}]", h.name(z), h.name(w))));
            }
        }
    }
    if !invariance_violations(h, gamma, Exec::Sequential).is_empty() {
        return Err(Error::Invalid("gamma is not invariant".into()));
    }

    // index maps into t
    let (nh, mh, ng, mg) = (h.n_even(), h.m_odd(), g.n_even(), g.m_odd());
    let n_t = nh + ng + mh;
    let dim = n_t + mh + mg + nh;
    let hi = |z: usize| if z < nh { z } else { n_t + (z - nh) };
    let gi = |x: usize| if x < ng { nh + x } else { n_t + mh + (x - ng) };
    // dual of h basis vector z: even when z is odd
    let di = |z: usize| if z >= nh { nh + ng + (z - nh) } else { n_t + mh + mg + z };
    let mut even: Vec<String> = Vec::new();
    let mut odd: Vec<String> = Vec::new();
    let mut taken: Vec<String> = Vec::new();
    let mut push = |target: &mut Vec<String>, base: &str| {
        let name = fresh(&taken, base);
        taken.push(name.clone());
        target.push(name);
    };
    for n in h.even_names() {
        push(&mut even, n);
    }
    for n in g.even_names() {
        push(&mut even, n);
    }
    for n in h.odd_names() {
        push(&mut even, &format!("{n}*"));
    }
    for n in h.odd_names() {
        push(&mut odd, n);
    }
    for n in g.odd_names() {
        push(&mut odd, n);
    }
    for n in h.even_names() {
        push(&mut odd, &format!("{n}*"));
    }
    let mut t = Structure::new(&even, &odd)?;
    debug_assert_eq!(t.dim(), dim);

    let gtable = g.bracket_table();
    let gd = g.dim();
    let unit = |k: usize| ring::unit_vec::<Scalar>(gd, k);
    let psi_col = |z: usize, x: usize| -> Vec<Scalar> { psi[z].iter().map(|r| r[x].clone()).collect() };
    for a in 0..hd {
        for c in a..hd {
            let mut v = ring::zero_vec(dim);
            for (k, s) in htable[a][c].iter().enumerate() {
                v[hi(k)] = s.clone();
            }
            t.set_bracket(hi(a), hi(c), v)?;
        }
        for x in 0..gd {
            let mut v = ring::zero_vec(dim);
            for (k, s) in psi_col(a, x).into_iter().enumerate() {
                v[gi(k)] = s;
            }
            t.set_bracket(hi(a), gi(x), v)?;
        }
        // coadjoint action on the dual basis, in the shifted space
        for bb in 0..hd {
            let mut v = ring::zero_vec(dim);
            // parity of the dual vector inside P(h*), not inside h*
            let sign = h.is_odd(a) && !h.is_odd(bb);
            for k in 0..hd {
                let coef = &htable[a][k][bb];
                if !coef.is_zero() {
                    v[di(k)] = (-coef).signed(sign);
                }
            }
            t.set_bracket(hi(a), di(bb), v)?;
        }
    }
    for x in 0..gd {
        for y in x..gd {
            let mut v = ring::zero_vec(dim);
            for (k, s) in gtable[x][y].iter().enumerate() {
                v[gi(k)] = s.clone();
            }
            for z in 0..hd {
                let sign = (g.is_odd(x) != g.is_odd(y)) && h.is_odd(z);
                let val = b.eval(&psi_col(z, x), &unit(y)).signed(sign);
                v[di(z)] = val;
            }
            t.set_bracket(gi(x), gi(y), v)?;
        }
    }

    let mut pairing = linalg::zeros(n_t, dim - n_t);
    let mut put = |i: usize, j: usize, c: Scalar| {
        let (e, o) = if i < n_t { (i, j) } else { (j, i) };
        pairing[e][o - n_t] = c;
    };
    for x in 0..gd {
        for y in 0..gd {
            if !g.is_odd(x) && g.is_odd(y) {
                put(gi(x), gi(y), b.basis_value(x, y));
            }
        }
    }
    for z in 0..hd {
        for w in 0..hd {
            if !h.is_odd(z) && h.is_odd(w) {
                put(hi(z), hi(w), gamma.basis_value(z, w));
            }
        }
        put(hi(z), di(z), Scalar::one());
    }
    let bt = OddForm::new(n_t, dim - n_t, pairing)?;
    if !verify_jacobi(&t, Exec::Sequential).passed() {
        return Err(Error::Internal("odd double extension violates the super Jacobi identity".into()));
    }
    let q = verify_odd_quadratic(&t, &bt, Exec::Sequential);
    if !q.passed() {
        return Err(Error::Internal(format!("odd double extension is not odd-quadratic: {}", failures_of(&q))));
    }
    Ok((t, bt))
}

/// Coordinate map from the extension of `g6` by case data into the `g8` basis:
/// `e -> e4`, `e* -> -X4`, everything else by name.
pub fn g8_identification(t: &SuperAlgebra, target: &SuperAlgebra) -> Result<Matrix> {
    let mut p = linalg::zeros(t.dim(), t.dim());
    for (j, name) in t.names().iter().enumerate() {
        let (row, c) = match name.as_str() {
            "e*" => (target.index("X4")?, -Scalar::one()),
            "e" => (target.index("e4")?, Scalar::one()),
            other => (target.index(other)?, Scalar::one()),
        };
        p[row][j] = c;
    }
    Ok(p)
}

/// JSON summary of a witness for reports.
pub fn witness_json(w: &ExtensionWitness) -> serde_json::Value {
    json!(w)
}
