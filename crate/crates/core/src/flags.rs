//! The even part acting on the odd part: bracket chains, filiform and weak
//! filiform detection, and the structural checks that hold on weak filiform
//! odd-quadratic algebras.

use serde::Serialize;
use serde_json::json;

use crate::algebra::SuperAlgebra;
use crate::cert::{Certificate, Report, Verdict};
use crate::exec::Exec;
use crate::forms::{verify_odd_quadratic, OddForm};
use crate::linalg::{self, Matrix, Subspace};
use crate::ring;
use crate::scalar::Scalar;

/// `V_m > ... > V_2 > V_1 = 0` inside the odd part, in full coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Flag {
    /// `levels[i] = V_i` for `i` in `0..=m`; `V_0 = V_1 = 0`.
    levels: Vec<Subspace>,
    u2: Vec<Scalar>,
    v2: Vec<Scalar>,
    /// `representatives[i - 3] = e_i` for `i >= 3`.
    representatives: Vec<Vec<Scalar>>,
}

impl Flag {
    pub fn m(&self) -> usize {
        self.levels.len() - 1
    }

    /// `V_i`, zero for `i <= 1` and clamped at the top.
    pub fn level(&self, i: isize) -> Subspace {
        let top = self.m() as isize;
        self.levels[i.clamp(0, top) as usize].clone()
    }

    pub fn levels(&self) -> &[Subspace] {
        &self.levels
    }

    pub fn u2(&self) -> &[Scalar] {
        &self.u2
    }

    pub fn v2(&self) -> &[Scalar] {
        &self.v2
    }

    /// `e_i` for `3 <= i <= m`.
    pub fn representative(&self, i: usize) -> Option<&[Scalar]> {
        i.checked_sub(3).and_then(|k| self.representatives.get(k)).map(Vec::as_slice)
    }

    /// Top representative `e_m`; for `m = 2` this is `v2`.
    pub fn top(&self) -> &[Scalar] {
        self.representatives.last().unwrap_or(&self.v2)
    }

    /// Pivot column of `e_i` in full coordinates.
    pub fn pivot(&self, i: usize) -> Option<usize> {
        self.representative(i).and_then(|v| v.iter().position(|c| !c.is_zero()))
    }
}

/// `W^0 = whole space, W^{k+1} = span A_a W^k`, stopping once it stabilizes;
/// a trailing zero space is included.
pub fn action_chain(actions: &[Matrix], dim: usize) -> Vec<Subspace> {
    let mut chain = vec![Subspace::whole(dim)];
    loop {
        let last = chain.last().unwrap();
        let images: Vec<Vec<Scalar>> = actions.iter().flat_map(|a| last.basis().iter().map(move |w| linalg::mat_vec(a, w))).collect();
        let next = Subspace::span(dim, &images);
        if &next == last {
            break;
        }
        let done = next.is_zero();
        chain.push(next);
        if done {
            break;
        }
    }
    chain
}

fn dims(chain: &[Subspace]) -> Vec<usize> {
    chain.iter().map(Subspace::dim).collect()
}

pub fn is_filiform_chain(d: &[usize], m: usize) -> bool {
    d.iter().copied().eq((0..=m).rev())
}

pub fn is_weak_filiform_chain(d: &[usize], m: usize) -> bool {
    m >= 2 && d.iter().copied().eq((2..=m).rev().chain([0]))
}

fn odd_actions(alg: &SuperAlgebra) -> Vec<Matrix> {
    alg.even_range().map(|a| alg.odd_action(a)).collect()
}

/// Dimensions of `g1, [g0, g1], [g0, [g0, g1]], ...`.
pub fn bracket_chain_dims(alg: &SuperAlgebra) -> Vec<usize> {
    dims(&action_chain(&odd_actions(alg), alg.m_odd()))
}

/// The canonical flag `V_i = W^{m-i}` when the chain has shape `[m, ..., 2, 0]`;
/// otherwise the offending chain dimensions.
pub fn detect_weak_filiform(alg: &SuperAlgebra) -> Result<Flag, Vec<usize>> {
    let m = alg.m_odd();
    let n = alg.n_even();
    let chain = action_chain(&odd_actions(alg), m);
    let d = dims(&chain);
    if !is_weak_filiform_chain(&d, m) {
        return Err(d);
    }
    let embed = |s: &Subspace| {
        let rows: Vec<Vec<Scalar>> = s.basis().iter().map(|r| ring::zero_vec(n).into_iter().chain(r.iter().cloned()).collect()).collect();
        Subspace::span(n + m, &rows)
    };
    let mut levels = vec![Subspace::zero(n + m), Subspace::zero(n + m)];
    for i in 2..=m {
        levels.push(embed(&chain[m - i]));
    }
    let v2 = &levels[2];
    let (u2, v2) = (v2.basis()[0].clone(), v2.basis()[1].clone());
    let representatives = (3..=m)
        .map(|i| {
            let (hi, lo) = (&levels[i], &levels[i - 1]);
            let k = hi.pivots().iter().position(|p| !lo.pivots().contains(p)).expect("pivots nest");
            hi.basis()[k].clone()
        })
        .collect();
    Ok(Flag { levels, u2, v2, representatives })
}

/// Chain of shape `[m, m-1, ..., 1, 0]`.
pub fn detect_filiform(alg: &SuperAlgebra) -> bool {
    is_filiform_chain(&bracket_chain_dims(alg), alg.m_odd())
}

/// `-A^T` for each even basis vector, acting on the dual of the odd part.
pub fn dual_action(actions: &[Matrix]) -> Vec<Matrix> {
    actions.iter().map(|a| linalg::transpose(a).into_iter().map(|r| r.into_iter().map(|c| -c).collect()).collect()).collect()
}

pub fn odd_dual_action(alg: &SuperAlgebra) -> Vec<Matrix> {
    dual_action(&odd_actions(alg))
}

/// `[g0, g0]` in full coordinates.
pub fn even_derived(alg: &SuperAlgebra) -> Subspace {
    alg.bracket_span(&alg.even_part(), &alg.even_part())
}

/// `dim g0 - dim [g0, g0]`.
pub fn even_derived_codim(alg: &SuperAlgebra) -> usize {
    alg.n_even() - even_derived(alg).dim()
}

/// Center of the even Lie algebra alone, in full coordinates.
pub fn even_center(alg: &SuperAlgebra) -> Subspace {
    let n = alg.n_even();
    let mut stacked = Vec::new();
    for b in alg.even_range() {
        let cols: Vec<Vec<Scalar>> = alg.even_range().map(|i| alg.basis_bracket(i, b)[..n].to_vec()).collect();
        stacked.extend(linalg::transpose(&cols));
    }
    let ker = linalg::kernel(&stacked, n);
    let rows: Vec<Vec<Scalar>> = ker.iter().map(|r| r.iter().cloned().chain(ring::zero_vec(alg.m_odd())).collect()).collect();
    Subspace::span(alg.dim(), &rows)
}

/// Verdicts of the filiform non-existence argument on one input.
pub fn nonexistence_certificate(alg: &SuperAlgebra, form: &OddForm) -> Certificate {
    const CHECK: &str = "filiform-nonexistence";
    if !verify_odd_quadratic(alg, form, Exec::Sequential).passed() {
        return Certificate::new(CHECK, Verdict::NotApplicable).with_witness(json!({ "reason": "not odd-quadratic" }));
    }
    let chain = bracket_chain_dims(alg);
    if !is_filiform_chain(&chain, alg.m_odd()) {
        return Certificate::new(CHECK, Verdict::NotApplicable)
            .with_witness(json!({ "reason": "odd part is not a filiform module", "chain": chain }));
    }
    let n = alg.n_even();
    if n == 1 {
        if alg.is_abelian() {
            return Certificate::new(CHECK, Verdict::UniqueCase).with_witness(json!({ "reason": "two-dimensional with zero product" }));
        }
        return Certificate::new(CHECK, Verdict::OutsideRange)
            .with_witness(json!({ "reason": "one-dimensional even part with nonzero product" }));
    }
    let dual_chain = dims(&action_chain(&odd_dual_action(alg), alg.m_odd()));
    let dual_filiform = is_filiform_chain(&dual_chain, alg.m_odd());
    let derived = even_derived(alg).dim();
    let filiform_over_itself = derived + 1 == n;
    let nilpotent_codim = n - derived >= 2;
    // facts 2 and 3 contradict each other, so at least one is false
    let facts = [
        ("dual module is filiform", dual_filiform),
        ("even part is filiform over itself", filiform_over_itself),
        ("nilpotent even part has derived codimension at least 2", nilpotent_codim),
    ];
    let failing = facts.iter().find(|(_, ok)| !ok).map(|(name, _)| *name);
    Certificate::fail(
        CHECK,
        json!({
            "dual_chain": dual_chain,
            "derived_dim": derived,
            "n_even": n,
            "even_nilpotent": alg.is_nilpotent(true),
            "failed_fact": failing,
        }),
    )
}

fn names_of(alg: &SuperAlgebra, v: &[Scalar]) -> serde_json::Value {
    let map: serde_json::Map<String, serde_json::Value> =
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (alg.name(k).to_string(), json!(c))).collect();
    serde_json::Value::Object(map)
}

/// Some `X` outside `[g0, g0]` with `B(X, w) != 0`.
fn pairing_witness(alg: &SuperAlgebra, form: &OddForm, derived: &Subspace, w: &[Scalar]) -> Option<Vec<Scalar>> {
    let d = alg.dim();
    let hit = alg.even_range().find(|&i| !form.eval(&ring::unit_vec(d, i), w).is_zero())?;
    let x = ring::unit_vec::<Scalar>(d, hit);
    if !derived.contains(&x) {
        return Some(x);
    }
    let c = alg.even_range().map(|i| ring::unit_vec::<Scalar>(d, i)).find(|c| !derived.contains(c))?;
    if !form.eval(&c, w).is_zero() {
        Some(c)
    } else {
        Some(ring::vec_add(&x, &c))
    }
}

/// The five structural facts of a weak filiform odd-quadratic algebra.
pub fn flag_structure_report(alg: &SuperAlgebra, form: &OddForm, flag: &Flag) -> Report {
    let center = alg.center();
    let center_even = center.intersection(&alg.even_part());
    let center_odd = center.intersection(&alg.odd_part());
    let z0 = even_center(alg);
    let a = Certificate::from_bool(
        "center-even",
        center_even == z0 && z0.dim() == 1,
        json!({ "dim_center_even": center_even.dim(), "dim_even_center": z0.dim() }),
    );
    let b = Certificate::from_bool(
        "center-odd",
        flag.level(2).contains_subspace(&center_odd) && (1..=3).contains(&center.dim()),
        json!({ "dim_center": center.dim(), "dim_center_odd": center_odd.dim() }),
    );
    let derived = even_derived(alg);
    let wu = pairing_witness(alg, form, &derived, flag.u2());
    let wv = pairing_witness(alg, form, &derived, flag.v2());
    let c = Certificate::from_bool(
        "pairing-v2",
        wu.is_some() && wv.is_some(),
        json!({
            "u2": wu.as_deref().map(|x| names_of(alg, x)),
            "v2": wv.as_deref().map(|x| names_of(alg, x)),
        }),
    );
    let d = match center_even.basis().first() {
        Some(e) if center_even.dim() == 1 => {
            let val = form.eval(e, flag.top());
            Certificate::from_bool("pairing-top", !val.is_zero(), json!({ "value": val }))
        }
        _ => Certificate::fail("pairing-top", json!({ "reason": "even center is not one-dimensional" })),
    };
    let series = alg.lower_central_series(true);
    let mut bad = Vec::new();
    for (j, cj) in series.iter().enumerate().skip(1) {
        for i in 2..=flag.m() {
            let image = alg.bracket_span(cj, &flag.level(i as isize));
            let bound = flag.level(i as isize - j as isize - 1);
            if !bound.contains_subspace(&image) {
                bad.push(json!({ "j": j, "i": i, "image_dim": image.dim(), "bound_dim": bound.dim() }));
            }
        }
    }
    let e = Certificate::from_violations("descending", bad);
    Report::new(vec![a, b, c, d, e])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn chain_examples() {
        assert_eq!(bracket_chain_dims(&catalog::g6(0).algebra), vec![3, 2, 0]);
        assert_eq!(bracket_chain_dims(&catalog::g8(2).algebra), vec![4, 3, 2, 0]);
        assert_eq!(bracket_chain_dims(&catalog::example_dualpair(4).unwrap().algebra), vec![4, 3, 2, 0]);
        assert_eq!(bracket_chain_dims(&catalog::abelian2().algebra), vec![1, 0]);
    }

    #[test]
    fn g18_flag_representatives() {
        let g = catalog::g8(1).algebra;
        let f = detect_weak_filiform(&g).unwrap();
        let unit = |n: &str| ring::unit_vec::<Scalar>(8, g.index(n).unwrap());
        assert_eq!(f.u2(), unit("u2").as_slice());
        assert_eq!(f.v2(), unit("v2").as_slice());
        assert_eq!(f.representative(3).unwrap(), unit("e3").as_slice());
        assert_eq!(f.top(), unit("e4").as_slice());
        assert_eq!(f.level(1), Subspace::zero(8));
    }

    #[test]
    fn zero_action_is_not_weak_filiform() {
        let g = crate::algebra::Structure::<Scalar>::new(&["X"], &["a", "b", "c"]).unwrap();
        assert_eq!(detect_weak_filiform(&g), Err(vec![3, 0]));
        let one = crate::algebra::Structure::<Scalar>::new(&["X"], &["a"]).unwrap();
        assert!(detect_filiform(&one));
    }

    #[test]
    fn model_is_filiform() {
        assert!(detect_filiform(&catalog::model_filiform(5).unwrap().algebra));
        assert!(!detect_filiform(&catalog::g6(0).algebra));
    }

    #[test]
    fn dual_action_example() {
        let g = catalog::g6(0).algebra;
        let dual = odd_dual_action(&g);
        // odd coordinates: e3 = 0, u2 = 1, v2 = 2; u2* goes to -e3*
        assert_eq!(dual[0][0][1], Scalar::from_int(-1));
        assert_eq!(dual_action(&dual), odd_actions(&g));
        let model = catalog::model_filiform(4).unwrap().algebra;
        let d = dims(&action_chain(&odd_dual_action(&model), 4));
        assert!(is_filiform_chain(&d, 4));
    }

    #[test]
    fn nonexistence_verdicts() {
        let a = catalog::abelian2();
        assert_eq!(nonexistence_certificate(&a.algebra, a.form.as_ref().unwrap()).verdict, Verdict::UniqueCase);
        let g = catalog::g6(0);
        assert_eq!(nonexistence_certificate(&g.algebra, g.form.as_ref().unwrap()).verdict, Verdict::NotApplicable);
        let mut b = a.algebra.clone();
        b.set("e", "e", &[("X", Scalar::one())]).unwrap();
        assert_eq!(nonexistence_certificate(&b, a.form.as_ref().unwrap()).verdict, Verdict::OutsideRange);
    }

    #[test]
    fn structure_reports_pass() {
        for e in [catalog::g6(0), catalog::g6(1), catalog::g8(0), catalog::g8(1), catalog::g8(2)] {
            let flag = detect_weak_filiform(&e.algebra).unwrap();
            let r = flag_structure_report(&e.algebra, e.form.as_ref().unwrap(), &flag);
            assert!(r.passed(), "{}: {:?}", e.key, r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn descending_bound_on_g08() {
        let g = catalog::g8(0).algebra;
        let flag = detect_weak_filiform(&g).unwrap();
        let c1 = &g.lower_central_series(true)[1];
        let image = g.bracket_span(c1, &flag.level(4));
        assert_eq!(image, Subspace::coordinate(8, [g.index("v2").unwrap()]));
    }
}
