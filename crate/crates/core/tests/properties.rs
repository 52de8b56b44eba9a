use proptest::prelude::*;

use oddquad::algebra::super_jacobi_violations;
use oddquad::catalog::{self, CatalogKey};
use oddquad::classify::{apply, solve_with_splits, ElimError, Substitution};
use oddquad::flags::dual_action;
use oddquad::forms::{ad_skew_violations, invariance_violations};
use oddquad::io::{emit_algebra, load_algebra};
use oddquad::linalg::{self, Matrix};
use oddquad::poly::Poly;
use oddquad::ring::Ring;
use oddquad::scalar::rat;
use oddquad::{Exec, OddForm, Scalar, Structure, SuperAlgebra};

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn arb_dims() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=2, 1usize..=2)
}

fn arb_structure() -> impl Strategy<Value = SuperAlgebra> {
    arb_dims().prop_flat_map(|(n, m)| arb_structure_of(n, m))
}

/// Small graded algebra with constants in {-1, 0, 1}; usually not Lie.
fn arb_structure_of(n: usize, m: usize) -> impl Strategy<Value = SuperAlgebra> {
    let d = n + m;
    proptest::collection::vec(-1i64..=1, d * d * d).prop_map(move |cs| {
        let even: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
        let odd: Vec<String> = (1..=m).map(|i| format!("e{i}")).collect();
        let mut g = Structure::new(&even, &odd).unwrap();
        for i in 0..d {
            for j in i..d {
                if i == j && !g.is_odd(i) {
                    continue;
                }
                let target_odd = g.is_odd(i) != g.is_odd(j);
                let v: Vec<Scalar> =
                    (0..d).map(|k| if g.is_odd(k) == target_odd { s(cs[(i * d + j) * d + k]) } else { Scalar::zero() }).collect();
                g.set_bracket(i, j, v).unwrap();
            }
        }
        g
    })
}

fn arb_form(n: usize, m: usize) -> impl Strategy<Value = OddForm> {
    proptest::collection::vec(-2i64..=2, n * m).prop_map(move |cs| {
        let pairing = (0..n).map(|i| (0..m).map(|j| s(cs[i * m + j])).collect()).collect();
        OddForm::new(n, m, pairing).unwrap()
    })
}

fn arb_structure_and_form() -> impl Strategy<Value = (SuperAlgebra, OddForm)> {
    arb_dims().prop_flat_map(|(n, m)| (arb_structure_of(n, m), arb_form(n, m)))
}

/// Parity-preserving invertible map: per block, unit lower times diagonal times unit upper.
fn arb_coordinate_map(n: usize, m: usize) -> impl Strategy<Value = Matrix> {
    let d = n + m;
    (
        proptest::collection::vec(-2i64..=2, d * d),
        proptest::collection::vec(-2i64..=2, d * d),
        proptest::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(2), Just(3)], d),
    )
        .prop_map(move |(lo, up, diag)| {
            let block = |i: usize, j: usize| (i < n) == (j < n);
            let mut l = linalg::identity(d);
            let mut u = linalg::identity(d);
            let mut dg = linalg::zeros(d, d);
            for i in 0..d {
                dg[i][i] = s(diag[i]);
                for j in 0..d {
                    if block(i, j) && j < i {
                        l[i][j] = s(lo[i * d + j]);
                    }
                    if block(i, j) && j > i {
                        u[i][j] = s(up[i * d + j]);
                    }
                }
            }
            linalg::mat_mul(&linalg::mat_mul(&l, &dg), &u)
        })
}

/// Jacobi over all ordered triples, written out with graded signs and the
/// bilinear bracket instead of the stored table.
fn jacobi_oracle(g: &SuperAlgebra) -> bool {
    let d = g.dim();
    let unit = |t: usize| {
        let mut v = vec![Scalar::zero(); d];
        v[t] = s(1);
        v
    };
    let sign = |neg: bool| if neg { s(-1) } else { s(1) };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (x, y, z) = (unit(i), unit(j), unit(k));
                let (px, py, pz) = (g.is_odd(i), g.is_odd(j), g.is_odd(k));
                let t1 = g.bracket(&x, &g.bracket(&y, &z).unwrap()).unwrap();
                let t2 = g.bracket(&y, &g.bracket(&z, &x).unwrap()).unwrap();
                let t3 = g.bracket(&z, &g.bracket(&x, &y).unwrap()).unwrap();
                for l in 0..d {
                    let total = &(&(&sign(px && pz) * &t1[l]) + &(&sign(px && py) * &t2[l])) + &(&sign(py && pz) * &t3[l]);
                    if !total.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn lie_entries() -> Vec<(SuperAlgebra, OddForm)> {
    CatalogKey::standard()
        .into_iter()
        .filter_map(|k| k.build().ok())
        .filter(|e| e.algebra.dim() <= 8)
        .filter_map(|e| Some((e.algebra, e.form?)))
        .collect()
}

fn arb_lie_entry() -> impl Strategy<Value = (SuperAlgebra, OddForm, Matrix)> {
    let entries = lie_entries();
    (0..entries.len()).prop_flat_map(move |idx| {
        let (g, b) = entries[idx].clone();
        arb_coordinate_map(g.n_even(), g.m_odd()).prop_map(move |p| (g.clone(), b.clone(), p))
    })
}

/// Linear forms `c0 + c1 x0 + c2 x1 + c3 x2`, optionally multiplied together.
fn arb_constraint() -> impl Strategy<Value = Poly> {
    let linear = proptest::collection::vec(-2i64..=2, 4).prop_map(|c| {
        let mut p = Poly::int(c[0]);
        for (v, &cv) in c[1..].iter().enumerate() {
            p = p.plus(&Poly::var(v as u32).times(&Poly::int(cv)));
        }
        p
    });
    prop_oneof![linear.clone(), (0u32..3, linear).prop_map(|(v, l)| Poly::var(v).times(&l)),]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_checker_agrees_with_ordered_triple_oracle(g in arb_structure()) {
        prop_assert_eq!(super_jacobi_violations(&g, Exec::Sequential).is_empty(), jacobi_oracle(&g));
    }

    #[test]
    fn jacobi_survives_basis_change((g, _b, p) in arb_lie_entry()) {
        let h = g.change_basis(&p).unwrap();
        prop_assert!(super_jacobi_violations(&h, Exec::Parallel).is_empty());
        prop_assert!(jacobi_oracle(&h));
    }

    #[test]
    fn change_basis_composes(
        (g, p, q) in arb_dims().prop_flat_map(|(n, m)| (arb_structure_of(n, m), arb_coordinate_map(n, m), arb_coordinate_map(n, m)))
    ) {
        let two_steps = g.change_basis(&p).unwrap().change_basis(&q).unwrap();
        let one_step = g.change_basis(&linalg::mat_mul(&q, &p)).unwrap();
        prop_assert!(two_steps.same_constants(&one_step));
        prop_assert!(g.change_basis(&linalg::identity(g.dim())).unwrap().same_constants(&g));
    }

    #[test]
    fn dual_action_is_an_involution(entries in proptest::collection::vec(-3i64..=3, 18)) {
        let actions: Vec<Matrix> = entries
            .chunks(9)
            .map(|c| c.chunks(3).map(|r| r.iter().map(|&x| s(x)).collect()).collect())
            .collect();
        prop_assert_eq!(dual_action(&dual_action(&actions)), actions);
    }

    #[test]
    fn ad_skew_iff_invariant_random((g, b) in arb_structure_and_form()) {
        prop_assert_eq!(ad_skew_violations(&g, &b).is_empty(), invariance_violations(&g, &b, Exec::Sequential).is_empty());
    }

    #[test]
    fn ad_skew_and_invariance_transport((g, b, p) in arb_lie_entry()) {
        let h = g.change_basis(&p).unwrap();
        let bh = b.change_basis(&p).unwrap();
        prop_assert!(ad_skew_violations(&h, &bh).is_empty());
        prop_assert!(invariance_violations(&h, &bh, Exec::Parallel).is_empty());
    }

    #[test]
    fn json_round_trip((g, b) in arb_structure_and_form(), radical in any::<bool>()) {
        let g = if radical {
            // scale every constant by sqrt(2) to exercise the quadratic encoding
            let r = Scalar::quadratic(rat(0, 1), rat(1, 1), rat(2, 1)).unwrap();
            g.map(|c| c * &r)
        } else {
            g
        };
        let text = emit_algebra(&g, Some(&b));
        let (g2, b2) = load_algebra(&text).unwrap();
        prop_assert!(g2.same_constants(&g));
        prop_assert_eq!(g2.names(), g.names());
        prop_assert_eq!(b2, Some(b));
    }

    #[test]
    fn branch_substitutions_zero_every_constraint(cs in proptest::collection::vec(arb_constraint(), 1..4)) {
        match solve_with_splits(Substitution::new(), &cs, &|_| true, Exec::Sequential) {
            Ok(branches) => {
                for br in &branches {
                    for c in &cs {
                        prop_assert!(apply(&br.subs, c).is_empty(), "{} under {:?}", c, br.subs);
                    }
                }
            }
            Err(ElimError::Unsplittable(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn g8_family_is_lie_for_several_parameters() {
    for (l, a, b) in [(1, 0, 0), (2, 1, -1), (-3, 5, 7)] {
        for v in 0..3 {
            let e = catalog::g8_family(v, &rat(l, 1), &rat(a, 1), &rat(b, 1)).unwrap();
            assert!(jacobi_oracle(&e.algebra));
            assert!(invariance_violations(&e.algebra, e.form.as_ref().unwrap(), Exec::Sequential).is_empty());
        }
    }
}
