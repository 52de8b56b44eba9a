//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use oddquad::algebra::super_jacobi_violations;
use oddquad::catalog::{self, CatalogEntry, CatalogKey};
use oddquad::classify::{self, audit_invariance, audit_jacobi, classify_dimension, verify_witness_isomorphism};
use oddquad::derivations::{solve_odd_skew_derivations, ExtensionData, OddDerivation};
use oddquad::extensions::{decompose_weak_filiform, g8_identification, generalized_odd_double_extension, matches_via};
use oddquad::flags::{bracket_chain_dims, detect_weak_filiform, even_derived_codim, flag_structure_report};
use oddquad::forms::{phi_module_check, verify_odd_quadratic};
use oddquad::linalg::{rref, Matrix};
use oddquad::scalar::rat;
use oddquad::{Exec, Scalar, SuperAlgebra};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, format!("{what} took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn c1_catalog_validity() -> Check {
    let start = Instant::now();
    let mut entries: Vec<CatalogEntry> = vec![catalog::abelian2()];
    for m in 3..=6 {
        entries.push(catalog::example_dualpair(m).map_err(|e| e.to_string())?);
        entries.push(catalog::example_coadjoint(m).map_err(|e| e.to_string())?);
    }
    for d in 0..2 {
        entries.push(catalog::g6_family(d, &rat(1, 1), &rat(0, 1), &rat(0, 1)).map_err(|e| e.to_string())?);
    }
    for v in 0..3 {
        entries.push(catalog::g8_family(v, &rat(1, 1), &rat(0, 1), &rat(0, 1)).map_err(|e| e.to_string())?);
    }
    for e in &entries {
        ensure(super_jacobi_violations(&e.algebra, Exec::Parallel).is_empty(), format!("{}: Jacobi", e.key))?;
        let form = e.form.as_ref().ok_or(format!("{}: no form", e.key))?;
        ensure(verify_odd_quadratic(&e.algebra, form, Exec::Parallel).passed(), format!("{}: odd-quadratic", e.key))?;
    }
    let t = within(start, Duration::from_secs(1), "catalog validity")?;
    Ok(format!("{} entries in {t:.2?}", entries.len()))
}

fn c2_center_dims() -> Check {
    let cases = [("g2_8", (1, 1)), ("g0_8", (1, 2)), ("g1_8", (1, 2)), ("g0_6", (1, 2)), ("g1_6", (1, 2))];
    for (key, want) in cases {
        let e = catalog::build(key).map_err(|e| e.to_string())?;
        let got = e.algebra.center_dims();
        ensure(got == want, format!("{key}: center {got:?}, expected {want:?}"))?;
    }
    Ok("g2_8 -> 2, g0_8/g1_8/g0_6/g1_6 -> 3 (1 even, 2 odd)".into())
}

fn c3_flags() -> Check {
    for d in 0..2 {
        ensure(bracket_chain_dims(&catalog::g6(d).algebra) == [3, 2, 0], format!("g{d}_6 chain"))?;
    }
    for v in 0..3 {
        ensure(bracket_chain_dims(&catalog::g8(v).algebra) == [4, 3, 2, 0], format!("g{v}_8 chain"))?;
    }
    let mut found = Vec::new();
    for key in CatalogKey::standard() {
        let e = key.build().map_err(|e| e.to_string())?;
        let ok = detect_weak_filiform(&e.algebra).is_ok();
        ensure(ok == e.expected.weak_filiform, format!("{key}: detection {ok}, expected {}", e.expected.weak_filiform))?;
        if ok {
            found.push(key.to_string());
        }
    }
    for m in 7..=8 {
        for e in [catalog::example_dualpair(m), catalog::example_coadjoint(m)] {
            let e = e.map_err(|e| e.to_string())?;
            ensure(detect_weak_filiform(&e.algebra).is_ok(), format!("{}: not detected", e.key))?;
        }
    }
    ensure(detect_weak_filiform(&catalog::abelian2().algebra).is_err(), "abelian2 detected")?;
    Ok(format!("weak filiform: {}", found.join(", ")))
}

/// The closed-form family of odd skew derivations of g0_6 at lambda = 1.
fn closed_form_derivation(g: &SuperAlgebra, alpha: &Scalar, beta: &Scalar, a: i64, b: i64, c: i64, f: i64) -> Matrix {
    let (a, b, c, f) = (s(a), s(b), s(c), s(f));
    let x1 = [("e3", a.clone()), ("u2", &(&(&a * beta) + &(&b * alpha)) + &c), ("v2", -&(&a * alpha))];
    let x2 = [("e3", b.clone()), ("u2", &b * beta), ("v2", c)];
    let x3 = [("u2", b), ("v2", -&a)];
    let e3 = [("X3", f)];
    let images: [(&str, &[(&str, Scalar)]); 4] = [("X1", &x1), ("X2", &x2), ("X3", &x3), ("e3", &e3)];
    OddDerivation::from_images(g, &images).expect("odd images").matrix().clone()
}

fn echelon(ms: &[Matrix]) -> Matrix {
    let rows: Vec<Vec<Scalar>> = ms.iter().map(|m| m.iter().flatten().cloned().collect()).collect();
    let (r, pivots) = rref(&rows);
    r.into_iter().take(pivots.len()).collect()
}

fn c4_derivation_space() -> Check {
    // alpha = beta = 0 is the criterion; the other points cross-check the general formula
    for (al, be) in [(0, 0), (1, 0), (0, -2), (3, 5)] {
        let e = catalog::g6_family(0, &rat(1, 1), &rat(al, 1), &rat(be, 1)).map_err(|e| e.to_string())?;
        let sols = solve_odd_skew_derivations(&e.algebra, e.form.as_ref().unwrap());
        let solved: Vec<Matrix> = sols.iter().map(|d| d.matrix().clone()).collect();
        let (alpha, beta) = (s(al), s(be));
        let family: Vec<Matrix> = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
            .iter()
            .map(|&(a, b, c, f)| closed_form_derivation(&e.algebra, &alpha, &beta, a, b, c, f))
            .collect();
        ensure(solved.len() == 4, format!("alpha={al}, beta={be}: dimension {}", solved.len()))?;
        ensure(echelon(&solved) == echelon(&family), format!("alpha={al}, beta={be}: echelon bases differ"))?;
    }
    Ok("dimension 4, echelon basis equals the (a,b,c,f) family".into())
}

fn g8_case_data(g: &SuperAlgebra, variant: u8) -> ExtensionData {
    let x1 = [("e3", s(-1))];
    let x3 = [("v2", s(1))];
    let e3 = [("X3", Scalar::from_frac(1, 2))];
    let mut images: Vec<(&str, &[(&str, Scalar)])> = vec![("X1", &x1), ("X3", &x3)];
    if variant == 2 {
        images.push(("e3", &e3));
    }
    let d = OddDerivation::from_images(g, &images).expect("odd images");
    let mut x0 = vec![Scalar::zero(); g.dim()];
    if variant == 2 {
        x0[g.index("X2").unwrap()] = s(1);
    }
    // with e* identified with -X4, [e4,e4] = X4 needs lambda0 = -1
    let lambda0 = if variant == 1 { s(-1) } else { s(0) };
    ExtensionData { d, x0, lambda0 }
}

/// Bracket in `g`, whose basis is ordered like `names_from`.
fn bracket_named(g: &SuperAlgebra, names_from: &SuperAlgebra, x: &str, y: &str) -> Vec<Scalar> {
    g.basis_bracket(names_from.index(x).unwrap(), names_from.index(y).unwrap())
}

fn c5_extension_reconstruction() -> Check {
    let g6 = catalog::g6(0);
    let form = g6.form.as_ref().unwrap();
    for v in 0..3u8 {
        let ext = generalized_odd_double_extension(&g6.algebra, form, &g8_case_data(&g6.algebra, v)).map_err(|e| e.to_string())?;
        let target = catalog::g8(v);
        let p = g8_identification(&ext.algebra, &target.algebra).map_err(|e| e.to_string())?;
        let ok = matches_via(&ext.algebra, &ext.form, &target.algebra, target.form.as_ref().unwrap(), &p).map_err(|e| e.to_string())?;
        ensure(ok, format!("variant {v}: constants differ from g{v}_8"))?;
        if v == 2 {
            let t = ext.algebra.change_basis(&p).map_err(|e| e.to_string())?;
            let names = &target.algebra;
            let mut half_x3 = vec![Scalar::zero(); 8];
            half_x3[names.index("X3").unwrap()] = Scalar::from_frac(1, 2);
            let mut x4 = vec![Scalar::zero(); 8];
            x4[names.index("X4").unwrap()] = s(1);
            ensure(bracket_named(&t, names, "e3", "e4") == half_x3, "[e3,e4] != X3/2")?;
            ensure(bracket_named(&t, names, "u2", "e4") == x4, "[u2,e4] != X4")?;
        }
    }
    Ok("3 of 3 match g0_8, g1_8, g2_8".into())
}

fn c6_round_trip() -> Check {
    for v in 0..3u8 {
        let e = catalog::g8(v);
        let form = e.form.as_ref().unwrap();
        let flag = detect_weak_filiform(&e.algebra).map_err(|c| format!("chain {c:?}"))?;
        let dec = decompose_weak_filiform(&e.algebra, form, &flag).map_err(|e| e.to_string())?;
        ensure(dec.h.dim() + 2 == e.algebra.dim(), format!("g{v}_8: dim h = {}", dec.h.dim()))?;
        let ext = generalized_odd_double_extension(&dec.h, &dec.form, &dec.data).map_err(|e| e.to_string())?;
        let w = dec.witness.identification.as_ref().ok_or("no identification")?;
        let ok = matches_via(&ext.algebra, &ext.form, &e.algebra, form, w).map_err(|e| e.to_string())?;
        ensure(ok, format!("g{v}_8: re-extension differs"))?;
    }
    Ok("3 of 3 reproduced, dim h = 6".into())
}

fn c7_classification() -> Check {
    let start = Instant::now();
    let mut summary = Vec::new();
    for (dim, want) in [(6usize, 2usize), (8, 3)] {
        let c = classify_dimension(dim, Exec::Parallel).map_err(|e| e.to_string())?;
        ensure(c.classes.len() == want, format!("dim {dim}: {} classes", c.classes.len()))?;
        for (i, a) in c.classes.iter().enumerate() {
            for b in &c.classes[i + 1..] {
                ensure(a.fingerprint != b.fingerprint, format!("dim {dim}: equal fingerprints"))?;
            }
            let name = a.name.as_deref().ok_or(format!("dim {dim}: unmatched class"))?;
            let target = catalog::build(name).map_err(|e| e.to_string())?;
            let ok = verify_witness_isomorphism(&a.algebra, &target.algebra, &a.witness).map_err(|e| e.to_string())?;
            ensure(ok, format!("{name}: witness fails"))?;
            summary.push(name.to_string());
        }
    }
    let t = within(start, Duration::from_secs(10), "classification")?;
    Ok(format!("{} in {t:.2?}", summary.join(", ")))
}

fn c8_table_audit() -> Check {
    let mut counts = Vec::new();
    for dim in [6, 8] {
        let j = audit_jacobi(dim).map_err(|e| e.to_string())?;
        let i = audit_invariance(dim).map_err(|e| e.to_string())?;
        for a in [&j, &i] {
            let bad: Vec<&str> = a.rows.iter().filter(|r| !r.matched).map(|r| r.triple.as_str()).collect();
            ensure(a.passed(), format!("{}: mismatched rows {bad:?}", a.title))?;
        }
        counts.push(format!("dim {dim}: {} + {} rows", j.rows.len(), i.rows.len()));
    }
    Ok(counts.join(", "))
}

fn c9_nonexistence() -> Check {
    let start = Instant::now();
    let grid = [s(-1), s(0), s(1)];
    let mut problems = Vec::new();
    for n in [2, 3] {
        let r = classify::small_search_nonexistence(n, &grid, Exec::Parallel).map_err(|e| e.to_string())?;
        if !r.is_empty() {
            problems.push(format!("n_even={n}: {} hits", r.hits.len()));
        }
    }
    let r1 = classify::small_search_nonexistence(1, &grid, Exec::Parallel).map_err(|e| e.to_string())?;
    if !r1.only_abelian() {
        let extra: Vec<String> =
            r1.classes.iter().map(|h| oddquad::io::emit_algebra(&h.algebra, Some(&h.form)).replace(char::is_whitespace, "")).collect();
        problems.push(format!("n_even=1: {} classes, expected abelian2 only: {}", r1.classes.len(), extra.join(" ")));
    }
    for key in CatalogKey::standard() {
        let e = key.build().map_err(|e| e.to_string())?;
        if e.algebra.n_even() >= 2 && e.algebra.is_nilpotent(true) && even_derived_codim(&e.algebra) < 2 {
            problems.push(format!("{key}: derived codimension < 2"));
        }
    }
    within(start, Duration::from_secs(60), "search")?;
    if problems.is_empty() {
        Ok("n_even 2, 3 empty; n_even 1 only abelian2; codimension bound holds".into())
    } else {
        Err(problems.join("; "))
    }
}

fn c10_structure() -> Check {
    let mut n = 0;
    for key in CatalogKey::standard() {
        let e = key.build().map_err(|e| e.to_string())?;
        let (Ok(flag), Some(form)) = (detect_weak_filiform(&e.algebra), e.form.as_ref()) else { continue };
        if !verify_odd_quadratic(&e.algebra, form, Exec::Parallel).passed() {
            continue;
        }
        ensure(e.algebra.is_nilpotent(true) && e.algebra.is_nilpotent(false), format!("{key}: not nilpotent"))?;
        for report in [flag_structure_report(&e.algebra, form, &flag), phi_module_check(&e.algebra, form)] {
            let failed: Vec<String> = report.failures().map(|c| c.check.clone()).collect();
            ensure(failed.is_empty(), format!("{key}: {failed:?}"))?;
        }
        n += 1;
    }
    Ok(format!("{n} entries, zero failures"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("catalog validity", c1_catalog_validity),
        ("center dimensions", c2_center_dims),
        ("flags", c3_flags),
        ("derivation space", c4_derivation_space),
        ("extension reconstruction", c5_extension_reconstruction),
        ("decompose round trip", c6_round_trip),
        ("classification counts", c7_classification),
        ("constraint table audit", c8_table_audit),
        ("non-existence search", c9_nonexistence),
        ("structural properties", c10_structure),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
