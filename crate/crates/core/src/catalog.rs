//! Named fixtures: the small algebras used throughout the tests, the CLI and
//! the classification cross-checks.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Structure, SuperAlgebra};
use crate::error::{Error, Result};
use crate::forms::OddForm;
use crate::ring;
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum CatalogKey {
    Abelian2,
    ModelFiliform(usize),
    ExampleDualpair(usize),
    ExampleCoadjoint(usize),
    G6 { delta: u8, lambda: Rational, alpha: Rational, beta: Rational },
    G8 { variant: u8, lambda: Rational, alpha: Rational, beta: Rational },
}

/// Properties each fixture is known to have.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expected {
    /// `(even, odd)` center dimensions.
    pub center: (usize, usize),
    pub chain: Vec<usize>,
    pub jacobi: bool,
    pub odd_quadratic: bool,
    pub weak_filiform: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub key: CatalogKey,
    pub algebra: SuperAlgebra,
    pub form: Option<OddForm>,
    pub expected: Expected,
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn half() -> Scalar {
    Scalar::from_frac(1, 2)
}

impl CatalogKey {
    pub fn g6(delta: u8) -> Self {
        CatalogKey::G6 { delta, lambda: Rational::one(), alpha: Rational::zero(), beta: Rational::zero() }
    }

    pub fn g8(variant: u8) -> Self {
        CatalogKey::G8 { variant, lambda: Rational::one(), alpha: Rational::zero(), beta: Rational::zero() }
    }

    /// Keys listed by `catalog list`.
    pub fn standard() -> Vec<CatalogKey> {
        let mut keys = vec![CatalogKey::Abelian2, CatalogKey::ModelFiliform(4)];
        keys.extend((3..=6).map(CatalogKey::ExampleDualpair));
        keys.extend((3..=6).map(CatalogKey::ExampleCoadjoint));
        keys.extend([Self::g6(0), Self::g6(1), Self::g8(0), Self::g8(1), Self::g8(2)]);
        keys
    }

    pub fn build(&self) -> Result<CatalogEntry> {
        match self {
            CatalogKey::Abelian2 => Ok(abelian2()),
            CatalogKey::ModelFiliform(m) => model_filiform(*m),
            CatalogKey::ExampleDualpair(m) => example_dualpair(*m),
            CatalogKey::ExampleCoadjoint(m) => example_coadjoint(*m),
            CatalogKey::G6 { delta, lambda, alpha, beta } => g6_family(*delta, lambda, alpha, beta),
            CatalogKey::G8 { variant, lambda, alpha, beta } => g8_family(*variant, lambda, alpha, beta),
        }
    }
}

fn is_default_form(l: &Rational, a: &Rational, b: &Rational) -> bool {
    l.is_one() && a.is_zero() && b.is_zero()
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params =
            |l: &Rational, a: &Rational, b: &Rational| format!("{},{},{}", format_rational(l), format_rational(a), format_rational(b));
        match self {
            CatalogKey::Abelian2 => write!(f, "abelian2"),
            CatalogKey::ModelFiliform(m) => write!(f, "model_filiform({m})"),
            CatalogKey::ExampleDualpair(m) => write!(f, "example_dualpair({m})"),
            CatalogKey::ExampleCoadjoint(m) => write!(f, "example_coadjoint({m})"),
            CatalogKey::G6 { delta, lambda, alpha, beta } if is_default_form(lambda, alpha, beta) => {
                write!(f, "g{delta}_6")
            }
            CatalogKey::G8 { variant, lambda, alpha, beta } if is_default_form(lambda, alpha, beta) => {
                write!(f, "g{variant}_8")
            }
            CatalogKey::G6 { delta, lambda, alpha, beta } => write!(f, "g6({delta},{})", params(lambda, alpha, beta)),
            CatalogKey::G8 { variant, lambda, alpha, beta } => {
                write!(f, "g8({variant},{})", params(lambda, alpha, beta))
            }
        }
    }
}

impl FromStr for CatalogKey {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Invalid(format!("unknown catalog key `{text}`"));
        match t.as_str() {
            "abelian2" => return Ok(CatalogKey::Abelian2),
            "g0_6" => return Ok(Self::g6(0)),
            "g1_6" => return Ok(Self::g6(1)),
            "g0_8" => return Ok(Self::g8(0)),
            "g1_8" => return Ok(Self::g8(1)),
            "g2_8" => return Ok(Self::g8(2)),
            _ => {}
        }
        let (head, rest) = t.split_once('(').ok_or_else(bad)?;
        let args: Vec<&str> = rest.strip_suffix(')').ok_or_else(bad)?.split(',').collect();
        let size = || -> Result<usize> {
            match args.as_slice() {
                [m] => m.parse().map_err(|_| bad()),
                _ => Err(bad()),
            }
        };
        let family = || -> Result<(u8, Rational, Rational, Rational)> {
            let tag: u8 = args[0].parse().map_err(|_| bad())?;
            let mut p = [Rational::one(), Rational::zero(), Rational::zero()];
            match args.len() {
                1 => {}
                4 => {
                    for (slot, a) in p.iter_mut().zip(&args[1..]) {
                        *slot = parse_rational(a)?;
                    }
                }
                _ => return Err(bad()),
            }
            let [l, a, b] = p;
            Ok((tag, l, a, b))
        };
        match head {
            "model_filiform" => Ok(CatalogKey::ModelFiliform(size()?)),
            "example_dualpair" => Ok(CatalogKey::ExampleDualpair(size()?)),
            "example_coadjoint" => Ok(CatalogKey::ExampleCoadjoint(size()?)),
            "g6" => {
                let (delta, lambda, alpha, beta) = family()?;
                Ok(CatalogKey::G6 { delta, lambda, alpha, beta })
            }
            "g8" => {
                let (variant, lambda, alpha, beta) = family()?;
                Ok(CatalogKey::G8 { variant, lambda, alpha, beta })
            }
            _ => Err(bad()),
        }
    }
}

pub fn build(key: &str) -> Result<CatalogEntry> {
    key.parse::<CatalogKey>()?.build()
}

fn weak_chain(m: usize) -> Vec<usize> {
    (2..=m).rev().chain([0]).collect()
}

/// One even and one odd vector, zero product, `B(X, e) = 1`.
pub fn abelian2() -> CatalogEntry {
    let alg = Structure::new(&["X"], &["e"]).expect("distinct names");
    let form = OddForm::new(1, 1, vec![vec![Scalar::one()]]).expect("shape");
    CatalogEntry {
        key: CatalogKey::Abelian2,
        algebra: alg,
        form: Some(form),
        expected: Expected { center: (1, 1), chain: vec![1, 0], jacobi: true, odd_quadratic: true, weak_filiform: false },
    }
}

/// One even generator acting on `e1..em` by the shift `e_i -> e_{i-1}`.
pub fn model_filiform(m: usize) -> Result<CatalogEntry> {
    if m < 1 {
        return Err(Error::Invalid("model_filiform needs m >= 1".into()));
    }
    let odd: Vec<String> = (1..=m).map(|i| format!("e{i}")).collect();
    let mut alg = Structure::new(&["X1".to_string()], &odd)?;
    for i in 2..=m {
        alg.set("X1", &format!("e{i}"), &[(format!("e{}", i - 1), s(1))])?;
    }
    Ok(CatalogEntry {
        key: CatalogKey::ModelFiliform(m),
        algebra: alg,
        form: None,
        expected: Expected { center: (0, 1), chain: (0..=m).rev().collect(), jacobi: true, odd_quadratic: false, weak_filiform: false },
    })
}

/// `h + P(h*)` for `h` with `[X1, Xi] = X_{i+1}` and the coadjoint-type action,
/// paired by evaluation.
pub fn example_dualpair(m: usize) -> Result<CatalogEntry> {
    if m < 3 {
        return Err(Error::Invalid("example_dualpair needs m >= 3".into()));
    }
    let even: Vec<String> = (1..=m).map(|i| format!("X{i}")).collect();
    let odd: Vec<String> = (1..=m).map(|i| format!("X{i}*")).collect();
    let mut alg = Structure::new(&even, &odd)?;
    for i in 2..m {
        alg.set("X1", &even[i - 1], &[(even[i].clone(), s(1))])?;
    }
    // X_i . X_j^* = -X_j^* o ad(X_i), read off coordinatewise
    let h = alg.clone();
    for i in 0..m {
        for j in 0..m {
            let mut v = ring::zero_vec(2 * m);
            for k in 0..m {
                v[m + k] = -h.basis_bracket(i, k)[j].clone();
            }
            alg.set_bracket(i, m + j, v)?;
        }
    }
    let listed = dualpair_listed(m)?;
    if !alg.same_constants(&listed) {
        return Err(Error::Internal("dual-pair action disagrees with its listed products".into()));
    }
    let form = OddForm::new(m, m, crate::linalg::identity(m))?;
    Ok(CatalogEntry {
        key: CatalogKey::ExampleDualpair(m),
        algebra: alg,
        form: Some(form),
        expected: Expected { center: (1, 2), chain: weak_chain(m), jacobi: true, odd_quadratic: true, weak_filiform: true },
    })
}

/// The same algebra written from its list of nonzero products.
fn dualpair_listed(m: usize) -> Result<SuperAlgebra> {
    let even: Vec<String> = (1..=m).map(|i| format!("X{i}")).collect();
    let odd: Vec<String> = (1..=m).map(|i| format!("X{i}*")).collect();
    let mut alg = Structure::new(&even, &odd)?;
    for i in 2..m {
        alg.set("X1", &format!("X{i}"), &[(format!("X{}", i + 1), s(1))])?;
        alg.set(&format!("X{i}"), &format!("X{}*", i + 1), &[("X1*".to_string(), s(1))])?;
    }
    for i in 3..=m {
        alg.set("X1", &format!("X{i}*"), &[(format!("X{}*", i - 1), s(-1))])?;
    }
    Ok(alg)
}

/// Filiform `[e1, e_i] = e_{i-1}` on the even part, its dual on the odd part with
/// `[X, h] = -h o ad_X`, paired by evaluation.
pub fn example_coadjoint(m: usize) -> Result<CatalogEntry> {
    if m < 3 {
        return Err(Error::Invalid("example_coadjoint needs m >= 3".into()));
    }
    let even: Vec<String> = (1..=m).map(|i| format!("e{i}")).collect();
    let odd: Vec<String> = (1..=m).map(|i| format!("e{i}*")).collect();
    let mut alg = Structure::new(&even, &odd)?;
    for i in 3..=m {
        alg.set("e1", &even[i - 1], &[(even[i - 2].clone(), s(1))])?;
    }
    let h = alg.clone();
    for x in 0..m {
        for j in 0..m {
            let mut v = ring::zero_vec(2 * m);
            for k in 0..m {
                v[m + k] = -h.basis_bracket(x, k)[j].clone();
            }
            alg.set_bracket(x, m + j, v)?;
        }
    }
    let form = OddForm::new(m, m, crate::linalg::identity(m))?;
    Ok(CatalogEntry {
        key: CatalogKey::ExampleCoadjoint(m),
        algebra: alg,
        form: Some(form),
        expected: Expected { center: (1, 2), chain: weak_chain(m), jacobi: true, odd_quadratic: true, weak_filiform: true },
    })
}

fn check_lambda(lambda: &Rational) -> Result<()> {
    if lambda.is_zero() {
        return Err(Error::Invalid("lambda must be nonzero".into()));
    }
    Ok(())
}

/// Dimension-6 family: `delta` switches `[e3, e3] = X3` on.
pub fn g6_family(delta: u8, lambda: &Rational, alpha: &Rational, beta: &Rational) -> Result<CatalogEntry> {
    if delta > 1 {
        return Err(Error::Invalid(format!("g6 delta must be 0 or 1, got {delta}")));
    }
    check_lambda(lambda)?;
    let mut g = Structure::new(&["X1", "X2", "X3"], &["e3", "u2", "v2"])?;
    g.set("X1", "X2", &[("X3", s(1))])?;
    g.set("X1", "e3", &[("u2", s(1))])?;
    g.set("X2", "e3", &[("v2", s(1))])?;
    if delta == 1 {
        g.set("e3", "e3", &[("X3", s(1))])?;
    }
    let l = Scalar::from_rational(lambda.clone());
    let form = OddForm::from_entries(
        &g,
        &[
            ("X1", "v2", l.clone()),
            ("X2", "u2", -&l),
            ("X3", "e3", l),
            ("X1", "e3", Scalar::from_rational(alpha.clone())),
            ("X2", "e3", Scalar::from_rational(beta.clone())),
        ],
    )?;
    Ok(CatalogEntry {
        key: CatalogKey::G6 { delta, lambda: lambda.clone(), alpha: alpha.clone(), beta: beta.clone() },
        algebra: g,
        form: Some(form),
        expected: Expected { center: (1, 2), chain: vec![3, 2, 0], jacobi: true, odd_quadratic: true, weak_filiform: true },
    })
}

/// Dimension-8 family in three variants.
pub fn g8_family(variant: u8, lambda: &Rational, alpha: &Rational, beta: &Rational) -> Result<CatalogEntry> {
    if variant > 2 {
        return Err(Error::Invalid(format!("g8 variant must be 0, 1 or 2, got {variant}")));
    }
    check_lambda(lambda)?;
    let mut g = Structure::new(&["X1", "X2", "X3", "X4"], &["e4", "e3", "u2", "v2"])?;
    g.set("X1", "X2", &[("X3", s(1))])?;
    g.set("X1", "X3", &[("X4", s(1))])?;
    g.set("X1", "e3", &[("u2", s(1))])?;
    g.set("X2", "e3", &[("v2", s(1))])?;
    g.set("X1", "e4", &[("e3", s(1))])?;
    g.set("X3", "e4", &[("v2", s(-1))])?;
    match variant {
        1 => g.set("e4", "e4", &[("X4", s(1))])?,
        2 => {
            g.set("e4", "e4", &[("X2", s(1))])?;
            g.set("e3", "e4", &[("X3", half())])?;
            g.set("e3", "e3", &[("X4", -half())])?;
            g.set("u2", "e4", &[("X4", s(1))])?;
        }
        _ => {}
    }
    let l = Scalar::from_rational(lambda.clone());
    let form = OddForm::from_entries(
        &g,
        &[
            ("X1", "v2", l.clone()),
            ("X2", "u2", -&l),
            ("X3", "e3", l.clone()),
            ("X4", "e4", -&l),
            ("X1", "e4", Scalar::from_rational(alpha.clone())),
            ("X2", "e4", Scalar::from_rational(beta.clone())),
        ],
    )?;
    let center = if variant == 2 { (1, 1) } else { (1, 2) };
    Ok(CatalogEntry {
        key: CatalogKey::G8 { variant, lambda: lambda.clone(), alpha: alpha.clone(), beta: beta.clone() },
        algebra: g,
        form: Some(form),
        expected: Expected { center, chain: vec![4, 3, 2, 0], jacobi: true, odd_quadratic: true, weak_filiform: true },
    })
}

/// `g6` at `lambda = 1, alpha = beta = 0`.
pub fn g6(delta: u8) -> CatalogEntry {
    CatalogKey::g6(delta).build().expect("valid fixture")
}

/// `g8` at `lambda = 1, alpha = beta = 0`.
pub fn g8(variant: u8) -> CatalogEntry {
    CatalogKey::g8(variant).build().expect("valid fixture")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::forms::verify_odd_quadratic;

    #[test]
    fn standard_entries_are_valid() {
        for key in CatalogKey::standard() {
            let e = key.build().unwrap();
            assert!(crate::algebra::is_lie_superalgebra(&e.algebra), "{key}");
            if let Some(f) = &e.form {
                assert!(verify_odd_quadratic(&e.algebra, f, Exec::Sequential).passed(), "{key}");
            }
            assert_eq!(e.algebra.center_dims(), e.expected.center, "{key}");
        }
    }

    #[test]
    fn key_round_trip() {
        for text in ["abelian2", "g0_6", "g2_8", "model_filiform(4)", "example_coadjoint(5)", "g6(1,2,0,-1/2)"] {
            let k: CatalogKey = text.parse().unwrap();
            assert_eq!(k.to_string(), text);
        }
        assert_eq!("g6(1)".parse::<CatalogKey>().unwrap(), CatalogKey::g6(1));
        assert_eq!("g8(2,1,0,0)".parse::<CatalogKey>().unwrap(), CatalogKey::g8(2));
        assert!("g6(2)".parse::<CatalogKey>().unwrap().build().is_err());
        assert!("g8(0,0,0,0)".parse::<CatalogKey>().unwrap().build().is_err());
        assert!("nope".parse::<CatalogKey>().is_err());
    }

    #[test]
    fn g06_brackets_exact() {
        let g = g6(0).algebra;
        let nonzero: Vec<(usize, usize)> = g.constants().map(|(k, _)| *k).collect();
        assert_eq!(nonzero, vec![(0, 1), (0, 3), (1, 3)]);
    }

    #[test]
    fn g28_listed_products() {
        let g = g8(2).algebra;
        let idx = |n: &str| g.index(n).unwrap();
        let mut want = ring::zero_vec::<Scalar>(8);
        want[idx("X3")] = half();
        assert_eq!(g.basis_bracket(idx("e3"), idx("e4")), want);
        assert_eq!(g.basis_bracket(idx("e4"), idx("e3")), want);
        let mut x4 = ring::zero_vec::<Scalar>(8);
        x4[idx("X4")] = s(1);
        assert_eq!(g.basis_bracket(idx("u2"), idx("e4")), x4);
    }

    #[test]
    fn dualpair_central_elements() {
        let e = example_dualpair(4).unwrap();
        let a = &e.algebra;
        let z = crate::linalg::Subspace::coordinate(8, [a.index("X4").unwrap(), a.index("X1*").unwrap(), a.index("X2*").unwrap()]);
        assert_eq!(a.center(), z);
    }
}
