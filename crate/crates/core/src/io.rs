//! JSON interchange for algebras, forms, derivations and extension data.
//!
//! All numbers are exact scalars: `"p/q"` strings (integers may be bare) or
//! `{"a": .., "b": .., "d": ..}` for `a + b*sqrt(d)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Structure, SuperAlgebra};
use crate::derivations::{ExtensionData, OddDerivation};
use crate::error::{Error, Result};
use crate::forms::OddForm;
use crate::linalg::Matrix;
use crate::ring;
use crate::scalar::Scalar;

/// Sparse vector: basis name to coefficient.
pub type NamedVector = BTreeMap<String, Scalar>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub x: String,
    pub y: String,
    pub value: NamedVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub even: String,
    pub odd: String,
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub even: Vec<String>,
    pub odd: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<FormEntry>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    #[serde(rename = "D")]
    pub d: BTreeMap<String, NamedVector>,
    #[serde(rename = "X0", default)]
    pub x0: NamedVector,
    #[serde(default = "Scalar::zero")]
    pub lambda0: Scalar,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Invalid(format!("malformed JSON: {e}"))
}

/// All irrational scalars in one document must share a radicand.
struct RadicandGuard(Option<BigInt>);

impl RadicandGuard {
    fn check(&mut self, c: &Scalar) -> Result<()> {
        let d = c.radicand();
        if d.is_zero() {
            return Ok(());
        }
        match &self.0 {
            Some(prev) if prev != d => Err(crate::scalar::ScalarError::MixedRadicand(prev.clone(), d.clone()).into()),
            _ => {
                self.0 = Some(d.clone());
                Ok(())
            }
        }
    }
}

fn to_vector(alg: &SuperAlgebra, v: &NamedVector, guard: &mut RadicandGuard) -> Result<Vec<Scalar>> {
    let mut out = ring::zero_vec(alg.dim());
    for (name, c) in v {
        guard.check(c)?;
        out[alg.index(name)?] = c.clone();
    }
    Ok(out)
}

pub fn from_doc(doc: &AlgebraDoc) -> Result<(SuperAlgebra, Option<OddForm>)> {
    let mut alg = Structure::new(&doc.even, &doc.odd)?;
    let mut guard = RadicandGuard(None);
    let mut seen = std::collections::BTreeSet::new();
    for entry in &doc.brackets {
        let (i, j) = (alg.index(&entry.x)?, alg.index(&entry.y)?);
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(Error::Invalid(format!("bracket [{}, {}] given twice", entry.x, entry.y)));
        }
        let v = to_vector(&alg, &entry.value, &mut guard)?;
        alg.set_bracket(i, j, v)?;
    }
    let form = match &doc.form {
        None => None,
        Some(entries) => {
            let mut f = OddForm::zero(alg.n_even(), alg.m_odd());
            let mut seen = std::collections::BTreeSet::new();
            for e in entries {
                if !seen.insert((e.even.clone(), e.odd.clone())) {
                    return Err(Error::Invalid(format!("form entry ({}, {}) given twice", e.even, e.odd)));
                }
                guard.check(&e.value)?;
                let (i, j) = (alg.index(&e.even)?, alg.index(&e.odd)?);
                if alg.is_odd(i) || !alg.is_odd(j) {
                    return Err(Error::Invalid(format!("form entry ({}, {}) must list an even then an odd vector", e.even, e.odd)));
                }
                f.set_named(&alg, &e.even, &e.odd, e.value.clone())?;
            }
            Some(f)
        }
    };
    Ok((alg, form))
}

pub fn load_algebra(text: &str) -> Result<(SuperAlgebra, Option<OddForm>)> {
    let doc: AlgebraDoc = serde_json::from_str(text).map_err(parse_err)?;
    from_doc(&doc)
}

fn named(alg: &SuperAlgebra, v: &[Scalar]) -> NamedVector {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (alg.name(k).to_string(), c.clone())).collect()
}

pub fn to_doc(alg: &SuperAlgebra, form: Option<&OddForm>) -> AlgebraDoc {
    let brackets = alg
        .constants()
        .map(|(&(i, j), v)| BracketEntry { x: alg.name(i).to_string(), y: alg.name(j).to_string(), value: named(alg, v) })
        .collect();
    let form = form.map(|f| {
        let mut entries = Vec::new();
        for i in alg.even_range() {
            for (j, c) in f.pairing()[i].iter().enumerate() {
                if !c.is_zero() {
                    entries.push(FormEntry {
                        even: alg.name(i).to_string(),
                        odd: alg.name(alg.n_even() + j).to_string(),
                        value: c.clone(),
                    });
                }
            }
        }
        entries
    });
    AlgebraDoc { even: alg.even_names().to_vec(), odd: alg.odd_names().to_vec(), brackets, form }
}

pub fn emit_algebra(alg: &SuperAlgebra, form: Option<&OddForm>) -> String {
    serde_json::to_string_pretty(&to_doc(alg, form)).expect("serializable")
}

/// Sparse `{input: {output: coefficient}}` map of a linear map.
pub fn map_json(alg: &SuperAlgebra, m: &Matrix) -> BTreeMap<String, NamedVector> {
    (0..alg.dim())
        .filter_map(|j| {
            let col: Vec<Scalar> = m.iter().map(|r| r[j].clone()).collect();
            let v = named(alg, &col);
            (!v.is_empty()).then(|| (alg.name(j).to_string(), v))
        })
        .collect()
}

pub fn extension_doc(alg: &SuperAlgebra, data: &ExtensionData) -> ExtensionDoc {
    ExtensionDoc { d: map_json(alg, data.d.matrix()), x0: named(alg, &data.x0), lambda0: data.lambda0.clone() }
}

pub fn load_extension_data(alg: &SuperAlgebra, text: &str) -> Result<ExtensionData> {
    let doc: ExtensionDoc = serde_json::from_str(text).map_err(parse_err)?;
    let mut guard = RadicandGuard(None);
    let n = alg.dim();
    let mut m = crate::linalg::zeros(n, n);
    for (input, image) in &doc.d {
        let j = alg.index(input)?;
        for (out, c) in image {
            guard.check(c)?;
            m[alg.index(out)?][j] = c.clone();
        }
    }
    let d = OddDerivation::new(alg, m)?;
    let x0 = to_vector(alg, &doc.x0, &mut guard)?;
    guard.check(&doc.lambda0)?;
    Ok(ExtensionData { d, x0, lambda0: doc.lambda0 })
}
