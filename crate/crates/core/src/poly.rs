//! Sparse multivariate polynomials with rational coefficients.
//!
//! Variables are indices into an external name table ([`VarTable`]); terms are
//! kept in graded lexicographic order with no zero coefficients stored.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ring::Ring;
use crate::scalar::{format_rational, Rational, Scalar};

pub type Var = u32;

/// Sorted `(variable, exponent)` pairs; exponents are positive.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: BTreeMap<Var, u32> = self.0.iter().copied().collect();
        for &(v, e) in &other.0 {
            *out.entry(v).or_insert(0) += e;
        }
        Monomial(out.into_iter().collect())
    }

    fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect())
    }

    fn divide_var(&self, v: Var) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(w, e)| match (w == v, e) {
                    (true, 1) => None,
                    (true, e) => Some((w, e - 1)),
                    _ => Some((w, e)),
                })
                .collect(),
        )
    }
}

impl Ord for Monomial {
    /// Graded lexicographic with lower variable index ranking higher.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut a, mut b) = (self.0.iter(), other.0.iter());
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        if va != vb {
                            return vb.cmp(&va);
                        }
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), Rational::one());
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.is_constant().then(|| self.coefficient(&Monomial::one()))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::default();
        }
        Poly { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Poly::default(),
        }
    }

    /// Makes the leading coefficient positive, keeping magnitudes.
    pub fn sign_normalized(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.negated(),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::int(1);
        for _ in 0..e {
            acc = acc.times(self);
        }
        acc
    }

    pub fn substitute(&self, v: Var, value: &Poly) -> Poly {
        if !self.vars().contains(&v) {
            return self.clone();
        }
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            let base = Poly { terms: BTreeMap::from([(m.without(v), c.clone())]) };
            out = out.plus(&if e == 0 { base } else { base.times(&value.pow(e)) });
        }
        out
    }

    pub fn substitute_all(&self, subs: &BTreeMap<Var, Poly>) -> Poly {
        subs.iter().fold(self.clone(), |p, (v, val)| p.substitute(*v, val))
    }

    /// Evaluates with every variable bound; missing variables are an error.
    pub fn evaluate(&self, values: &BTreeMap<Var, Scalar>) -> Option<Scalar> {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = Scalar::from_rational(c.clone());
            for &(v, e) in &m.0 {
                let x = values.get(&v)?;
                for _ in 0..e {
                    t = &t * x;
                }
            }
            acc = &acc + &t;
        }
        Some(acc)
    }

    /// If `self = c*v + rest` with `c` a nonzero constant and `v` absent from
    /// `rest`, returns `(c, rest)`.
    pub fn linear_in(&self, v: Var) -> Option<(Rational, Poly)> {
        let mut coeff = None;
        let mut rest = Poly::default();
        for (m, c) in &self.terms {
            match m.exponent(v) {
                0 => rest.add_term(m.clone(), c.clone()),
                1 if m.degree() == 1 => coeff = Some(c.clone()),
                _ => return None,
            }
        }
        coeff.map(|c| (c, rest))
    }

    /// Solves `self = 0` for `v` when [`Poly::linear_in`] applies.
    pub fn solve_for(&self, v: Var) -> Option<Poly> {
        let (c, rest) = self.linear_in(v)?;
        Some(rest.scale(&(-c.recip())))
    }

    /// Variables dividing every term, with the quotient by the first one.
    pub fn common_var_factor(&self) -> Option<(Var, Poly)> {
        if self.is_constant() {
            return None;
        }
        let v = self.vars().into_iter().find(|&v| self.terms.keys().all(|m| m.exponent(v) > 0))?;
        let q = Poly { terms: self.terms.iter().map(|(m, c)| (m.divide_var(v), c.clone())).collect() };
        Some((v, q))
    }

    /// Exact quotient by `v` when every term contains it.
    pub fn divide_by_var(&self, v: Var) -> Option<Poly> {
        if self.terms.keys().any(|m| m.exponent(v) == 0) {
            return None;
        }
        Some(Poly { terms: self.terms.iter().map(|(m, c)| (m.divide_var(v), c.clone())).collect() })
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> =
                m.0.iter()
                    .map(|&(v, e)| {
                        let n = names.get(v as usize).cloned().unwrap_or_else(|| format!("x{v}"));
                        if e == 1 {
                            n
                        } else {
                            format!("{n}^{e}")
                        }
                    })
                    .collect();
            if mono.is_empty() {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", format_rational(&mag), mono.join("*")));
            }
        }
        out
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn one() -> Self {
        Poly::int(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
    fn negated(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
    fn from_rational(r: Rational) -> Self {
        Poly::constant(r)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Ordered list of indeterminate names. The index of a name is its [`Var`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the variable for `name`, declaring it if new.
    pub fn declare(&mut self, name: &str) -> Var {
        if let Some(v) = self.get(name) {
            return v;
        }
        self.names.push(name.to_string());
        (self.names.len() - 1) as Var
    }

    pub fn var(&mut self, name: &str) -> Poly {
        Poly::var(self.declare(name))
    }

    pub fn get(&self, name: &str) -> Option<Var> {
        self.names.iter().position(|n| n == name).map(|i| i as Var)
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn render(&self, p: &Poly) -> String {
        p.render(&self.names)
    }

    /// Parses a polynomial over already-declared names.
    pub fn parse(&self, text: &str) -> Result<Poly, String> {
        let cleaned = text.replace('\u{2212}', "-");
        let mut parser = Parser { src: cleaned.as_bytes(), pos: 0, table: self };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(format!("trailing input at byte {} in `{text}`", parser.pos));
        }
        Ok(p)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    table: &'a VarTable,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, String> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.term()?.negated()
        } else {
            self.term()?
        };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == b'+' { acc.plus(&t) } else { acc.minus(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.times(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err("division by zero".into());
                    }
                    acc = acc.scale(&Rational::new(BigInt::one(), d));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, String> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("expected `)`".into());
                }
                self.pos += 1;
                e
            }
            Some(b'-') => {
                self.pos += 1;
                return Ok(self.factor()?.negated());
            }
            Some(c) if c.is_ascii_digit() => Poly::constant(Rational::from_integer(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let v = self.table.get(name).ok_or_else(|| format!("unknown variable `{name}`"))?;
                Poly::var(v)
            }
            other => return Err(format!("unexpected {:?} at byte {}", other.map(char::from), self.pos)),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| "exponent out of range".to_string())?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected an integer at byte {start}"));
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| "bad integer".to_string())
    }
}

/// Whether the two lists span the same rational vector space of polynomials.
pub fn same_span(a: &[Poly], b: &[Poly]) -> bool {
    let mut monos: BTreeSet<Monomial> = BTreeSet::new();
    for p in a.iter().chain(b) {
        monos.extend(p.terms.keys().cloned());
    }
    let monos: Vec<Monomial> = monos.into_iter().collect();
    let row = |p: &Poly| -> Vec<Scalar> { monos.iter().map(|m| Scalar::from_rational(p.coefficient(m))).collect() };
    let ra: Vec<Vec<Scalar>> = a.iter().map(row).collect();
    let rb: Vec<Vec<Scalar>> = b.iter().map(row).collect();
    let mut both = ra.clone();
    both.extend(rb.iter().cloned());
    let r = crate::linalg::rank(&both);
    crate::linalg::rank(&ra) == r && crate::linalg::rank(&rb) == r
}

/// Row-reduces polynomials as vectors over their monomials, highest monomial
/// first, and returns the nonzero monic results.
pub fn inter_reduce(polys: &[Poly]) -> Vec<Poly> {
    let mut monos: BTreeSet<Monomial> = BTreeSet::new();
    for p in polys {
        monos.extend(p.terms.keys().cloned());
    }
    let monos: Vec<Monomial> = monos.into_iter().rev().collect();
    let rows: Vec<Vec<Scalar>> = polys.iter().map(|p| monos.iter().map(|m| Scalar::from_rational(p.coefficient(m))).collect()).collect();
    let (red, _) = crate::linalg::rref(&rows);
    red.iter()
        .map(|r| Poly::from_terms(r.iter().zip(&monos).map(|(c, m)| (m.clone(), c.as_rational().cloned().expect("rational coefficients")))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn table(names: &[&str]) -> VarTable {
        let mut t = VarTable::new();
        for n in names {
            t.declare(n);
        }
        t
    }

    #[test]
    fn parse_and_render() {
        let t = table(&["a", "b", "c"]);
        let p = t.parse("a*b - 2*c^2 + 1/2").unwrap();
        assert_eq!(t.render(&p), "a*b - 2*c^2 + 1/2");
        let q = t.parse("−(a - b)*(a + b)").unwrap();
        assert_eq!(q, t.parse("b^2 - a^2").unwrap());
        assert!(t.parse("z + 1").is_err());
    }

    #[test]
    fn arithmetic_and_substitution() {
        let t = table(&["x", "y"]);
        let p = t.parse("x^2 + x*y").unwrap();
        let s = p.substitute(0, &t.parse("y + 1").unwrap());
        assert_eq!(s, t.parse("2*y^2 + 3*y + 1").unwrap());
        let vals = BTreeMap::from([(0, Scalar::from_int(2)), (1, Scalar::from_int(3))]);
        assert_eq!(p.evaluate(&vals), Some(Scalar::from_int(10)));
    }

    #[test]
    fn linear_detection() {
        let t = table(&["a", "b", "c"]);
        let p = t.parse("2*c - a*b + 3").unwrap();
        assert_eq!(p.solve_for(2), Some(t.parse("1/2*a*b - 3/2").unwrap()));
        assert!(p.linear_in(0).is_none());
        assert!(t.parse("c^2 + c").unwrap().linear_in(2).is_none());
        assert!(t.parse("a*c + c").unwrap().linear_in(2).is_none());
    }

    #[test]
    fn factor_extraction() {
        let t = table(&["a", "b", "c"]);
        let p = t.parse("a*b + a*c^2").unwrap();
        let (v, q) = p.common_var_factor().unwrap();
        assert_eq!(v, 0);
        assert_eq!(q, t.parse("b + c^2").unwrap());
        assert!(t.parse("a + b").unwrap().common_var_factor().is_none());
    }

    #[test]
    fn grlex_order() {
        let t = table(&["a", "b"]);
        let p = t.parse("b + a + a*b + 1").unwrap();
        let order: Vec<String> = p.terms().map(|(m, _)| t.render(&Poly::from_terms([(m.clone(), rat(1, 1))]))).collect();
        assert_eq!(order, vec!["1", "b", "a", "a*b"]);
    }

    #[test]
    fn spans_and_reduction() {
        let t = table(&["a", "b"]);
        let x = [t.parse("a + b").unwrap(), t.parse("a - b").unwrap()];
        let y = [t.parse("a").unwrap(), t.parse("b").unwrap()];
        assert!(same_span(&x, &y));
        assert!(!same_span(&x[..1], &y));
        assert_eq!(inter_reduce(&x), vec![t.parse("a").unwrap(), t.parse("b").unwrap()]);
    }
}
