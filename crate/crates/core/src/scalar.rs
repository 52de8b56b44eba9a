//! Exact scalars: rationals and elements of a single quadratic extension Q(sqrt d).
//!
//! A [`Scalar`] is `a + b*sqrt(d)` with `d` a square-free integer. Pure rationals
//! carry `d = 0` and are compatible with every extension; two irrational scalars
//! with different radicands cannot be combined.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different quadratic fields (radicands {0} and {1})")]
    MixedRadicand(BigInt, BigInt),
    #[error("radicand {0} is a perfect square; use a plain rational instead")]
    SquareRadicand(Rational),
    #[error("cannot adjoin the square root of zero")]
    ZeroRadicand,
    #[error("malformed scalar literal `{0}`")]
    Parse(String),
}

/// `base + radical * sqrt(radicand)`, always normalized.
///
/// Invariants: `radicand` is square-free and not 0 or 1 whenever `radical != 0`;
/// `radicand == 0` exactly when `radical == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    base: Rational,
    radical: Rational,
    radicand: BigInt,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { base: Rational::zero(), radical: Rational::zero(), radicand: BigInt::zero() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(rat(n, d))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar { base: r, radical: Rational::zero(), radicand: BigInt::zero() }
    }

    /// Builds `base + radical * sqrt(radicand)`, pulling rational square factors
    /// out of the radicand. A perfect-square radicand is rejected.
    pub fn quadratic(base: Rational, radical: Rational, radicand: Rational) -> Result<Self, ScalarError> {
        if radical.is_zero() {
            return Ok(Self::from_rational(base));
        }
        if radicand.is_zero() {
            return Err(ScalarError::ZeroRadicand);
        }
        let (outside, core) = split_square(&radicand);
        if core.is_one() {
            return Err(ScalarError::SquareRadicand(radicand));
        }
        Ok(Scalar { base, radical: radical * outside, radicand: core })
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn radical(&self) -> &Rational {
        &self.radical
    }

    /// Square-free radicand, or 0 for a rational value.
    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.radical.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.base.is_one() && self.radical.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.base)
    }

    fn context(&self, other: &Scalar) -> Result<BigInt, ScalarError> {
        match (self.radicand.is_zero(), other.radicand.is_zero()) {
            (true, _) => Ok(other.radicand.clone()),
            (_, true) => Ok(self.radicand.clone()),
            _ if self.radicand == other.radicand => Ok(self.radicand.clone()),
            _ => Err(ScalarError::MixedRadicand(self.radicand.clone(), other.radicand.clone())),
        }
    }

    fn build(base: Rational, radical: Rational, radicand: BigInt) -> Self {
        if radical.is_zero() {
            Scalar { base, radical, radicand: BigInt::zero() }
        } else {
            Scalar { base, radical, radicand }
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        let d = self.context(other)?;
        Ok(Self::build(&self.base + &other.base, &self.radical + &other.radical, d))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        let d = self.context(other)?;
        Ok(Self::build(&self.base - &other.base, &self.radical - &other.radical, d))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        let d = self.context(other)?;
        let dr = Rational::from_integer(d.clone());
        let base = &self.base * &other.base + &self.radical * &other.radical * dr;
        let radical = &self.base * &other.radical + &self.radical * &other.base;
        Ok(Self::build(base, radical, d))
    }

    /// Inverse by conjugate rationalization: `1/(a + b√d) = (a − b√d)/(a² − b²d)`.
    pub fn checked_inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let dr = Rational::from_integer(self.radicand.clone());
        let norm = &self.base * &self.base - &self.radical * &self.radical * dr;
        Ok(Self::build(&self.base / &norm, -(&self.radical / &norm), self.radicand.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.context(other)?;
        self.checked_mul(&other.checked_inv()?)
    }

    pub fn inv(&self) -> Scalar {
        self.checked_inv().expect("inverse of zero scalar")
    }

    pub fn conjugate(&self) -> Scalar {
        Self::build(self.base.clone(), -self.radical.clone(), self.radicand.clone())
    }
}

/// Writes `r = outside² · core` with `core` a square-free integer (sign kept in core).
fn split_square(r: &Rational) -> (Rational, BigInt) {
    // sqrt(p/q) = sqrt(p*q)/q
    let p = r.numer();
    let q = r.denom();
    let pq = p * q;
    let (s, core) = square_free_part(&pq);
    (Rational::new(s, q.clone()), core)
}

/// Returns `(s, r)` with `n = s² · r` and `r` free of prime squares below the
/// trial-division bound (plus a final perfect-square check).
fn square_free_part(n: &BigInt) -> (BigInt, BigInt) {
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rest = n.abs();
    let mut outside = BigInt::one();
    let root = rest.sqrt();
    if &root * &root == rest {
        return (root, sign);
    }
    let mut p = BigInt::from(2u32);
    let bound = BigInt::from(100_000u32);
    while &p * &p <= rest && p < bound {
        let sq = &p * &p;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            outside *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        outside *= &root;
        rest = BigInt::one();
    }
    (outside, rest * sign)
}

/// A field in which a requested square root exists, plus that root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjoinedRoot {
    /// Square-free radicand of the field, 0 for plain Q.
    pub radicand: BigInt,
    pub root: Scalar,
}

impl AdjoinedRoot {
    pub fn is_rational_field(&self) -> bool {
        self.radicand.is_zero()
    }
}

/// Square root of a nonzero rational, adjoining it when it is not already rational.
pub fn adjoin_sqrt(c: &Rational) -> Result<AdjoinedRoot, ScalarError> {
    if c.is_zero() {
        return Err(ScalarError::ZeroRadicand);
    }
    let (outside, core) = split_square(c);
    if core.is_one() {
        return Ok(AdjoinedRoot { radicand: BigInt::zero(), root: Scalar::from_rational(outside) });
    }
    let root = Scalar { base: Rational::zero(), radical: outside, radicand: core.clone() };
    Ok(AdjoinedRoot { radicand: core, root })
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("scalar {}: {e}", stringify!($method)))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::build(-self.base, -self.radical, self.radicand)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order (not numeric) used only for canonical sorting.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.radicand, &self.base, &self.radical).cmp(&(&other.radicand, &other.base, &other.radical))
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let err = || ScalarError::Parse(s.to_string());
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (cleaned.as_str(), "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| err())?;
    let d = BigInt::from_str(den).map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", format_rational(&self.base));
        }
        let r = format_rational(&self.radical);
        let surd = format!("sqrt({})", self.radicand);
        let rad = if self.radical.is_one() {
            surd
        } else if (-self.radical.clone()).is_one() {
            format!("-{surd}")
        } else {
            format!("{r}*{surd}")
        };
        if self.base.is_zero() {
            write!(f, "{rad}")
        } else if rad.starts_with('-') {
            write!(f, "{}{}", format_rational(&self.base), rad)
        } else {
            write!(f, "{}+{}", format_rational(&self.base), rad)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Scalar::from_rational)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_rational() {
            serializer.serialize_str(&format_rational(&self.base))
        } else {
            let mut map = serializer.serialize_map(Some(3))?;
            map.serialize_entry("a", &format_rational(&self.base))?;
            map.serialize_entry("b", &format_rational(&self.radical))?;
            map.serialize_entry("d", &self.radicand.to_string())?;
            map.end()
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Text(String),
    Integer(i64),
    Quadratic { a: String, b: String, d: String },
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match ScalarRepr::deserialize(deserializer)? {
            ScalarRepr::Text(s) => s.parse().map_err(de::Error::custom),
            ScalarRepr::Integer(n) => Ok(Scalar::from_int(n)),
            ScalarRepr::Quadratic { a, b, d } => {
                let a = parse_rational(&a).map_err(de::Error::custom)?;
                let b = parse_rational(&b).map_err(de::Error::custom)?;
                let d = parse_rational(&d).map_err(de::Error::custom)?;
                Scalar::quadratic(a, b, d).map_err(de::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sqrt2() -> Scalar {
        Scalar::quadratic(rat(0, 1), rat(1, 1), rat(2, 1)).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(Scalar::from_frac(1, 2) + Scalar::from_frac(1, 3), Scalar::from_frac(5, 6));
    }

    #[test]
    fn sqrt2_squared_is_two() {
        assert_eq!(sqrt2() * sqrt2(), Scalar::from_int(2));
    }

    #[test]
    fn conjugate_rationalization() {
        let x = Scalar::one() + sqrt2();
        let inv = Scalar::one() / x.clone();
        let expected = Scalar::from_int(-1) + sqrt2();
        assert_eq!(inv, expected);
        assert_eq!(x * expected, Scalar::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn mixed_radicands_are_rejected() {
        let s3 = Scalar::quadratic(rat(0, 1), rat(1, 1), rat(3, 1)).unwrap();
        assert!(matches!(sqrt2().checked_add(&s3), Err(ScalarError::MixedRadicand(..))));
        // rationals mix with anything
        assert!(sqrt2().checked_add(&Scalar::one()).is_ok());
    }

    #[test]
    fn adjoin_perfect_squares_stay_rational() {
        let r = adjoin_sqrt(&rat(4, 1)).unwrap();
        assert!(r.is_rational_field());
        assert_eq!(r.root, Scalar::from_int(2));
        let r = adjoin_sqrt(&rat(9, 4)).unwrap();
        assert_eq!(r.root, Scalar::from_frac(3, 2));
        let r = adjoin_sqrt(&rat(2, 1)).unwrap();
        assert_eq!(r.radicand, BigInt::from(2));
        assert_eq!(r.root, sqrt2());
        assert_eq!(adjoin_sqrt(&rat(0, 1)), Err(ScalarError::ZeroRadicand));
    }

    #[test]
    fn radicand_is_made_square_free() {
        // sqrt(8) = 2 sqrt(2), sqrt(1/2) = sqrt(2)/2
        let s = Scalar::quadratic(rat(0, 1), rat(1, 1), rat(8, 1)).unwrap();
        assert_eq!(s, Scalar::from_int(2) * sqrt2());
        let s = Scalar::quadratic(rat(0, 1), rat(1, 1), rat(1, 2)).unwrap();
        assert_eq!(s, sqrt2() / Scalar::from_int(2));
    }

    #[test]
    fn zero_checks() {
        assert!(Scalar::zero().is_zero());
        let z = Scalar::quadratic(rat(0, 1), rat(0, 1), rat(2, 1)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z, Scalar::zero());
        // 1 - 1*sqrt(1) is not a legal quadratic element
        assert!(matches!(Scalar::quadratic(rat(1, 1), rat(-1, 1), rat(1, 1)), Err(ScalarError::SquareRadicand(_))));
    }

    #[test]
    fn negative_radicand() {
        let i = adjoin_sqrt(&rat(-1, 1)).unwrap().root;
        assert_eq!(&i * &i, Scalar::from_int(-1));
    }

    #[test]
    fn json_encoding() {
        let q = Scalar::from_frac(-3, 2);
        assert_eq!(serde_json::to_string(&q).unwrap(), "\"-3/2\"");
        let back: Scalar = serde_json::from_str("\"\u{2212}3/2\"").unwrap();
        assert_eq!(back, q);
        let x = Scalar::from_frac(1, 3) + Scalar::from_frac(5, 7) * sqrt2();
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, r#"{"a":"1/3","b":"5/7","d":"2"}"#);
        assert_eq!(serde_json::from_str::<Scalar>(&text).unwrap(), x);
    }

    fn small_rational() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| Scalar::from_frac(n, d))
    }

    fn quad_element() -> impl Strategy<Value = Scalar> {
        (small_rational(), small_rational()).prop_map(|(a, b)| a + b * sqrt2())
    }

    proptest! {
        #[test]
        fn field_axioms(a in quad_element(), b in quad_element(), c in quad_element()) {
            prop_assert_eq!((&a + &b) + c.clone(), a.clone() + (&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv(), Scalar::one());
            }
        }

        #[test]
        fn adjoined_root_squares_back(n in -200i64..200, d in 1i64..50) {
            prop_assume!(n != 0);
            let c = rat(n, d);
            let root = adjoin_sqrt(&c).unwrap().root;
            prop_assert_eq!(&root * &root, Scalar::from_rational(c));
        }

        #[test]
        fn json_round_trip(x in quad_element()) {
            let text = serde_json::to_string(&x).unwrap();
            prop_assert_eq!(serde_json::from_str::<Scalar>(&text).unwrap(), x);
        }
    }
}
