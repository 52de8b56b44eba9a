//! Minimal commutative-ring interface shared by numeric and polynomial
//! structure constants.

use std::fmt;

use crate::scalar::{Rational, Scalar};

pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(r: Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `self + a * b`, the inner step of every bilinear expansion.
    fn fma(&self, a: &Self, b: &Self) -> Self {
        if a.is_zero() || b.is_zero() {
            self.clone()
        } else {
            self.plus(&a.times(b))
        }
    }

    /// Multiplies by `(-1)^k`.
    fn signed(&self, negate: bool) -> Self {
        if negate {
            self.negated()
        } else {
            self.clone()
        }
    }
}

impl Ring for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

pub fn zero_vec<R: Ring>(n: usize) -> Vec<R> {
    vec![R::zero(); n]
}

pub fn unit_vec<R: Ring>(n: usize, i: usize) -> Vec<R> {
    let mut v = zero_vec(n);
    v[i] = R::one();
    v
}

pub fn is_zero_vec<R: Ring>(v: &[R]) -> bool {
    v.iter().all(Ring::is_zero)
}

pub fn add_scaled<R: Ring>(acc: &mut [R], c: &R, v: &[R]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.plus(&c.times(x));
        }
    }
}

pub fn vec_sub<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b).map(|(x, y)| x.minus(y)).collect()
}

pub fn vec_add<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    a.iter().zip(b).map(|(x, y)| x.plus(y)).collect()
}

pub fn vec_scale<R: Ring>(c: &R, v: &[R]) -> Vec<R> {
    v.iter().map(|x| c.times(x)).collect()
}
