//! Exact arithmetic: rationals, dense univariate polynomials over an abstract
//! field, reduced rational functions, integer roots and denominator atoms.

mod linalg;
mod poly;
mod ratfunc;
mod roots;
mod zgcd;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use linalg::nullspace;
pub(crate) use poly::euclid_gcd;
pub use poly::{poly_gcd, Poly};
pub use ratfunc::{ratfunc_normalize, RatFunc};
pub use roots::{
    dispersion_set, integer_content, nonneg_integer_roots, partial_fraction_atoms, rational_roots,
    shift_class_rep, squarefree_part,
};

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero polynomial")]
    ZeroPolynomial,
}

/// A commutative field with exact division.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    fn from_rat(r: &Rat) -> Self;

    /// Monic gcd of two polynomials over this field.
    fn poly_gcd(p: &Poly<Self>, q: &Poly<Self>) -> Poly<Self> {
        poly::euclid_gcd(p, q)
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "division by zero rational");
        self.recip()
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn poly_gcd(p: &Poly<Self>, q: &Poly<Self>) -> Poly<Self> {
        zgcd::rat_poly_gcd(p, q)
    }
}

/// Shorthand constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q` (optionally signed).
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().ok()?;
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}
