//! Exact arithmetic: ℚ, the rational function field ℚ(a, κ), linear forms
//! and symbolic products of Gamma functions.

pub(crate) mod dense;
mod gamma;
mod linear;
mod parse;
mod poly;
mod ratfunc;

pub use gamma::{pochhammer, GammaFactors, GammaProduct};
pub use linear::LinearForm;
pub use poly::ParamPolynomial;
pub use ratfunc::ParamRational;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt::Debug;

pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `p`, `p/q` or a decimal such as `-1.25` into an exact rational.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let v: ParamRational = s.parse()?;
    v.as_constant()
        .ok_or_else(|| crate::Error::Parse(format!("expected a rational number, got {s:?}")))
}

/// Commutative ring operations shared by the coefficient types.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        rat(n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for ParamRational {
    fn zero() -> Self {
        ParamRational::zero()
    }
    fn one() -> Self {
        ParamRational::one()
    }
    fn is_zero(&self) -> bool {
        ParamRational::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        ParamRational::from_int(n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Normalise `num / den`; fails on a zero denominator.
pub fn ratfunc_normalize(
    num: ParamPolynomial,
    den: ParamPolynomial,
) -> crate::Result<ParamRational> {
    ParamRational::new(num, den)
}
