use super::poly::ParamPolynomial;
use super::Rational;
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Element of ℚ(a, κ) in lowest terms.
///
/// The denominator is primitive over ℤ with a positive graded-lex leading
/// coefficient; all rational content lives in the numerator. Equality is
/// therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ParamRational {
    num: ParamPolynomial,
    den: ParamPolynomial,
}

impl ParamRational {
    pub fn new(num: ParamPolynomial, den: ParamPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: ParamPolynomial, den: ParamPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        Self::with_coprime(num, den)
    }

    /// Move the denominator's content into the numerator.
    fn with_coprime(num: ParamPolynomial, den: ParamPolynomial) -> Self {
        let c = den.content().clone();
        ParamRational {
            num: if c.is_one() {
                num
            } else {
                num.scale(&c.recip())
            },
            den: den.primitive_part(),
        }
    }

    pub fn zero() -> Self {
        ParamRational {
            num: ParamPolynomial::zero(),
            den: ParamPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(ParamPolynomial::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_poly(ParamPolynomial::constant(r))
    }

    pub fn from_poly(p: ParamPolynomial) -> Self {
        ParamRational {
            num: p,
            den: ParamPolynomial::one(),
        }
    }

    /// The parameter `a`.
    pub fn a() -> Self {
        Self::from_poly(ParamPolynomial::a())
    }

    /// The parameter `κ`.
    pub fn k() -> Self {
        Self::from_poly(ParamPolynomial::k())
    }

    pub fn numer(&self) -> &ParamPolynomial {
        &self.num
    }

    pub fn denom(&self) -> &ParamPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_constant() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn depends_on_a(&self) -> bool {
        self.num.degree_a() > 0 || self.den.degree_a() > 0
    }

    pub fn depends_on_k(&self) -> bool {
        self.num.degree_k() > 0 || self.den.degree_k() > 0
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::with_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn powi(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            self.recip().map(|r| r.pow(e.unsigned_abs()))
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        ParamRational {
            num: self.num.scale(r),
            den: if r.is_zero() {
                ParamPolynomial::one()
            } else {
                self.den.clone()
            },
        }
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self * &o.recip()?)
    }

    /// Substitute rational values for any subset of the parameters.
    pub fn specialize(&self, a: Option<&Rational>, k: Option<&Rational>) -> Result<Self> {
        if a.is_none() && k.is_none() {
            return Ok(self.clone());
        }
        let den = self.den.specialize(a, k);
        if den.is_zero() {
            return Err(Error::ParameterDegeneracy {
                factor: self.den.to_string(),
            });
        }
        Ok(Self::reduce(self.num.specialize(a, k), den))
    }

    pub fn eval(&self, a: &Rational, k: &Rational) -> Result<Rational> {
        let d = self.den.eval(a, k);
        if d.is_zero() {
            return Err(Error::ParameterDegeneracy {
                factor: self.den.to_string(),
            });
        }
        Ok(self.num.eval(a, k) / d)
    }

    pub fn eval_complex(&self, a: Complex64, k: Complex64) -> Result<Complex64> {
        let d = self.den.eval_complex(a, k);
        let scale = self.den.abs_eval(a.norm(), k.norm());
        if d.norm() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::ParameterDegeneracy {
                factor: self.den.to_string(),
            });
        }
        Ok(self.num.eval_complex(a, k) / d)
    }

    pub fn eval_f64(&self, a: f64, k: f64) -> Result<f64> {
        self.eval_complex(Complex64::new(a, 0.0), Complex64::new(k, 0.0))
            .map(|z| z.re)
    }

    /// Number of monomials in numerator plus denominator; a size measure.
    pub fn size(&self) -> usize {
        self.num.term_count() + self.den.term_count()
    }
}

impl fmt::Display for ParamRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Clear the numerator's rational content so both sides print with
        // integer coefficients.
        let c = self.num.content();
        let mult = Rational::from_integer(c.denom().clone());
        let num_s = self.num.fmt_scaled(&mult);
        let den_s = self.den.fmt_scaled(&mult);
        let num_terms = self.num.term_count();
        let num_s = if num_terms > 1 && den_s != "1" {
            format!("({num_s})")
        } else {
            num_s
        };
        if den_s == "1" {
            f.write_str(&num_s)
        } else if self.den.is_constant() {
            write!(f, "{num_s}/{den_s}")
        } else {
            write!(f, "{num_s}/({den_s})")
        }
    }
}

impl std::str::FromStr for ParamRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse(s)
    }
}

impl serde::Serialize for ParamRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for ParamRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<Rational> for ParamRational {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<ParamPolynomial> for ParamRational {
    fn from(p: ParamPolynomial) -> Self {
        Self::from_poly(p)
    }
}

fn mul_impl(x: &ParamRational, y: &ParamRational) -> ParamRational {
    if x.is_zero() || y.is_zero() {
        return ParamRational::zero();
    }
    if x.den.is_constant() && y.den.is_constant() {
        return ParamRational::from_poly(x.num.mul(&y.num));
    }
    if let Some(c) = x.as_constant() {
        return y.scale(&c);
    }
    if let Some(c) = y.as_constant() {
        return x.scale(&c);
    }
    let g1 = x.num.gcd(&y.den);
    let g2 = y.num.gcd(&x.den);
    let n1 = x.num.exact_div(&g1).unwrap();
    let d2 = y.den.exact_div(&g1).unwrap();
    let n2 = y.num.exact_div(&g2).unwrap();
    let d1 = x.den.exact_div(&g2).unwrap();
    ParamRational::with_coprime(n1.mul(&n2), d1.mul(&d2))
}

fn add_impl(x: &ParamRational, y: &ParamRational) -> ParamRational {
    if x.is_zero() {
        return y.clone();
    }
    if y.is_zero() {
        return x.clone();
    }
    if x.den == y.den {
        // den shared: only a common factor of the new numerator with den
        // can appear
        return ParamRational::reduce(x.num.add(&y.num), x.den.clone());
    }
    if x.den.is_constant() {
        return ParamRational {
            num: x.num.mul(&y.den).add(&y.num),
            den: y.den.clone(),
        };
    }
    if y.den.is_constant() {
        return ParamRational {
            num: y.num.mul(&x.den).add(&x.num),
            den: x.den.clone(),
        };
    }
    let d = x.den.gcd(&y.den);
    if d.is_constant() {
        return ParamRational::with_coprime(
            x.num.mul(&y.den).add(&y.num.mul(&x.den)),
            x.den.mul(&y.den),
        );
    }
    let d1 = x.den.exact_div(&d).unwrap();
    let d2 = y.den.exact_div(&d).unwrap();
    let t = x.num.mul(&d2).add(&y.num.mul(&d1));
    if t.is_zero() {
        return ParamRational::zero();
    }
    let g = t.gcd(&d);
    let (t, dg) = if g.is_constant() {
        (t, d)
    } else {
        (t.exact_div(&g).unwrap(), d.exact_div(&g).unwrap())
    };
    ParamRational::with_coprime(t, d1.mul(&d2).mul(&dg))
}

impl Neg for &ParamRational {
    type Output = ParamRational;
    fn neg(self) -> ParamRational {
        ParamRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for ParamRational {
    type Output = ParamRational;
    fn neg(self) -> ParamRational {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&ParamRational> for &ParamRational {
            type Output = ParamRational;
            fn $m(self, o: &ParamRational) -> ParamRational {
                $body(self, o)
            }
        }
        impl $tr<ParamRational> for ParamRational {
            type Output = ParamRational;
            fn $m(self, o: ParamRational) -> ParamRational {
                $body(&self, &o)
            }
        }
        impl $tr<&ParamRational> for ParamRational {
            type Output = ParamRational;
            fn $m(self, o: &ParamRational) -> ParamRational {
                $body(&self, o)
            }
        }
        impl $tr<ParamRational> for &ParamRational {
            type Output = ParamRational;
            fn $m(self, o: ParamRational) -> ParamRational {
                $body(self, &o)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, |x: &ParamRational, y: &ParamRational| add_impl(
    x, &-y
));
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, |x: &ParamRational, y: &ParamRational| x
    .checked_div(y)
    .expect("division by zero in ℚ(a,κ)"));

impl std::iter::Sum for ParamRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for ParamRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}
