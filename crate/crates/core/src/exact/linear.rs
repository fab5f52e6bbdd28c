use super::{rat, ParamPolynomial, ParamRational, Rational};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// `c0 + c_a·a + c_k·κ` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LinearForm {
    pub c0: Rational,
    pub c_a: Rational,
    pub c_k: Rational,
}

impl LinearForm {
    pub fn new(c0: Rational, c_a: Rational, c_k: Rational) -> Self {
        LinearForm { c0, c_a, c_k }
    }

    /// `c0 + ca·a + ck·κ` from integers.
    pub fn ints(c0: i64, ca: i64, ck: i64) -> Self {
        LinearForm::new(rat(c0), rat(ca), rat(ck))
    }

    pub fn constant(c: Rational) -> Self {
        LinearForm::new(c, Rational::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        LinearForm::ints(0, 0, 0)
    }

    pub fn is_constant(&self) -> bool {
        self.c_a.is_zero() && self.c_k.is_zero()
    }

    pub fn as_constant(&self) -> Option<&Rational> {
        self.is_constant().then_some(&self.c0)
    }

    pub fn is_zero(&self) -> bool {
        self.is_constant() && self.c0.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        LinearForm::new(&self.c0 + &o.c0, &self.c_a + &o.c_a, &self.c_k + &o.c_k)
    }

    pub fn sub(&self, o: &Self) -> Self {
        LinearForm::new(&self.c0 - &o.c0, &self.c_a - &o.c_a, &self.c_k - &o.c_k)
    }

    pub fn neg(&self) -> Self {
        LinearForm::new(-&self.c0, -&self.c_a, -&self.c_k)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        LinearForm::new(&self.c0 * r, &self.c_a * r, &self.c_k * r)
    }

    /// `self + m` for an integer `m`.
    pub fn shift(&self, m: i64) -> Self {
        LinearForm::new(&self.c0 + rat(m), self.c_a.clone(), self.c_k.clone())
    }

    /// Representative of the shift class with `0 ≤ c0 < 1`, and the integer
    /// offset of `self` from it.
    pub(crate) fn split_shift(&self) -> (LinearForm, i64) {
        let fl = self.c0.floor();
        let base = LinearForm::new(&self.c0 - &fl, self.c_a.clone(), self.c_k.clone());
        (base, fl.to_integer().to_i64().expect("shift fits in i64"))
    }

    pub fn to_poly(&self) -> ParamPolynomial {
        ParamPolynomial::from_terms([
            ((0, 0), self.c0.clone()),
            ((1, 0), self.c_a.clone()),
            ((0, 1), self.c_k.clone()),
        ])
    }

    pub fn to_ratfunc(&self) -> ParamRational {
        ParamRational::from_poly(self.to_poly())
    }

    /// Fold any specified parameter values into the constant.
    pub fn specialize(&self, a: Option<&Rational>, k: Option<&Rational>) -> Self {
        let mut out = self.clone();
        if let Some(a) = a {
            out.c0 += &out.c_a * a;
            out.c_a = Rational::zero();
        }
        if let Some(k) = k {
            out.c0 += &out.c_k * k;
            out.c_k = Rational::zero();
        }
        out
    }

    pub fn eval(&self, a: &Rational, k: &Rational) -> Rational {
        &self.c0 + &self.c_a * a + &self.c_k * k
    }

    pub fn eval_complex(&self, a: Complex64, k: Complex64) -> Complex64 {
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        a * f(&self.c_a) + k * f(&self.c_k) + f(&self.c0)
    }
}

fn push_term(out: &mut String, c: &Rational, var: Option<&str>) {
    if c.is_zero() {
        return;
    }
    let neg = c.is_negative();
    if neg {
        out.push('-');
    } else if !out.is_empty() {
        out.push('+');
    }
    let abs = c.abs();
    match var {
        None => out.push_str(&abs.to_string()),
        Some(v) if abs.is_one() => out.push_str(v),
        Some(v) => {
            out.push_str(&abs.to_string());
            out.push('*');
            out.push_str(v);
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        push_term(&mut s, &self.c_a, Some("a"));
        push_term(&mut s, &self.c0, None);
        push_term(&mut s, &self.c_k, Some("k"));
        if s.is_empty() {
            s.push('0');
        }
        f.write_str(&s)
    }
}

impl serde::Serialize for LinearForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_order() {
        assert_eq!(LinearForm::ints(-1, 1, 1).to_string(), "a-1+k");
        assert_eq!(LinearForm::ints(0, 0, 2).to_string(), "2*k");
        assert_eq!(LinearForm::ints(1, -1, -3).to_string(), "-a+1-3*k");
        assert_eq!(LinearForm::zero().to_string(), "0");
    }

    #[test]
    fn split_shift_negative() {
        let l = LinearForm::new(crate::exact::ratio(-3, 2), rat(1), rat(0));
        let (b, m) = l.split_shift();
        assert_eq!(m, -2);
        assert_eq!(b.c0, crate::exact::ratio(1, 2));
    }
}
