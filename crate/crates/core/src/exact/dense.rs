//! Recursive dense polynomials over a gcd domain.
//!
//! `Dense<BigInt>` is ℤ[κ] and `Dense<Dense<BigInt>>` is ℤ[κ][a]; both are
//! integral domains with a gcd computed by the subresultant PRS, which is all
//! the rational-function field needs to keep its fractions reduced.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use std::fmt::Debug;

/// Integral domain with exact division and a gcd.
///
/// `gcd` results are normalised so that `is_negative` is false.
pub(crate) trait GcdRing: Clone + PartialEq + Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    /// `self / d` when the division is exact, `None` otherwise.
    fn div_exact(&self, d: &Self) -> Option<Self>;
    fn gcd_with(&self, o: &Self) -> Self;
    /// Sign of the recursively leading integer coefficient.
    fn is_neg(&self) -> bool;
}

impl GcdRing for BigInt {
    fn nil() -> Self {
        <BigInt as num_traits::Zero>::zero()
    }
    fn unit() -> Self {
        <BigInt as num_traits::One>::one()
    }
    fn is_nil(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        num_traits::One::is_one(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if GcdRing::is_nil(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        if GcdRing::is_nil(&r) {
            Some(q)
        } else {
            None
        }
    }
    fn gcd_with(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Dense univariate polynomial; `c[i]` is the coefficient of `t^i`, trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Dense<R> {
    pub(crate) c: Vec<R>,
}

impl<R: GcdRing> Dense<R> {
    pub(crate) fn from_vec(c: Vec<R>) -> Self {
        let mut p = Dense { c };
        p.trim();
        p
    }

    pub(crate) fn constant(r: R) -> Self {
        Self::from_vec(vec![r])
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_nil()) {
            self.c.pop();
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub(crate) fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub(crate) fn lc(&self) -> &R {
        self.c
            .last()
            .expect("leading coefficient of zero polynomial")
    }

    fn scale(&self, r: &R) -> Self {
        if r.is_nil() {
            return Self::from_vec(Vec::new());
        }
        Dense {
            c: self.c.iter().map(|x| x.times(r)).collect(),
        }
    }

    pub(crate) fn div_scalar(&self, r: &R) -> Option<Self> {
        if r.is_unit() {
            return Some(self.clone());
        }
        let c = self
            .c
            .iter()
            .map(|x| x.div_exact(r))
            .collect::<Option<Vec<_>>>()?;
        Some(Dense { c })
    }

    /// gcd of all coefficients, sign-normalised.
    pub(crate) fn content(&self) -> R {
        let mut g = R::nil();
        for x in &self.c {
            g = g.gcd_with(x);
            if g.is_unit() {
                break;
            }
        }
        g
    }

    /// `(content, primitive part)` with the primitive part's leading
    /// coefficient non-negative.
    pub(crate) fn primitive(&self) -> (R, Self) {
        if self.c.is_empty() {
            return (R::nil(), self.clone());
        }
        let mut g = self.content();
        if self.lc().is_neg() {
            g = g.negate();
        }
        let p = self.div_scalar(&g).expect("content divides");
        (g, p)
    }

    fn normalized(&self) -> Self {
        if !self.c.is_empty() && self.lc().is_neg() {
            self.negate()
        } else {
            self.clone()
        }
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) · a mod b`.
    fn prem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo-division by zero");
        let Some(da) = self.degree() else {
            return self.clone();
        };
        if da < db {
            return self.clone();
        }
        let lcb = b.lc();
        let mut r = self.c.clone();
        let mut e = da - db + 1;
        while let Some(dr) = r.len().checked_sub(1) {
            if dr < db {
                break;
            }
            let lcr = r[dr].clone();
            let shift = dr - db;
            for x in r.iter_mut() {
                *x = x.times(lcb);
            }
            for (i, bi) in b.c.iter().enumerate() {
                r[i + shift] = r[i + shift].minus(&bi.times(&lcr));
            }
            while r.last().is_some_and(|x| x.is_nil()) {
                r.pop();
            }
            e -= 1;
        }
        let mut f = R::unit();
        for _ in 0..e {
            f = f.times(lcb);
        }
        Dense::from_vec(r).scale(&f)
    }

    /// Subresultant PRS gcd of two primitive polynomials of positive degree.
    fn subresultant_gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = if a.degree() >= b.degree() {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        let mut g = R::unit();
        let mut h = R::unit();
        loop {
            let delta = a.degree().unwrap() - b.degree().unwrap();
            let r = a.prem(&b);
            match r.degree() {
                None => return b.primitive().1,
                Some(0) => return Dense::constant(R::unit()),
                Some(_) => {}
            }
            let mut divisor = g.clone();
            for _ in 0..delta {
                divisor = divisor.times(&h);
            }
            a = b;
            b = r
                .div_scalar(&divisor)
                .expect("subresultant division is exact");
            g = a.lc().clone();
            h = match delta {
                0 => h,
                1 => g.clone(),
                _ => {
                    let mut num = g.clone();
                    let mut den = h.clone();
                    for _ in 1..delta {
                        num = num.times(&g);
                    }
                    for _ in 2..delta {
                        den = den.times(&h);
                    }
                    num.div_exact(&den).expect("subresultant h update is exact")
                }
            };
        }
    }
}

impl<R: GcdRing> GcdRing for Dense<R> {
    fn nil() -> Self {
        Dense { c: Vec::new() }
    }
    fn unit() -> Self {
        Dense { c: vec![R::unit()] }
    }
    fn is_nil(&self) -> bool {
        self.c.is_empty()
    }
    fn is_unit(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_unit()
    }
    fn plus(&self, o: &Self) -> Self {
        let (long, short) = if self.c.len() >= o.c.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut c = long.c.clone();
        for (x, y) in c.iter_mut().zip(&short.c) {
            *x = x.plus(y);
        }
        Dense::from_vec(c)
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return Self::nil();
        }
        let mut c = vec![R::nil(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_nil() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_nil() {
                    c[i + j] = c[i + j].plus(&x.times(y));
                }
            }
        }
        Dense::from_vec(c)
    }
    fn negate(&self) -> Self {
        Dense {
            c: self.c.iter().map(|x| x.negate()).collect(),
        }
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let Some(ds) = self.degree() else {
            return Some(Self::nil());
        };
        if ds < dd {
            return None;
        }
        if dd == 0 {
            return self.div_scalar(&d.c[0]);
        }
        let lcd = d.lc();
        let mut r = self.c.clone();
        let mut q = vec![R::nil(); ds - dd + 1];
        while let Some(dr) = r.len().checked_sub(1) {
            if dr < dd {
                return None;
            }
            let k = dr - dd;
            let coef = r[dr].div_exact(lcd)?;
            for (i, di) in d.c.iter().enumerate() {
                r[i + k] = r[i + k].minus(&di.times(&coef));
            }
            q[k] = coef;
            while r.last().is_some_and(|x| x.is_nil()) {
                r.pop();
            }
        }
        Some(Dense::from_vec(q))
    }
    fn gcd_with(&self, o: &Self) -> Self {
        if self.is_nil() {
            return o.normalized();
        }
        if o.is_nil() || self == o {
            return self.normalized();
        }
        let (ca, pa) = self.primitive();
        let (cb, pb) = o.primitive();
        let c = ca.gcd_with(&cb);
        let g = if pa.degree() == Some(0) || pb.degree() == Some(0) {
            Dense::constant(R::unit())
        } else if pa == pb {
            pa
        } else {
            Self::subresultant_gcd(&pa, &pb)
        };
        g.scale(&c).normalized()
    }
    fn is_neg(&self) -> bool {
        self.c.last().is_some_and(|x| x.is_neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> Dense<BigInt> {
        Dense::from_vec(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn univariate_gcd_finds_common_factor() {
        // (t-1)(t+2) and (t-1)(t+5)
        let a = zp(&[-2, 1, 1]);
        let b = zp(&[-5, 4, 1]);
        assert_eq!(a.gcd_with(&b), zp(&[-1, 1]));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let a = zp(&[6, 6]);
        let b = zp(&[4, 4]);
        assert_eq!(a.gcd_with(&b), zp(&[2, 2]));
    }

    #[test]
    fn exact_division_rejects_remainders() {
        let a = zp(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&zp(&[1, 1])), Some(zp(&[-1, 1])));
        assert_eq!(a.div_exact(&zp(&[2, 1])), None);
    }

    #[test]
    fn bivariate_gcd() {
        // outer variable a, inner k: (a + k)(a - 1) and (a + k)(k + 2)
        let a_plus_k = Dense::from_vec(vec![zp(&[0, 1]), zp(&[1])]);
        let a_minus_1 = Dense::from_vec(vec![zp(&[-1]), zp(&[1])]);
        let k_plus_2 = Dense::from_vec(vec![zp(&[2, 1])]);
        let f = a_plus_k.times(&a_minus_1);
        let g = a_plus_k.times(&k_plus_2);
        assert_eq!(f.gcd_with(&g), a_plus_k);
    }
}
