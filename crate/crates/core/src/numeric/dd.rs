//! Double-double complex helpers for the torus quadrature, where integrals
//! of size 1e-8 arise from integrands of size 1e2.

use crate::exact::Rational;
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use twofloat::TwoFloat;

pub type Cdd = Complex<TwoFloat>;

pub fn dd(x: f64) -> TwoFloat {
    TwoFloat::from_f64(x)
}

pub fn int_to_dd(b: &BigInt) -> TwoFloat {
    let hi = b.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() {
        return dd(hi);
    }
    let rest = b - BigInt::from_f64(hi).unwrap_or_default();
    TwoFloat::new_add(hi, rest.to_f64().unwrap_or(0.0))
}

/// Quotient to full double-double precision; the crate's own `Div` stops at
/// about 1e-17.
pub fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}

pub fn cdiv(a: Cdd, b: Cdd) -> Cdd {
    let den = b.re * b.re + b.im * b.im;
    let num = a * b.conj();
    Cdd::new(div(num.re, den), div(num.im, den))
}

pub fn rat_to_dd(r: &Rational) -> TwoFloat {
    let (n, d) = (r.numer(), r.denom());
    if n.bits() < 1000 && d.bits() < 1000 {
        return div(int_to_dd(n), int_to_dd(d));
    }
    // scale both to a common exponent before converting
    let shift = n.bits().max(d.bits()) as i64 - 900;
    let sh = |x: &BigInt| int_to_dd(&(x >> shift as usize));
    div(sh(n), sh(d))
}

pub fn to_c64(z: &Cdd) -> Complex64 {
    Complex64::new(z.re.hi() + z.re.lo(), z.im.hi() + z.im.lo())
}

pub fn abs_f64(z: &Cdd) -> f64 {
    to_c64(z).norm()
}

pub fn cpow(z: Cdd, mut e: usize) -> Cdd {
    let mut base = z;
    let mut acc = Cdd::new(dd(1.0), dd(0.0));
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}

/// `ω^k` for `k = 0..p`, `ω = e^{2πi/p}`, refined by one Newton step on
/// `z^p = 1` from the `f64` value.
pub fn roots_of_unity(p: usize) -> Vec<Cdd> {
    let pf = dd(p as f64);
    (0..p)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / p as f64;
            let mut z = Cdd::new(dd(t.cos()), dd(t.sin()));
            if k == 0 {
                return z;
            }
            for _ in 0..2 {
                let zp1 = cpow(z, p - 1);
                let f = zp1 * z - Cdd::new(dd(1.0), dd(0.0));
                let fp = zp1 * Cdd::new(pf, TwoFloat::zero());
                z = z - cdiv(f, fp);
            }
            z
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_are_accurate() {
        let w = roots_of_unity(12);
        // ω^3 = i exactly
        let e = w[3] - Cdd::new(dd(0.0), dd(1.0));
        assert!(abs_f64(&e) < 1e-30);
        let s: Cdd = w.iter().fold(Cdd::new(dd(0.0), dd(0.0)), |a, b| a + b);
        assert!(abs_f64(&s) < 1e-30);
    }

    #[test]
    fn rational_conversion() {
        let r = Rational::new(1.into(), 3.into());
        let x = rat_to_dd(&r) * dd(3.0) - dd(1.0);
        assert!(x.hi().abs() < 1e-31, "{x:?}");
        let big = Rational::new(BigInt::from(10).pow(400) + 7, BigInt::from(10).pow(400) * 3);
        let y = rat_to_dd(&big) * dd(3.0) - dd(1.0);
        assert!(y.hi().abs() < 1e-31, "{y:?}");
    }
}
