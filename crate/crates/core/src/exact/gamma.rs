use super::{LinearForm, ParamPolynomial, ParamRational, Rational};
use crate::numeric::gamma::ln_gamma_complex;
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive};
use std::collections::BTreeMap;
use std::fmt;

/// `[L]_m = L(L+1)⋯(L+m-1)`.
pub fn pochhammer(l: &LinearForm, m: u32) -> ParamPolynomial {
    let mut p = ParamPolynomial::one();
    for j in 0..m {
        p = p.mul(&l.shift(j as i64).to_poly());
    }
    p
}

/// `prefactor · 2^two_power · ∏ Γ(L)^e`, with signed multiplicities.
///
/// Values built by [`GammaProduct::raw`] are kept as given until
/// [`GammaProduct::normalize`] is called; every arithmetic operation returns
/// a normalised value, and equality always compares normal forms.
#[derive(Clone, Debug)]
pub struct GammaProduct {
    prefactor: ParamRational,
    factors: Vec<(LinearForm, i64)>,
    two_power: LinearForm,
    normal: bool,
}

/// Unnormalised accumulator; `GammaProduct::raw` with a friendlier API.
#[derive(Clone, Debug, Default)]
pub struct GammaFactors {
    prefactor: Option<ParamRational>,
    factors: Vec<(LinearForm, i64)>,
    two_power: Option<LinearForm>,
}

impl GammaFactors {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn gamma(mut self, l: LinearForm) -> Self {
        self.factors.push((l, 1));
        self
    }

    pub fn over_gamma(mut self, l: LinearForm) -> Self {
        self.factors.push((l, -1));
        self
    }

    pub fn times(mut self, r: &ParamRational) -> Self {
        self.prefactor = Some(match self.prefactor {
            Some(p) => &p * r,
            None => r.clone(),
        });
        self
    }

    pub fn times_int(self, n: i64) -> Self {
        self.times(&ParamRational::from_int(n))
    }

    pub fn two_to(mut self, l: LinearForm) -> Self {
        self.two_power = Some(match self.two_power {
            Some(t) => t.add(&l),
            None => l,
        });
        self
    }

    pub fn build(self) -> GammaProduct {
        GammaProduct {
            prefactor: self.prefactor.unwrap_or_else(ParamRational::one),
            factors: self.factors,
            two_power: self.two_power.unwrap_or_else(LinearForm::zero),
            normal: false,
        }
    }
}

impl GammaProduct {
    pub fn from_ratfunc(r: ParamRational) -> Self {
        GammaProduct {
            prefactor: r,
            factors: Vec::new(),
            two_power: LinearForm::zero(),
            normal: true,
        }
    }

    pub fn one() -> Self {
        Self::from_ratfunc(ParamRational::one())
    }

    /// Unnormalised product `prefactor · ∏Γ(numer) / ∏Γ(denom)`.
    pub fn raw(prefactor: ParamRational, numer: Vec<LinearForm>, denom: Vec<LinearForm>) -> Self {
        let factors = numer
            .into_iter()
            .map(|l| (l, 1))
            .chain(denom.into_iter().map(|l| (l, -1)))
            .collect();
        GammaProduct {
            prefactor,
            factors,
            two_power: LinearForm::zero(),
            normal: false,
        }
    }

    pub fn prefactor(&self) -> &ParamRational {
        &self.prefactor
    }

    /// Exponent `L` of the `2^L` token.
    pub fn two_power(&self) -> &LinearForm {
        &self.two_power
    }

    /// Numerator Gamma arguments with multiplicities.
    pub fn numer_gammas(&self) -> Vec<(LinearForm, u32)> {
        self.factors
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(l, e)| (l.clone(), *e as u32))
            .collect()
    }

    pub fn denom_gammas(&self) -> Vec<(LinearForm, u32)> {
        self.factors
            .iter()
            .filter(|(_, e)| *e < 0)
            .map(|(l, e)| (l.clone(), e.unsigned_abs() as u32))
            .collect()
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// The value as an element of ℚ(a, κ), when no transcendental factor
    /// survives normalisation.
    pub fn as_ratfunc(&self) -> Option<ParamRational> {
        let g = self.normalize();
        (g.factors.is_empty() && g.two_power.is_zero()).then_some(g.prefactor)
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    /// Apply `Γ(L+m) = [L]_m Γ(L)` until each integer-shift class holds a
    /// single Gamma factor, fold constant integer arguments into factorials
    /// and integer powers of two into the prefactor.
    pub fn normalize(&self) -> GammaProduct {
        if self.normal {
            return self.clone();
        }
        if self.prefactor.is_zero() {
            return Self::from_ratfunc(ParamRational::zero());
        }
        let mut net: BTreeMap<LinearForm, i64> = BTreeMap::new();
        for (l, e) in &self.factors {
            *net.entry(l.clone()).or_insert(0) += e;
        }
        // class representative -> (net exponent, members)
        let mut classes: BTreeMap<LinearForm, Vec<(i64, i64)>> = BTreeMap::new();
        let mut kept: BTreeMap<LinearForm, i64> = BTreeMap::new();
        let mut pnum = ParamPolynomial::one();
        let mut pden = ParamPolynomial::one();
        let mut int_num = num_bigint::BigInt::one();
        let mut int_den = num_bigint::BigInt::one();
        for (l, e) in net {
            if e == 0 {
                continue;
            }
            if let Some(c) = l.as_constant() {
                if c.is_integer() {
                    let v = c.to_integer();
                    if v.is_positive() {
                        let f = factorial(v.to_u64().expect("factorial argument fits") - 1);
                        for _ in 0..e.unsigned_abs() {
                            if e > 0 {
                                int_num *= &f;
                            } else {
                                int_den *= &f;
                            }
                        }
                    } else {
                        *kept.entry(l).or_insert(0) += e;
                    }
                    continue;
                }
            }
            let (base, m) = l.split_shift();
            classes.entry(base).or_default().push((m, e));
        }
        for (base, members) in classes {
            let mut total = 0i64;
            for (m, e) in members {
                total += e;
                // Γ(base+m) = [base]_m Γ(base) for m ≥ 0,
                // Γ(base+m) = Γ(base) / [base+m]_{-m} for m < 0.
                let (poch, up) = if m >= 0 {
                    (pochhammer(&base, m as u32), true)
                } else {
                    (pochhammer(&base.shift(m), m.unsigned_abs() as u32), false)
                };
                let times = e.unsigned_abs();
                let in_num = up == (e > 0);
                for _ in 0..times {
                    if in_num {
                        pnum = pnum.mul(&poch);
                    } else {
                        pden = pden.mul(&poch);
                    }
                }
            }
            if total != 0 {
                *kept.entry(base).or_insert(0) += total;
            }
        }
        let (two, tnum, tden) = split_two_power(&self.two_power);
        let num = self
            .prefactor
            .numer()
            .mul(&pnum)
            .scale(&Rational::from_integer(int_num * tnum));
        let den = self
            .prefactor
            .denom()
            .mul(&pden)
            .scale(&Rational::from_integer(int_den * tden));
        let prefactor = ParamRational::new(num, den).expect("Pochhammer denominators are nonzero");
        GammaProduct {
            prefactor,
            factors: kept.into_iter().filter(|(_, e)| *e != 0).collect(),
            two_power: two,
            normal: true,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.combine(o, 1)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let inv = GammaProduct {
            prefactor: o.prefactor.recip()?,
            factors: o.factors.iter().map(|(l, e)| (l.clone(), -e)).collect(),
            two_power: o.two_power.neg(),
            normal: false,
        };
        Ok(self.combine(&inv, 1))
    }

    fn combine(&self, o: &Self, sign: i64) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(o.factors.iter().map(|(l, e)| (l.clone(), sign * e)));
        GammaProduct {
            prefactor: &self.prefactor * &o.prefactor,
            factors,
            two_power: self.two_power.add(&o.two_power),
            normal: false,
        }
        .normalize()
    }

    pub fn mul_ratfunc(&self, r: &ParamRational) -> Self {
        GammaProduct {
            prefactor: &self.prefactor * r,
            ..self.clone()
        }
        .normalize()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Substitute rational parameter values, then normalise.
    pub fn specialize(&self, a: Option<&Rational>, k: Option<&Rational>) -> Result<Self> {
        let prefactor = self.prefactor.specialize(a, k)?;
        let factors = self
            .factors
            .iter()
            .map(|(l, e)| (l.specialize(a, k), *e))
            .collect();
        Ok(GammaProduct {
            prefactor,
            factors,
            two_power: self.two_power.specialize(a, k),
            normal: false,
        }
        .normalize())
    }

    /// `Some(q)` when the value is the rational number `q` after substituting
    /// `a` and `κ`.
    pub fn eval_exact(&self, a: &Rational, k: &Rational) -> Result<Rational> {
        let s = self.specialize(Some(a), Some(k))?;
        s.as_ratfunc()
            .and_then(|r| r.as_constant())
            .ok_or_else(|| Error::Precondition(format!("value {s} is not rational")))
    }

    /// Natural logarithm of the value (principal branch per factor).
    pub fn ln_eval(&self, a: Complex64, k: Complex64) -> Result<Complex64> {
        let p = self.prefactor.eval_complex(a, k)?;
        if p == Complex64::new(0.0, 0.0) {
            return Err(Error::Precondition("logarithm of zero".into()));
        }
        let mut acc = p.ln();
        for (l, e) in &self.factors {
            let z = l.eval_complex(a, k);
            let lg = ln_gamma_complex(z).map_err(|_| Error::ParameterDegeneracy {
                factor: format!("Gamma({l})"),
            })?;
            acc += lg * (*e as f64);
        }
        acc += self.two_power.eval_complex(a, k) * std::f64::consts::LN_2;
        Ok(acc)
    }

    /// Floating-point value at complex parameters.
    pub fn eval_complex(&self, a: Complex64, k: Complex64) -> Result<Complex64> {
        if self.prefactor.eval_complex(a, k)? == Complex64::new(0.0, 0.0) {
            // still reject poles of the Gamma factors
            self.check_poles(a, k)?;
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.ln_eval(a, k)?.exp())
    }

    fn check_poles(&self, a: Complex64, k: Complex64) -> Result<()> {
        for (l, _) in &self.factors {
            ln_gamma_complex(l.eval_complex(a, k)).map_err(|_| Error::ParameterDegeneracy {
                factor: format!("Gamma({l})"),
            })?;
        }
        Ok(())
    }

    pub fn eval_f64(&self, a: f64, k: f64) -> Result<f64> {
        self.eval_complex(Complex64::new(a, 0.0), Complex64::new(k, 0.0))
            .map(|z| z.re)
    }
}

/// Split `2^L` into `2^(L - floor(c0))` and the integer `2^floor(c0)` as a
/// numerator/denominator pair.
fn split_two_power(l: &LinearForm) -> (LinearForm, num_bigint::BigInt, num_bigint::BigInt) {
    let (rest, m) = l.split_shift();
    let p = num_bigint::BigInt::one() << m.unsigned_abs();
    if m >= 0 {
        (rest, p, num_bigint::BigInt::one())
    } else {
        (rest, num_bigint::BigInt::one(), p)
    }
}

fn factorial(n: u64) -> num_bigint::BigInt {
    (1..=n).fold(num_bigint::BigInt::one(), |acc, i| acc * i)
}

/// Equality of normal forms.
pub(crate) fn gamma_equal(x: &GammaProduct, y: &GammaProduct) -> bool {
    let x = x.normalize();
    let y = y.normalize();
    x.prefactor == y.prefactor && x.factors == y.factors && x.two_power == y.two_power
}

impl PartialEq for GammaProduct {
    fn eq(&self, o: &Self) -> bool {
        gamma_equal(self, o)
    }
}

impl fmt::Display for GammaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.normalize();
        let pre = g.prefactor.to_string();
        let mut out = if pre.contains(['+', '-', '/']) && pre.len() > 1 && !g.factors.is_empty() {
            format!("({pre})")
        } else {
            pre
        };
        if !g.two_power.is_zero() {
            out.push_str(&format!("*2^({})", g.two_power));
        }
        let fmt_factor = |l: &LinearForm, e: u64| {
            if e == 1 {
                format!("Gamma({l})")
            } else {
                format!("Gamma({l})^{e}")
            }
        };
        for (l, e) in g.factors.iter().filter(|(_, e)| *e > 0) {
            out.push('*');
            out.push_str(&fmt_factor(l, *e as u64));
        }
        for (l, e) in g.factors.iter().filter(|(_, e)| *e < 0) {
            out.push('/');
            out.push_str(&fmt_factor(l, e.unsigned_abs()));
        }
        match out.strip_prefix("1*") {
            Some(rest) => f.write_str(rest),
            None => f.write_str(&out),
        }
    }
}

impl serde::Serialize for GammaProduct {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
