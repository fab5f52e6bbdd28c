//! Multivariable Bessel polynomials `Y_λ`, their value at the origin and the
//! pole-locus certificate.

use crate::engine::Engine;
use crate::exact::{pochhammer, LinearForm, ParamPolynomial, ParamRational, Rational};
use crate::jack::JackExpansion;
use crate::partition::Partition;
use crate::sympoly::SymmetricPolynomial;
use crate::{Error, Result};
use num_integer::Integer;
use serde::Serialize;
use std::sync::Arc;

/// `Y_λ = P_λ + Σ_{μ⊂λ} u_{λμ} P_μ`.
#[derive(Clone, Debug)]
pub struct BesselPolynomial {
    pub lambda: Partition,
    pub n: usize,
    pub jack_coeffs: JackExpansion,
    pub monomial_form: SymmetricPolynomial,
    pub eigenvalue: ParamRational,
}

impl BesselPolynomial {
    /// Coefficient of `m_∅`, i.e. `Y_λ(0^n)`.
    pub fn constant_term(&self) -> ParamRational {
        self.monomial_form.coeff(&Partition::empty())
    }
}

impl Engine {
    /// `D^B P_μ` in the Jack basis; fails if it leaves the span of
    /// `{P_ν : ν ⊆ μ}`.
    pub fn db_on_jack(&self, mu: &Partition, n: usize) -> Result<Arc<JackExpansion>> {
        self.db_jack.get_or_try(&(mu.clone(), n), || {
            let p = self.jack(mu, n)?;
            let img = p.apply_db_with(&self.params().a_value(), &self.params().k_value())?;
            let e = self.to_jack_basis(&img)?;
            if let Some(nu) = e.coeffs().keys().find(|nu| !mu.contains(nu)) {
                return Err(Error::Structural {
                    mu: mu.clone(),
                    nu: nu.clone(),
                });
            }
            Ok(e)
        })
    }

    pub fn bessel(&self, lambda: &Partition, n: usize) -> Result<Arc<BesselPolynomial>> {
        lambda.check_length(n)?;
        self.bessel
            .get_or_try(&(lambda.clone(), n), || self.solve_bessel(lambda, n))
    }

    fn solve_bessel(&self, lambda: &Partition, n: usize) -> Result<BesselPolynomial> {
        let subs = lambda.subpartitions();
        let images = subs
            .iter()
            .map(|mu| self.db_on_jack(mu, n))
            .collect::<Result<Vec<_>>>()?;
        let eps = images[0].coeff(lambda);
        let mut u = JackExpansion::new(n);
        u.add_term(lambda.clone(), ParamRational::one());
        for (k, nu) in subs.iter().enumerate().skip(1) {
            let gap = &eps - &images[k].coeff(nu);
            if gap.is_zero() {
                return Err(Error::Degeneracy {
                    lambda: lambda.clone(),
                    mu: nu.clone(),
                });
            }
            let mut rhs = ParamRational::zero();
            for (mu, img) in subs[..k].iter().zip(&images) {
                if mu.weight() > nu.weight() && mu.contains(nu) {
                    let c = u.coeff(mu);
                    if !c.is_zero() {
                        rhs = rhs + c * img.coeff(nu);
                    }
                }
            }
            if !rhs.is_zero() {
                u.add_term(nu.clone(), rhs / gap);
            }
        }
        let y = self.from_jack_basis(&u)?;
        let residual = y
            .apply_db_with(&self.params().a_value(), &self.params().k_value())?
            .sub(&y.scale(&eps));
        if !residual.is_zero() {
            return Err(Error::VerificationFailed {
                case: format!("eigen-residual/n={n}/{lambda}"),
                lhs: format!("{} nonzero terms", residual.coeffs().len()),
                rhs: "0".into(),
            });
        }
        Ok(BesselPolynomial {
            lambda: lambda.clone(),
            n,
            jack_coeffs: u,
            monomial_form: y,
            eigenvalue: eps,
        })
    }

    /// Constant coefficient of `Y_λ` against the closed value at the origin.
    pub fn constant_term_consistency(
        &self,
        lambda: &Partition,
        n: usize,
    ) -> Result<(bool, ParamRational, ParamRational)> {
        let lhs = self.bessel(lambda, n)?.constant_term();
        let rhs = self.params().apply(&bessel_at_zero(lambda, n)?)?;
        Ok((lhs == rhs, lhs, rhs))
    }

    /// Values `u_{λμ}·Y_μ(0)/Y_λ(0)` for every `μ ⊂ λ`; no independent
    /// reference exists for these, so they are reported only.
    pub fn interpolation_ratios(
        &self,
        lambda: &Partition,
        n: usize,
    ) -> Result<Vec<(Partition, ParamRational)>> {
        let y = self.bessel(lambda, n)?;
        let top = self.params().apply(&bessel_at_zero_amended(lambda, n)?)?;
        let mut out = Vec::new();
        for (mu, u) in y.jack_coeffs.coeffs().iter().rev() {
            if mu == lambda {
                continue;
            }
            let ymu = self.params().apply(&bessel_at_zero_amended(mu, n)?)?;
            out.push((mu.clone(), (u * &ymu).checked_div(&top)?));
        }
        Ok(out)
    }
}

/// `Y_λ(0^n)` by the closed product as printed, whose pair factors
/// `[κ(2n-i-j+1)]/[κ(2n-i-j)]` carry no `a`.
pub fn bessel_at_zero(lambda: &Partition, n: usize) -> Result<ParamRational> {
    zero_value(lambda, n, 0)
}

/// `Y_λ(0^n)` with the pair factors shifted to
/// `[a-1+κ(2n-i-j+1)]/[a-1+κ(2n-i-j)]`; this variant agrees with the
/// eigen-solver for every `n`.
pub fn bessel_at_zero_amended(lambda: &Partition, n: usize) -> Result<ParamRational> {
    zero_value(lambda, n, 1)
}

fn zero_value(lambda: &Partition, n: usize, shift_a: i64) -> Result<ParamRational> {
    lambda.check_length(n)?;
    let mut num = ParamPolynomial::one();
    let mut den = ParamPolynomial::one();
    let (ni, w) = (n as i64, lambda.weight());
    for i in 1..=ni {
        let li = lambda.part(i as usize);
        for j in i + 1..=ni {
            let lj = lambda.part(j as usize);
            num = num
                .mul(&pochhammer(&LinearForm::ints(0, 0, j - i + 1), li - lj))
                .mul(&pochhammer(
                    &LinearForm::ints(-shift_a, shift_a, 2 * ni - i - j + 1),
                    li + lj,
                ));
            den = den
                .mul(&pochhammer(&LinearForm::ints(0, 0, j - i), li - lj))
                .mul(&pochhammer(
                    &LinearForm::ints(-shift_a, shift_a, 2 * ni - i - j),
                    li + lj,
                ));
        }
        num = num.mul(&pochhammer(&LinearForm::ints(-1, 1, ni - i), li));
        den = den.mul(&pochhammer(&LinearForm::ints(-1, 1, 2 * (ni - i)), 2 * li));
    }
    let two = ParamPolynomial::from_int(2).pow(w);
    ParamRational::new(num.mul(&two), den)
}

/// `I_μ(μ)` at the Bessel specialisation of the interpolation parameter.
pub fn interpolation_diagonal(mu: &Partition, n: usize) -> Result<ParamPolynomial> {
    mu.check_length(n)?;
    let conj = mu.conjugate();
    let ni = n as i64;
    Ok(mu.boxes().fold(ParamPolynomial::one(), |acc, (i, j)| {
        let (i, j) = (i as i64, j as i64);
        let mi = mu.part(i as usize) as i64;
        let cj = conj.part(j as usize) as i64;
        acc.mul(&LinearForm::ints(1 + mi - j, 0, cj - i).to_poly())
            .mul(&LinearForm::ints(mi + j - 2, 1, 2 * ni - cj - i).to_poly())
    }))
}

/// Factorisation of the common denominator of the `u_{λμ}` over the
/// admissible linear forms.
#[derive(Clone, Debug, Serialize)]
pub struct PoleCertificate {
    pub pass: bool,
    #[serde(rename = "factors")]
    pub allowed_factors: Vec<LinearForm>,
    #[serde(serialize_with = "ser_display")]
    pub leftover: ParamPolynomial,
}

fn ser_display<S: serde::Serializer>(
    p: &ParamPolynomial,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Divide out `f` as often as possible.
fn strip(
    mut d: ParamPolynomial,
    f: &ParamPolynomial,
    found: &mut Vec<LinearForm>,
    form: &LinearForm,
) -> ParamPolynomial {
    while !d.is_constant() {
        match d.exact_div(f) {
            Some(q) => {
                found.push(form.clone());
                d = q;
            }
            None => break,
        }
    }
    d
}

pub fn pole_certificate(y: &BesselPolynomial) -> PoleCertificate {
    let n = y.n as i64;
    let w = y.lambda.weight() as i64;
    let mut found = Vec::new();
    let mut leftover = ParamPolynomial::one();
    for c in y.jack_coeffs.coeffs().values() {
        let mut d = c.denom().primitive_part();
        if d.is_constant() {
            continue;
        }
        let deg_k = d.degree_k() as i64;
        let deg_a = d.degree_a() as i64;
        for i in 0..=2 * (n - 1) {
            for m in 0..=deg_a + 2 * w {
                let form = LinearForm::ints(m - 1, 1, i);
                d = strip(d, &form.to_poly(), &mut found, &form);
            }
        }
        let qmax = deg_k.max(2 * n);
        for q in 1..=qmax {
            for p in 1..=q * (2 * w + 2 * n) {
                if p.gcd(&q) != 1 || d.is_constant() {
                    continue;
                }
                let kv = Rational::new((-p).into(), q.into());
                if !d.specialize(None, Some(&kv)).is_zero() {
                    continue;
                }
                let form = LinearForm::ints(p, 0, q);
                d = strip(d, &form.to_poly(), &mut found, &form);
            }
        }
        leftover = leftover.mul(&d);
    }
    found.sort();
    found.dedup();
    PoleCertificate {
        pass: leftover.is_constant() && !leftover.is_zero(),
        allowed_factors: found,
        leftover,
    }
}
