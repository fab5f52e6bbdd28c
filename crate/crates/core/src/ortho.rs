//! Torus moments, the weight-series coefficients and exact verification of
//! the Bessel orthogonality and norm identities.

use crate::engine::Engine;
use crate::exact::{
    pochhammer, GammaFactors, GammaProduct, LinearForm, ParamPolynomial, ParamRational,
};
use crate::jack::jack_norm_closed;
use crate::partition::{enumerate_partitions, Partition};
use crate::report::VerificationReport;
use crate::sympoly::SymmetricPolynomial;
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeMap;

fn lf(c0: i64, ca: i64, ck: i64) -> LinearForm {
    LinearForm::ints(c0, ca, ck)
}

/// `∏_{i<j} Γ(κ(j-i+1)+ν_i-ν_j)/Γ(κ(j-i)+ν_i-ν_j)`, shared by every moment
/// formula.
fn pair_block(mut g: GammaFactors, nu: &Partition, n: usize) -> GammaFactors {
    for i in 1..=n {
        for j in i + 1..=n {
            let d = nu.part(i) as i64 - nu.part(j) as i64;
            let s = (j - i) as i64;
            g = g.gamma(lf(d, 0, s + 1)).over_gamma(lf(d, 0, s));
        }
    }
    g
}

fn signed_power_of_two(sign_exp: u32, two_exp: u32) -> ParamRational {
    let v = ParamRational::from_int(2).pow(two_exp);
    if sign_exp % 2 == 1 {
        -v
    } else {
        v
    }
}

/// Coefficient of `P_λ(-2x^{-1})` in the weight series, without the
/// `(2πi)^n n!` normalisation.
pub fn weight_coefficient(lambda: &Partition, n: usize) -> Result<GammaProduct> {
    lambda.check_length(n)?;
    let ni = n as i64;
    let mut g = GammaFactors::new();
    for i in 1..=ni {
        for j in i + 1..=ni {
            let d = lambda.part(i as usize) as i64 - lambda.part(j as usize) as i64;
            g = g
                .gamma(lf(d + 1, 0, j - i))
                .over_gamma(lf(d + 1, 0, j - i - 1));
        }
    }
    for i in 1..=ni {
        let li = lambda.part(i as usize) as i64;
        g = g
            .gamma(lf(0, 0, i))
            .gamma(lf(0, 1, 2 * ni - i - 1))
            .over_gamma(lf(0, 0, 1))
            .over_gamma(lf(li - 1, 1, 2 * ni - i - 1));
    }
    Ok(g.build())
}

/// Closed value of `∫_{T^n} P_ν W dx`.
pub fn torus_moment(nu: &Partition, n: usize) -> Result<GammaProduct> {
    nu.check_length(n)?;
    let ni = n as i64;
    let mut g = pair_block(GammaFactors::new(), nu, n).times(&signed_power_of_two(
        nu.weight() + n as u32,
        nu.weight() + n as u32,
    ));
    for i in 1..=ni {
        let vi = nu.part(i as usize) as i64;
        g = g
            .gamma(lf(0, 0, i))
            .gamma(lf(0, 1, 2 * ni - i - 1))
            .over_gamma(lf(0, 0, 1))
            .over_gamma(lf(vi, 1, 2 * ni - i - 1));
    }
    Ok(g.build())
}

/// Checks `torus_moment(ν) = weight_coefficient(ν+1ⁿ)·(-2)^{|ν|+n}·‖P_{ν+1ⁿ}‖²`.
pub fn moment_consistency(nu: &Partition, n: usize) -> Result<VerificationReport> {
    let shifted = nu.add_column(n)?;
    let lhs = torus_moment(nu, n)?;
    let w = nu.weight() + n as u32;
    let rhs = weight_coefficient(&shifted, n)?
        .mul_ratfunc(&signed_power_of_two(w, w))
        .mul(&jack_norm_closed(&shifted, n)?);
    Ok(VerificationReport::exact(
        format!("moments/n={n}/{nu}"),
        "moment-formula",
        lhs == rhs,
        lhs.normalize(),
        rhs,
    ))
}

/// Right-hand side of the norm formula for `∫ Y_λ² W dx`.
pub fn normfactor_rhs(lambda: &Partition, n: usize) -> Result<ParamRational> {
    lambda.check_length(n)?;
    let ni = n as i64;
    let mut num = ParamPolynomial::one();
    let mut den = ParamPolynomial::one();
    let poch = |c0, ca, ck, m| pochhammer(&lf(c0, ca, ck), m);
    for i in 1..=ni {
        let li = lambda.part(i as usize);
        for j in i + 1..=ni {
            let lj = lambda.part(j as usize);
            let (d, s) = (li - lj, li + lj);
            let t = 2 * ni - i - j;
            num = num
                .mul(&poch(0, 0, j - i + 1, d))
                .mul(&poch(1, 0, j - i - 1, d))
                .mul(&poch(-1, 1, t + 1, s))
                .mul(&poch(0, 1, t - 1, s));
            den = den
                .mul(&poch(0, 0, j - i, d))
                .mul(&poch(1, 0, j - i, d))
                .mul(&poch(-1, 1, t, s))
                .mul(&poch(0, 1, t, s));
        }
        num = num
            .mul(&poch(-1, 1, ni - i, li))
            .mul(&poch(1, 0, ni - i, li));
        den = den
            .mul(&poch(-1, 1, 2 * (ni - i), 2 * li))
            .mul(&poch(0, 1, 2 * (ni - i), 2 * li));
    }
    let w = lambda.weight();
    let pre = signed_power_of_two(w + n as u32, 2 * w + n as u32);
    Ok(ParamRational::new(num, den)? * pre)
}

impl Engine {
    /// `R(ν) = torus_moment(ν)/torus_moment(∅)`, which is rational.
    pub fn moment_ratio(&self, nu: &Partition, n: usize) -> Result<ParamRational> {
        let r = self.moment_ratio.get_or_try(&(nu.clone(), n), || {
            let g = torus_moment(nu, n)?.div(&torus_moment(&Partition::empty(), n)?)?;
            let r = g.as_ratfunc().ok_or_else(|| Error::VerificationFailed {
                case: format!("moment-ratio/n={n}/{nu}"),
                lhs: g.to_string(),
                rhs: "rational".into(),
            })?;
            self.params().apply(&r)
        })?;
        Ok((*r).clone())
    }

    /// `torus_moment(∅)` with this engine's parameters substituted.
    pub fn base_moment(&self, n: usize) -> Result<GammaProduct> {
        self.params()
            .apply_gamma(&torus_moment(&Partition::empty(), n)?)
    }

    /// `∫ m_μ W dx / torus_moment(∅)`.
    pub fn moment_functional(&self, mu: &Partition, n: usize) -> Result<ParamRational> {
        let v = self.moment_functional.get_or_try(&(mu.clone(), n), || {
            let e = self.monomial_in_jack(mu, n)?;
            let mut acc = ParamRational::zero();
            for (nu, c) in e.coeffs() {
                acc = acc + c * &self.moment_ratio(nu, n)?;
            }
            Ok(acc)
        })?;
        Ok((*v).clone())
    }

    /// `∫ f g W dx / torus_moment(∅)`, exactly in ℚ(a, κ).
    pub fn w_pairing_ratio(
        &self,
        f: &SymmetricPolynomial,
        g: &SymmetricPolynomial,
    ) -> Result<ParamRational> {
        let prod = f.multiply(g)?;
        let mut acc = ParamRational::zero();
        for (mu, c) in prod.coeffs() {
            acc = acc + c * &self.moment_functional(mu, prod.n())?;
        }
        Ok(acc)
    }

    /// `∫_{T^n} f g W dx` as the base moment times a rational function.
    pub fn w_pairing(
        &self,
        f: &SymmetricPolynomial,
        g: &SymmetricPolynomial,
    ) -> Result<GammaProduct> {
        let r = self.w_pairing_ratio(f, g)?;
        Ok(self.base_moment(f.n())?.mul_ratfunc(&r))
    }

    /// `K(λ) = ∫ Y_λ² W dx / normfactor_rhs(λ)`.
    pub fn norm_ratio(&self, lambda: &Partition, n: usize) -> Result<GammaProduct> {
        let y = self.bessel(lambda, n)?;
        let r = self.w_pairing_ratio(&y.monomial_form, &y.monomial_form)?;
        let rhs = self.params().apply(&normfactor_rhs(lambda, n)?)?;
        Ok(self.base_moment(n)?.mul_ratfunc(&r.checked_div(&rhs)?))
    }

    /// Exact orthogonality and norm-ratio checks for all partitions with
    /// `|λ| ≤ max_weight` and at most `n` parts.
    pub fn verify_theorem(&self, n: usize, max_weight: u32) -> Result<Vec<VerificationReport>> {
        let parts = enumerate_partitions(max_weight, n);
        let ys = parts
            .par_iter()
            .map(|l| self.bessel(l, n))
            .collect::<Result<Vec<_>>>()?;
        let pairs: Vec<(usize, usize)> = (0..parts.len())
            .flat_map(|i| (i + 1..parts.len()).map(move |j| (i, j)))
            .collect();
        let mut reports = pairs
            .par_iter()
            .map(|&(i, j)| {
                let v = self.w_pairing_ratio(&ys[i].monomial_form, &ys[j].monomial_form)?;
                Ok(VerificationReport::exact(
                    format!("orthogonality/n={n}/{}x{}", parts[i], parts[j]),
                    "bessel-orthogonality",
                    v.is_zero(),
                    v,
                    0,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let k0 = self.norm_ratio(&Partition::empty(), n)?;
        let diag = parts
            .par_iter()
            .map(|l| {
                let k = self.norm_ratio(l, n)?;
                let (pass, rhs, note) = if n == 1 {
                    (k == GammaProduct::one(), GammaProduct::one(), None)
                } else {
                    (k == k0, k0.clone(), Some(format!("K = {}", k0.normalize())))
                };
                let r = VerificationReport::exact(
                    format!("norm-ratio/n={n}/{l}"),
                    "bessel-norm",
                    pass,
                    k.normalize(),
                    rhs.normalize(),
                );
                Ok(match note {
                    Some(s) => r.with_note(s),
                    None => r,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        reports.extend(diag);
        Ok(reports)
    }
}

/// Closed value of `∫_{ℝ₊ⁿ} P_ν W_{L²} dx`.
pub fn f2_closed(nu: &Partition, n: usize) -> Result<GammaProduct> {
    nu.check_length(n)?;
    let ni = n as i64;
    let mut g = pair_block(GammaFactors::new(), nu, n).two_to(lf(
        nu.weight() as i64 - ni,
        ni,
        ni * (ni - 1),
    ));
    for i in 1..=ni {
        let vi = nu.part(i as usize) as i64;
        g = g.gamma(lf(1 - vi, -1, -(2 * ni - i - 1)));
    }
    Ok(g.build())
}

/// The prefactor relating the two moment integrals as printed:
/// `(-1)^n 2^{-(a-2)n-κn(n-1)} ∏ Γ(κ)/(Γ(κi)Γ(-a+1-κ(2n-i-1)))`.
pub fn integral_equality_prefactor(n: usize) -> GammaProduct {
    let ni = n as i64;
    let mut g = GammaFactors::new()
        .times_int(if n % 2 == 1 { -1 } else { 1 })
        .two_to(lf(2 * ni, -ni, -ni * (ni - 1)));
    for i in 1..=ni {
        g = g
            .gamma(lf(0, 0, 1))
            .over_gamma(lf(0, 0, i))
            .over_gamma(lf(1, -1, -(2 * ni - i - 1)));
    }
    g.build()
}

/// `torus_moment(ν)` divided by the printed right-hand side; identically 1
/// when the identity holds.
pub fn integral_equality_discrepancy(nu: &Partition, n: usize) -> Result<GammaProduct> {
    let rhs = integral_equality_prefactor(n).mul(&f2_closed(nu, n)?);
    torus_moment(nu, n)?.div(&rhs)
}

pub fn integral_equality_check(nu: &Partition, n: usize) -> Result<VerificationReport> {
    let lhs = torus_moment(nu, n)?;
    let rhs = integral_equality_prefactor(n).mul(&f2_closed(nu, n)?);
    let pass = lhs == rhs;
    let r = VerificationReport::exact(
        format!("integral-equality/n={n}/{nu}"),
        "integral-equality",
        pass,
        lhs.normalize(),
        rhs.normalize(),
    );
    Ok(if pass {
        r
    } else {
        r.with_note(format!("lhs/rhs = {}", lhs.div(&rhs)?))
    })
}

/// Kadell's value of `(1/n!)∫_{[0,1]^n} P_ν ∏ y^{α-1}(1-y)^{β-1} |Δ|^{2κ} dy`.
pub fn kadell_closed(
    nu: &Partition,
    n: usize,
    alpha: &LinearForm,
    beta: &LinearForm,
) -> Result<GammaProduct> {
    nu.check_length(n)?;
    let ni = n as i64;
    let mut g = pair_block(GammaFactors::new(), nu, n);
    for i in 1..=ni {
        let vi = nu.part(i as usize) as i64;
        g = g
            .gamma(alpha.add(&lf(vi, 0, ni - i)))
            .gamma(beta.add(&lf(0, 0, i - 1)))
            .over_gamma(alpha.add(beta).add(&lf(vi, 0, 2 * ni - i - 1)));
    }
    Ok(g.build())
}

/// `(1/n!)∫_{ℝ₊ⁿ} P_ν ∏ y^{α-1} e^{-y} |Δ|^{2κ} dy`.
pub fn laguerre_closed(nu: &Partition, n: usize, alpha: &LinearForm) -> Result<GammaProduct> {
    nu.check_length(n)?;
    let ni = n as i64;
    let mut g = pair_block(GammaFactors::new(), nu, n);
    for i in 1..=ni {
        let vi = nu.part(i as usize) as i64;
        g = g.gamma(alpha.add(&lf(vi, 0, ni - i)));
    }
    Ok(g.build())
}

/// The change of variables `y = 2/x` followed by the box complement:
/// `f2_closed(ν) = 2^{(a-1)n+κn(n-1)+|ν|} laguerre_closed(ν̂, 1-a-2κ(n-1)-N)`.
pub fn f2_laguerre_bridge(engine: &Engine, nu: &Partition, n: usize, big_n: u32) -> Result<bool> {
    let ni = n as i64;
    let hat = nu.complement_in_box(big_n, n)?;
    let alpha = lf(1 - big_n as i64, -1, -2 * (ni - 1));
    let rhs = laguerre_closed(&hat, n, &alpha)?.mul(
        &GammaFactors::new()
            .two_to(lf(nu.weight() as i64 - ni, ni, ni * (ni - 1)))
            .build(),
    );
    Ok(f2_closed(nu, n)? == rhs && engine.reciprocal_complement_check(nu, big_n, n)?)
}

/// Closed moments `∫ P_ν W dx` for all small `ν`.
#[derive(Clone, Debug)]
pub struct MomentTable {
    pub n: usize,
    pub entries: BTreeMap<Partition, GammaProduct>,
}

impl MomentTable {
    pub fn build(n: usize, max_weight: u32) -> Result<Self> {
        let entries = enumerate_partitions(max_weight, n)
            .into_iter()
            .map(|nu| Ok((nu.clone(), torus_moment(&nu, n)?.normalize())))
            .collect::<Result<_>>()?;
        Ok(MomentTable { n, entries })
    }

    /// Every entry is `entry(∅)` times a rational function.
    pub fn check_factorisation(&self) -> Result<()> {
        let base = torus_moment(&Partition::empty(), self.n)?;
        for (nu, g) in &self.entries {
            if g.div(&base)?.as_ratfunc().is_none() {
                return Err(Error::VerificationFailed {
                    case: format!("moment-table/n={}/{nu}", self.n),
                    lhs: g.to_string(),
                    rhs: base.to_string(),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn pr(s: &str) -> ParamRational {
        s.parse().unwrap()
    }

    fn gr(s: &str) -> GammaProduct {
        GammaProduct::from_ratfunc(pr(s))
    }

    #[test]
    fn weight_coefficients() {
        let w = weight_coefficient(&p(&[]), 1).unwrap();
        assert_eq!(w, gr("a-1"));
        let w3 = weight_coefficient(&p(&[3]), 1).unwrap();
        let expect = GammaFactors::new()
            .gamma(lf(0, 1, 0))
            .over_gamma(lf(2, 1, 0))
            .build();
        assert_eq!(w3, expect);
    }

    #[test]
    fn moments_n1() {
        assert_eq!(torus_moment(&p(&[]), 1).unwrap(), gr("-2"));
        assert_eq!(torus_moment(&p(&[2]), 1).unwrap(), gr("-8/(a^2+a)"));
        assert_eq!(torus_moment(&p(&[3]), 1).unwrap(), gr("16/(a^3+3*a^2+2*a)"));
    }

    #[test]
    fn moment_n2_base() {
        let t = torus_moment(&p(&[]), 2).unwrap();
        let expect = GammaFactors::new()
            .times_int(4)
            .gamma(lf(0, 0, 2))
            .gamma(lf(0, 0, 2))
            .over_gamma(lf(0, 0, 1))
            .over_gamma(lf(0, 0, 1))
            .build();
        assert_eq!(t, expect);
    }

    #[test]
    fn moment_consistency_small() {
        for n in 1..=3 {
            for nu in enumerate_partitions(3, n) {
                assert!(moment_consistency(&nu, n).unwrap().passed(), "n={n} {nu}");
            }
        }
    }

    #[test]
    fn pairing_n1() {
        let e = Engine::symbolic();
        let one = SymmetricPolynomial::one(1);
        assert_eq!(e.w_pairing(&one, &one).unwrap(), gr("-2"));
        let y1 = e.bessel(&p(&[1]), 1).unwrap();
        assert!(e.w_pairing(&y1.monomial_form, &one).unwrap().is_zero());
        assert_eq!(
            e.w_pairing(&y1.monomial_form, &y1.monomial_form).unwrap(),
            gr("8/(a^3+a^2)")
        );
    }

    #[test]
    fn normfactor_examples() {
        assert_eq!(normfactor_rhs(&p(&[1]), 1).unwrap(), pr("8/(a^3+a^2)"));
        assert_eq!(normfactor_rhs(&p(&[]), 1).unwrap(), pr("-2"));
        assert_eq!(normfactor_rhs(&p(&[]), 2).unwrap(), pr("4"));
    }

    #[test]
    fn theorem_n1() {
        let reps = Engine::symbolic().verify_theorem(1, 3).unwrap();
        assert!(reps.iter().all(|r| r.passed()), "{reps:#?}");
    }

    #[test]
    fn theorem_n2_small() {
        let e = Engine::symbolic();
        let reps = e.verify_theorem(2, 2).unwrap();
        assert!(reps.iter().all(|r| r.passed()), "{reps:#?}");
        let k0 = e.norm_ratio(&p(&[]), 2).unwrap();
        let expect = GammaFactors::new()
            .gamma(lf(0, 0, 2))
            .gamma(lf(0, 0, 2))
            .over_gamma(lf(0, 0, 1))
            .over_gamma(lf(0, 0, 1))
            .build();
        assert_eq!(k0, expect);
    }

    #[test]
    fn f2_examples() {
        let f = f2_closed(&p(&[2]), 1).unwrap();
        let expect = GammaFactors::new()
            .two_to(lf(1, 1, 0))
            .gamma(lf(-1, -1, 0))
            .build();
        assert_eq!(f, expect);
    }

    #[test]
    fn integral_equality_n1_holds_n2_off_by_k0() {
        for m in 0..=3 {
            assert!(integral_equality_check(&p(&[m]), 1).unwrap().passed());
        }
        let d = integral_equality_discrepancy(&p(&[1]), 2).unwrap();
        let k0 = Engine::symbolic().norm_ratio(&p(&[]), 2).unwrap();
        assert_eq!(d, k0);
        assert!(!integral_equality_check(&p(&[1]), 2).unwrap().passed());
    }

    #[test]
    fn kadell_and_laguerre() {
        let k = kadell_closed(&p(&[]), 1, &lf(1, 0, 0), &lf(1, 0, 0)).unwrap();
        assert_eq!(k, GammaProduct::one());
        let l = laguerre_closed(&p(&[]), 1, &lf(1, 0, 0)).unwrap();
        assert_eq!(l, GammaProduct::one());
        let l2 = laguerre_closed(&p(&[]), 2, &lf(2, 0, 0)).unwrap();
        assert_eq!(
            l2.eval_exact(&crate::rat(0), &crate::rat(1)).unwrap(),
            crate::rat(2)
        );
    }

    #[test]
    fn bridge_small() {
        let e = Engine::symbolic();
        for n in 1..=2 {
            for nu in enumerate_partitions(3, n) {
                for big_n in nu.part(1)..=nu.part(1) + 1 {
                    assert!(
                        f2_laguerre_bridge(e, &nu, n, big_n).unwrap(),
                        "n={n} {nu} N={big_n}"
                    );
                }
            }
        }
    }

    #[test]
    fn moment_table() {
        let t = MomentTable::build(3, 3).unwrap();
        t.check_factorisation().unwrap();
        assert_eq!(t.entries.len(), 7);
    }
}
