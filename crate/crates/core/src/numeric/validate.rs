//! Numeric confirmation of the integral identities: trapezoid quadrature on
//! the torus, Gauss–Kronrod and Gauss–Laguerre on real domains, and seeded
//! Monte Carlo.

use super::dd::{cpow, dd, div, rat_to_dd, roots_of_unity, to_c64, Cdd};
use super::gamma::ln_gamma_abs;
use super::mc;
use super::quadrature::{adaptive_gk, gauss_laguerre};
use crate::engine::{Engine, Params};
use crate::exact::{GammaProduct, LinearForm, Rational};
use crate::ortho::{
    integral_equality_prefactor, kadell_closed, laguerre_closed, weight_coefficient,
};
use crate::partition::{enumerate_partitions, Partition};
use crate::report::{NumericDetail, Status, VerificationReport};
use crate::sympoly::SymmetricPolynomial;
use crate::{Error, Result};
use num_traits::{ToPrimitive, Zero};
use rand_distr::{Beta, Distribution, Gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    /// Lower bound; the contour rule raises it to the Laurent degree span.
    pub points_per_circle: usize,
    /// Burn-in weight for the series and lower bound for contour truncation.
    pub truncation_weight: u32,
    pub tolerance: f64,
    pub seed: u64,
    pub mc_samples: u64,
    pub laguerre_nodes: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            points_per_circle: 32,
            truncation_weight: 8,
            tolerance: 1e-10,
            seed: 42,
            mc_samples: 1 << 20,
            laguerre_nodes: 40,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Precondition("tolerance must be positive".into()));
        }
        if self.points_per_circle == 0 || self.laguerre_nodes == 0 || self.mc_samples == 0 {
            return Err(Error::Precondition(
                "node and sample counts must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn with_tolerance(&self, tolerance: f64) -> Self {
        QuadratureConfig {
            tolerance,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Quad,
    Mc,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quad" => Ok(Mode::Quad),
            "mc" => Ok(Mode::Mc),
            _ => Err(Error::Parse(format!("unknown mode {s:?} (quad|mc)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Quad => "quad",
            Mode::Mc => "mc",
        })
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn positive_integer(k: &Rational) -> Option<u32> {
    if k.is_integer() && k > &Rational::zero() {
        k.to_integer().to_u32()
    } else {
        None
    }
}

fn specialized(
    f: &SymmetricPolynomial,
    a: &Rational,
    k: &Rational,
) -> Result<SymmetricPolynomial<Rational>> {
    f.specialize(Some(a), Some(k))?.to_rational()
}

fn jack_at(lambda: &Partition, n: usize, k: &Rational) -> Result<SymmetricPolynomial<Rational>> {
    let e = Engine::new(Params::new(None, Some(k.clone())));
    e.jack(lambda, n)?.to_rational()
}

/// Terms of a real polynomial with `f64` coefficients, for point evaluation.
struct RealPoly(Vec<(Vec<u32>, f64)>);

impl RealPoly {
    fn new(f: &SymmetricPolynomial<Rational>) -> Self {
        RealPoly(
            f.expand_to_exponents()
                .terms()
                .iter()
                .map(|(e, c)| (e.clone(), to_f64(c)))
                .collect(),
        )
    }

    fn eval(&self, y: &[f64]) -> f64 {
        self.0
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(y)
                    .fold(*c, |acc, (&p, yi)| acc * yi.powi(p as i32))
            })
            .sum()
    }
}

const MC_MAX_DIM: usize = 8;

fn check_mc_dim(n: usize) -> Result<()> {
    if n > MC_MAX_DIM {
        return Err(Error::Precondition(format!(
            "Monte Carlo supports at most {MC_MAX_DIM} variables, got {n}"
        )));
    }
    Ok(())
}

/// Draws one point of `n` independent coordinates into a stack buffer.
fn with_sample<D: Distribution<f64>, R: rand::Rng>(
    dist: &D,
    rng: &mut R,
    n: usize,
    f: impl FnOnce(&[f64]) -> f64,
) -> f64 {
    let mut buf = [0.0; MC_MAX_DIM];
    for v in &mut buf[..n] {
        *v = dist.sample(rng);
    }
    f(&buf[..n])
}

fn abs_vandermonde_pow(y: &[f64], two_k: f64) -> f64 {
    let mut v = 1.0;
    for i in 0..y.len() {
        for j in i + 1..y.len() {
            v *= (y[i] - y[j]).abs();
        }
    }
    if two_k == 2.0 {
        v * v
    } else {
        v.powf(two_k)
    }
}

// ---------------------------------------------------------------------------
// Torus

/// Trapezoid mean of `g` over `p` equally spaced points on the unit circle,
/// starting at angle 0.
pub fn circle_mean(g: impl Fn(Cdd) -> Cdd, p: usize) -> Cdd {
    let roots = roots_of_unity(p);
    let s = roots
        .into_iter()
        .fold(Cdd::new(dd(0.0), dd(0.0)), |acc, z| acc + g(z));
    Cdd::new(div(s.re, dd(p as f64)), div(s.im, dd(p as f64)))
}

/// Exact `c_λ/c_∅` at rational parameters.
fn weight_ratio(lambda: &Partition, n: usize, a: &Rational, k: &Rational) -> Result<Rational> {
    let base = weight_coefficient(&Partition::empty(), n)?;
    weight_coefficient(lambda, n)?.div(&base)?.eval_exact(a, k)
}

/// `∫_{T^n} f W dx` by the `points`-per-circle trapezoid rule applied to the
/// weight series cut at `truncation`. Returns real and imaginary parts.
pub fn torus_integral(
    f: &SymmetricPolynomial<Rational>,
    a: &Rational,
    k: &Rational,
    points: usize,
    truncation: u32,
) -> Result<(f64, f64)> {
    let n = f.n();
    let kappa = if n == 1 {
        0
    } else {
        positive_integer(k).ok_or_else(|| {
            Error::Precondition(format!(
                "torus quadrature needs a positive integer kappa for n >= 2, got {k}"
            ))
        })?
    };
    // S(x) = Σ c_λ/c_∅ (-2)^{|λ|} P_λ(1/x), collected by monomial
    let mut s: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for lambda in enumerate_partitions(truncation, n) {
        let r = weight_ratio(&lambda, n, a, k)?
            * Rational::from_integer((-2i64).pow(lambda.weight()).into());
        for (e, c) in jack_at(&lambda, n, k)?.expand_to_exponents().terms() {
            *s.entry(e.clone()).or_insert_with(Rational::zero) += &r * c;
        }
    }
    let to_terms = |m: &BTreeMap<Vec<u32>, Rational>, sign: i64| -> Vec<(Vec<i64>, Cdd)> {
        m.iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| {
                (
                    e.iter().map(|&x| sign * x as i64).collect(),
                    Cdd::new(rat_to_dd(c), dd(0.0)),
                )
            })
            .collect()
    };
    let s_terms = to_terms(&s, -1);
    let f_terms = to_terms(f.expand_to_exponents().terms(), 1);
    let roots = roots_of_unity(points);
    let pi = points as i64;
    let phase = |e: &[i64], j: &[usize]| -> usize {
        e.iter()
            .zip(j)
            .map(|(x, &y)| x * y as i64)
            .sum::<i64>()
            .rem_euclid(pi) as usize
    };
    let zero = Cdd::new(dd(0.0), dd(0.0));
    let one = Cdd::new(dd(1.0), dd(0.0));
    let sum_at = |terms: &[(Vec<i64>, Cdd)], j: &[usize]| {
        terms
            .iter()
            .fold(zero, |acc, (e, c)| acc + *c * roots[phase(e, j)])
    };
    let inner = points.pow(n as u32 - 1);
    let partial: Vec<Cdd> = (0..points)
        .into_par_iter()
        .map(|j0| {
            let mut acc = zero;
            let mut j = vec![0usize; n];
            for rest in 0..inner {
                j[0] = j0;
                let mut r = rest;
                for slot in j.iter_mut().skip(1) {
                    *slot = r % points;
                    r /= points;
                }
                let mut density = one;
                for i in 0..n {
                    for l in 0..n {
                        if i != l {
                            let d = (j[i] as i64 - j[l] as i64).rem_euclid(pi) as usize;
                            density = density * cpow(one - roots[d], kappa as usize);
                        }
                    }
                }
                if to_c64(&density).norm() == 0.0 {
                    continue;
                }
                let shift = roots[j.iter().sum::<usize>() % points];
                acc = acc + sum_at(&f_terms, &j) * sum_at(&s_terms, &j) * density * shift;
            }
            acc
        })
        .collect();
    let total = partial.into_iter().fold(zero, |a, b| a + b);
    let norm = dd(points as f64).powi(n as i32) * dd(factorial(n));
    let mean = to_c64(&Cdd::new(div(total.re, norm), div(total.im, norm)));
    let base = weight_coefficient(&Partition::empty(), n)?.eval_f64(to_f64(a), to_f64(k))?;
    Ok((mean.re * base, mean.im * base))
}

/// Trapezoid rule at the smallest exact size and again at double points and
/// truncation; disagreement beyond `tolerance·scale` is inconclusive.
fn stable_torus_integral(
    f: &SymmetricPolynomial<Rational>,
    a: &Rational,
    k: &Rational,
    cfg: &QuadratureConfig,
    scale: f64,
) -> Result<(f64, usize)> {
    let n = f.n();
    let deg = f.degree();
    let kappa = positive_integer(k).unwrap_or(0) as usize;
    let t = cfg.truncation_weight.max(deg + n as u32);
    let p = cfg
        .points_per_circle
        .max(t as usize + deg as usize + 2 * kappa * (n - 1) + 2);
    let (v1, im) = torus_integral(f, a, k, p, t)?;
    let (v2, _) = torus_integral(f, a, k, 2 * p, 2 * t)?;
    let tol = cfg.tolerance * scale.abs().max(f64::MIN_POSITIVE);
    if (v1 - v2).abs() > tol || im.abs() > tol {
        return Err(Error::Inconclusive(format!(
            "contour value {v1:e} moved to {v2:e} (imaginary part {im:e}) when doubling points and truncation"
        )));
    }
    Ok((v1, p.pow(n as u32)))
}

/// `∫_{T^n} Y_λ Y_μ W dx` by quadrature, compared with the exact pairing.
pub fn contour_orthogonality_numeric(
    lambda: &Partition,
    mu: &Partition,
    n: usize,
    a: &Rational,
    k: &Rational,
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    let case = format!("contour/n={n}/a={a}/k={k}/{lambda}x{mu}");
    let e = Engine::symbolic();
    let yl = e.bessel(lambda, n)?;
    let ym = e.bessel(mu, n)?;
    let (af, kf) = (to_f64(a), to_f64(k));
    let exact = |f: &SymmetricPolynomial, g: &SymmetricPolynomial| -> Result<f64> {
        let w = e.w_pairing(f, g)?;
        if w.is_zero() {
            Ok(0.0)
        } else {
            w.eval_f64(af, kf)
        }
    };
    let dl = exact(&yl.monomial_form, &yl.monomial_form)?;
    let dm = exact(&ym.monomial_form, &ym.monomial_form)?;
    let reference = exact(&yl.monomial_form, &ym.monomial_form)?;
    let scale = (dl * dm).abs().sqrt();
    let f =
        specialized(&yl.monomial_form, a, k)?.multiply(&specialized(&ym.monomial_form, a, k)?)?;
    let (value, nodes) = match stable_torus_integral(&f, a, k, cfg, scale) {
        Ok(v) => v,
        Err(err @ Error::Inconclusive(_)) => {
            return Ok(VerificationReport::error(
                case,
                "bessel-orthogonality",
                &err,
            ))
        }
        Err(err) => return Err(err),
    };
    let mut d = NumericDetail::compare(value, reference, scale, cfg.tolerance);
    d.nodes = Some(nodes as u64);
    Ok(VerificationReport::numeric(case, "bessel-orthogonality", d))
}

// ---------------------------------------------------------------------------
// Real domains

fn nested_gk(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    dim: usize,
    prefix: &[f64],
    tol: f64,
) -> Result<f64> {
    if prefix.len() == dim {
        return Ok(f(prefix));
    }
    let failure = Mutex::new(None);
    let inner_tol = if prefix.len() + 1 == dim {
        tol
    } else {
        tol / 10.0
    };
    let r = adaptive_gk(
        |y| {
            let mut p = prefix.to_vec();
            p.push(y);
            nested_gk(f, dim, &p, inner_tol).unwrap_or_else(|e| {
                *failure.lock().unwrap() = Some(e);
                0.0
            })
        },
        0.0,
        1.0,
        tol,
        0.0,
    )?;
    match failure.into_inner().unwrap() {
        Some(e) => Err(e),
        None => Ok(r.value),
    }
}

fn ln_beta(a: f64, b: f64) -> Result<f64> {
    Ok(ln_gamma_abs(a)? + ln_gamma_abs(b)? - ln_gamma_abs(a + b)?)
}

fn closed_f64(g: &GammaProduct, k: f64) -> Result<f64> {
    let z = g.ln_eval(
        num_complex::Complex64::new(0.0, 0.0),
        num_complex::Complex64::new(k, 0.0),
    )?;
    Ok(z.exp().re)
}

/// `(1/n!)∫_{[0,1]^n} P_ν ∏ y^{α-1}(1-y)^{β-1} |Δ|^{2κ} dy` against the
/// closed Kadell value.
pub fn kadell_numeric(
    nu: &Partition,
    n: usize,
    alpha: &Rational,
    beta: &Rational,
    k: &Rational,
    cfg: &QuadratureConfig,
    mode: Mode,
) -> Result<VerificationReport> {
    cfg.validate()?;
    nu.check_length(n)?;
    let (af, bf, kf) = (to_f64(alpha), to_f64(beta), to_f64(k));
    if af + nu.part(n) as f64 <= 0.0 || bf <= 0.0 || kf < 0.0 {
        return Err(Error::Precondition(format!(
            "Kadell integral needs alpha > -nu_n, beta > 0, kappa >= 0 (alpha={alpha}, beta={beta}, kappa={k})"
        )));
    }
    let case = format!("kadell/n={n}/{nu}/alpha={alpha}/beta={beta}/k={k}/{mode}");
    let reference = closed_f64(
        &kadell_closed(
            nu,
            n,
            &LinearForm::constant(alpha.clone()),
            &LinearForm::constant(beta.clone()),
        )?,
        kf,
    )?;
    let p = RealPoly::new(&jack_at(nu, n, k)?);
    let nf = factorial(n);
    let detail = match mode {
        Mode::Quad => {
            let f = |y: &[f64]| {
                let w: f64 = y
                    .iter()
                    .map(|&t| t.powf(af - 1.0) * (1.0 - t).powf(bf - 1.0))
                    .product();
                p.eval(y) * w * abs_vandermonde_pow(y, 2.0 * kf)
            };
            let v = nested_gk(&f, n, &[], cfg.tolerance)? / nf;
            NumericDetail::compare(v, reference, 0.0, cfg.tolerance)
        }
        Mode::Mc => {
            check_mc_dim(n)?;
            if af <= 0.0 {
                return Err(Error::Precondition("Beta sampling needs alpha > 0".into()));
            }
            let dist = Beta::new(af, bf).map_err(|e| Error::Precondition(e.to_string()))?;
            let scale = (n as f64 * ln_beta(af, bf)?).exp() / nf;
            let est = mc::integrate(cfg.mc_samples, cfg.seed, |rng| {
                with_sample(&dist, rng, n, |y| {
                    p.eval(y) * abs_vandermonde_pow(y, 2.0 * kf) * scale
                })
            });
            mc_detail(est, reference, cfg)
        }
    };
    Ok(VerificationReport::numeric(case, "kadell", detail))
}

/// Monte Carlo passes when within two standard errors.
fn mc_detail(est: mc::McEstimate, reference: f64, cfg: &QuadratureConfig) -> NumericDetail {
    let mut d = NumericDetail::compare(
        est.mean,
        reference,
        0.0,
        2.0 * est.std_err / reference.abs(),
    );
    d.samples = Some(est.samples);
    d.seed = Some(cfg.seed);
    d.std_err = Some(est.std_err);
    d
}

/// `(1/n!)∫_{ℝ₊ⁿ} P_ν ∏ y^{α-1} e^{-y} |Δ|^{2κ} dy` against the closed
/// value, plus the β → ∞ limit of the rescaled Kadell closed form.
pub fn laguerre_numeric(
    nu: &Partition,
    n: usize,
    alpha: &Rational,
    k: &Rational,
    cfg: &QuadratureConfig,
    mode: Mode,
) -> Result<VerificationReport> {
    cfg.validate()?;
    nu.check_length(n)?;
    let (af, kf) = (to_f64(alpha), to_f64(k));
    for i in 1..=n {
        if af + kf * (n - i) as f64 + nu.part(i) as f64 <= 0.0 {
            return Err(Error::Precondition(format!(
                "Laguerre integral diverges: alpha + kappa(n-{i}) + nu_{i} <= 0"
            )));
        }
    }
    if af <= 0.0 {
        return Err(Error::Precondition(
            "Laguerre quadrature needs alpha > 0".into(),
        ));
    }
    let case = format!("laguerre/n={n}/{nu}/alpha={alpha}/k={k}/{mode}");
    let closed = laguerre_closed(nu, n, &LinearForm::constant(alpha.clone()))?;
    let reference = closed_f64(&closed, kf)?;
    let p = RealPoly::new(&jack_at(nu, n, k)?);
    let nf = factorial(n);
    let detail = match mode {
        Mode::Quad => {
            let (x, w) = gauss_laguerre(cfg.laguerre_nodes, af - 1.0)?;
            let v = tensor_sum(&x, &w, n, |y| p.eval(y) * abs_vandermonde_pow(y, 2.0 * kf)) / nf;
            let mut d = NumericDetail::compare(v, reference, 0.0, cfg.tolerance);
            d.nodes = Some(x.len().pow(n as u32) as u64);
            d
        }
        Mode::Mc => {
            check_mc_dim(n)?;
            let dist = Gamma::new(af, 1.0).map_err(|e| Error::Precondition(e.to_string()))?;
            let scale = (n as f64 * ln_gamma_abs(af)?).exp() / nf;
            let est = mc::integrate(cfg.mc_samples, cfg.seed, |rng| {
                with_sample(&dist, rng, n, |y| {
                    p.eval(y) * abs_vandermonde_pow(y, 2.0 * kf) * scale
                })
            });
            mc_detail(est, reference, cfg)
        }
    };
    let gaps = laguerre_limit_gaps(nu, n, alpha, k)?;
    let limit_ok = gaps.windows(2).all(|w| w[1].1 < w[0].1);
    let note = gaps
        .iter()
        .map(|(b, g)| format!("beta={b:e}: {g:.3e}"))
        .collect::<Vec<_>>()
        .join(", ");
    let mut r = VerificationReport::numeric(case, "laguerre-limit", detail)
        .with_note(format!("limit gaps {note}"));
    if !limit_ok {
        r.status = Status::Fail;
    }
    Ok(r)
}

/// Relative gap between `β^{|ν|+nα+κn(n-1)}·Kadell(β)` and the Laguerre
/// value for β = 10², 10³, 10⁴.
pub fn laguerre_limit_gaps(
    nu: &Partition,
    n: usize,
    alpha: &Rational,
    k: &Rational,
) -> Result<Vec<(f64, f64)>> {
    let kf = to_f64(k);
    let zero = num_complex::Complex64::new(0.0, 0.0);
    let kc = num_complex::Complex64::new(kf, 0.0);
    let al = LinearForm::constant(alpha.clone());
    let lag = laguerre_closed(nu, n, &al)?.ln_eval(zero, kc)?.re;
    let expo = nu.weight() as f64 + n as f64 * to_f64(alpha) + kf * (n * (n - 1)) as f64;
    [1e2, 1e3, 1e4]
        .into_iter()
        .map(|beta: f64| {
            let b = LinearForm::constant(Rational::from_integer((beta as i64).into()));
            let kad = kadell_closed(nu, n, &al, &b)?.ln_eval(zero, kc)?.re;
            Ok((beta, (kad + expo * beta.ln() - lag).exp_m1().abs()))
        })
        .collect()
}

fn tensor_sum(x: &[f64], w: &[f64], n: usize, f: impl Fn(&[f64]) -> f64) -> f64 {
    let m = x.len();
    let mut total = 0.0;
    let mut y = vec![0.0; n];
    for idx in 0..m.pow(n as u32) {
        let mut r = idx;
        let mut wt = 1.0;
        for slot in y.iter_mut().zip(0..n) {
            let i = r % m;
            r /= m;
            *slot.0 = x[i];
            wt *= w[i];
        }
        total += wt * f(&y);
    }
    total
}

/// `∫_{ℝ₊ⁿ} F W_{L²} dx` after `y = 2/x`:
/// `(1/n!)2^{n(a-1)+κn(n-1)} ∫ F(2/y) ∏ y^{-a-2κ(n-1)} e^{-y} |Δ(y)|^{2κ} dy`.
fn l2_integral(
    f: &SymmetricPolynomial<Rational>,
    a: &Rational,
    k: &Rational,
    cfg: &QuadratureConfig,
    mode: Mode,
) -> Result<(f64, Option<mc::McEstimate>)> {
    let n = f.n();
    let (af, kf) = (to_f64(a), to_f64(k));
    let expanded = f.expand_to_exponents();
    let d = expanded
        .terms()
        .keys()
        .flat_map(|e| e.iter().copied())
        .max()
        .unwrap_or(0);
    // F(2/y)∏y^d as a polynomial in y
    let g = RealPoly(
        expanded
            .terms()
            .iter()
            .map(|(e, c)| {
                let w: u32 = e.iter().sum();
                (
                    e.iter().map(|&x| d - x).collect(),
                    to_f64(c) * 2f64.powi(w as i32),
                )
            })
            .collect(),
    );
    let alpha = -af - 2.0 * kf * (n as f64 - 1.0) - d as f64;
    if alpha <= -1.0 {
        return Err(Error::Precondition(format!(
            "weighted L2 integral diverges at a={a} (exponent {alpha} after substitution)"
        )));
    }
    let pre = (n as f64 * (af - 1.0) + kf * (n * (n - 1)) as f64) * std::f64::consts::LN_2;
    let pre = pre.exp() / factorial(n);
    match mode {
        Mode::Quad => {
            let (x, w) = gauss_laguerre(cfg.laguerre_nodes, alpha)?;
            Ok((
                pre * tensor_sum(&x, &w, n, |y| g.eval(y) * abs_vandermonde_pow(y, 2.0 * kf)),
                None,
            ))
        }
        Mode::Mc => {
            check_mc_dim(n)?;
            let dist =
                Gamma::new(alpha + 1.0, 1.0).map_err(|e| Error::Precondition(e.to_string()))?;
            let scale = pre * (n as f64 * ln_gamma_abs(alpha + 1.0)?).exp();
            let est = mc::integrate(cfg.mc_samples, cfg.seed, |rng| {
                with_sample(&dist, rng, n, |y| {
                    g.eval(y) * abs_vandermonde_pow(y, 2.0 * kf) * scale
                })
            });
            Ok((est.mean, Some(est)))
        }
    }
}

/// `∫_{ℝ₊ⁿ} Y_λ Y_μ W_{L²} dx`; off-diagonal values are measured against the
/// geometric mean of the two diagonal integrals.
pub fn l2_orthogonality_numeric(
    lambda: &Partition,
    mu: &Partition,
    n: usize,
    a: &Rational,
    k: &Rational,
    cfg: &QuadratureConfig,
    mode: Mode,
) -> Result<VerificationReport> {
    cfg.validate()?;
    let m = lambda.weight().max(mu.weight()) as i64;
    let window = Rational::from_integer((-2 * m + 1).into())
        - k * Rational::from_integer((2 * (n as i64 - 1)).into());
    if k < &Rational::zero() || a >= &window {
        return Err(Error::Precondition(format!(
            "a={a} outside the window a < {window} where the weighted L2 integrals exist"
        )));
    }
    let case = format!("l2/n={n}/a={a}/k={k}/{lambda}x{mu}/{mode}");
    let e = Engine::symbolic();
    let yl = specialized(&e.bessel(lambda, n)?.monomial_form, a, k)?;
    let ym = specialized(&e.bessel(mu, n)?.monomial_form, a, k)?;
    let (value, est) = l2_integral(&yl.multiply(&ym)?, a, k, cfg, mode)?;
    let (dl, _) = l2_integral(&yl.multiply(&yl)?, a, k, cfg, Mode::Quad)?;
    let (dm, _) = l2_integral(&ym.multiply(&ym)?, a, k, cfg, Mode::Quad)?;
    let scale = (dl * dm).abs().sqrt();
    let reference = if lambda == mu {
        l2_exact(&yl.multiply(&ym)?, a, k)?
    } else {
        0.0
    };
    let mut d = NumericDetail::compare(value, reference, scale, cfg.tolerance);
    if let Some(est) = est {
        d.samples = Some(est.samples);
        d.seed = Some(cfg.seed);
        d.std_err = Some(est.std_err);
    } else {
        d.nodes = Some(cfg.laguerre_nodes.pow(n as u32) as u64);
    }
    Ok(VerificationReport::numeric(case, "l2-orthogonality", d))
}

/// Exact `∫ F W_{L²}` from the closed moments, through the Jack expansion.
fn l2_exact(f: &SymmetricPolynomial<Rational>, a: &Rational, k: &Rational) -> Result<f64> {
    let n = f.n();
    let engine = Engine::new(Params::new(Some(a.clone()), Some(k.clone())));
    let lifted = f.map_coeffs(|c| Ok(crate::exact::ParamRational::from_rational(c.clone())))?;
    let base = crate::ortho::f2_closed(&Partition::empty(), n)?;
    let mut acc = Rational::zero();
    for (nu, c) in engine.to_jack_basis(&lifted)?.coeffs() {
        let r = crate::ortho::f2_closed(nu, n)?
            .div(&base)?
            .eval_exact(a, k)?;
        acc += c.as_constant().ok_or(Error::SymbolicRemains("a"))? * r;
    }
    Ok(to_f64(&acc) * base.eval_f64(to_f64(a), to_f64(k))?)
}

/// Numeric spot check of the moment bridge: the torus moment of `P_ν` by
/// contour quadrature against the printed prefactor times the `W_{L²}`
/// moment by Gauss–Laguerre.
pub fn integral_equality_numeric(
    nu: &Partition,
    n: usize,
    a: &Rational,
    k: &Rational,
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    cfg.validate()?;
    let case = format!("integral-equality-numeric/n={n}/{nu}/a={a}/k={k}");
    let p = jack_at(nu, n, k)?;
    let pre = integral_equality_prefactor(n).eval_f64(to_f64(a), to_f64(k))?;
    let (l2, _) = l2_integral(&p, a, k, cfg, Mode::Quad)?;
    let rhs = pre * l2;
    let (lhs, nodes) = match stable_torus_integral(&p, a, k, cfg, rhs) {
        Ok(v) => v,
        Err(err) => return Ok(VerificationReport::error(case, "integral-equality", &err)),
    };
    let mut d = NumericDetail::compare(lhs, rhs, 0.0, cfg.tolerance);
    d.nodes = Some(nodes as u64);
    let r = VerificationReport::numeric(case, "integral-equality", d);
    Ok(if r.passed() {
        r
    } else {
        r.with_note(format!("lhs/rhs = {:.12}", lhs / rhs))
    })
}
