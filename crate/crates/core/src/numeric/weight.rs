//! Floating evaluation of the weight series `Σ_λ c_λ P_λ(-2/x)`.

use super::validate::QuadratureConfig;
use crate::engine::{Engine, Params};
use crate::exact::Rational;
use crate::ortho::weight_coefficient;
use crate::partition::partitions_of;
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

/// Consecutive growing shells tolerated after burn-in.
const MAX_GROWING_SHELLS: usize = 3;
/// Shells evaluated beyond the configured truncation before giving up.
const EXTRA_SHELLS: u32 = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    /// Highest weight included.
    pub truncation: u32,
    /// Last shell relative to the running sum.
    pub tail: f64,
}

/// Lazily extended table of shells `Σ_{|λ|=w} c_λ P_λ` in the monomial basis.
pub struct WeightSeriesEvaluator {
    n: usize,
    a: Complex64,
    k: Complex64,
    jacks: Engine,
    shells: Vec<Vec<(Vec<u32>, Complex64)>>,
}

impl WeightSeriesEvaluator {
    pub fn new(n: usize, a: &Rational, k: &Rational) -> Self {
        let f = |r: &Rational| Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0);
        WeightSeriesEvaluator {
            n,
            a: f(a),
            k: f(k),
            jacks: Engine::new(Params::new(None, Some(k.clone()))),
            shells: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn shell(&mut self, w: u32) -> Result<&[(Vec<u32>, Complex64)]> {
        while self.shells.len() <= w as usize {
            let weight = self.shells.len() as u32;
            let mut terms: std::collections::BTreeMap<Vec<u32>, Complex64> = Default::default();
            for lambda in partitions_of(weight, self.n) {
                let c = weight_coefficient(&lambda, self.n)?.eval_complex(self.a, self.k)?;
                let p = self
                    .jacks
                    .jack(&lambda, self.n)?
                    .to_rational()?
                    .expand_to_exponents();
                for (e, u) in p.terms() {
                    *terms.entry(e.clone()).or_insert_with(Complex64::zero) +=
                        c * u.to_f64().unwrap_or(f64::NAN);
                }
            }
            self.shells.push(terms.into_iter().collect());
        }
        Ok(&self.shells[w as usize])
    }

    fn shell_at(&mut self, w: u32, y: &[Complex64]) -> Result<Complex64> {
        Ok(self
            .shell(w)?
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(y)
                    .fold(*c, |acc, (&p, yi)| acc * yi.powi(p as i32))
            })
            .sum())
    }

    fn arguments(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.n {
            return Err(Error::Precondition(format!(
                "expected {} coordinates, got {}",
                self.n,
                x.len()
            )));
        }
        if x.iter().any(|z| z.norm() < 1e-12) {
            return Err(Error::Precondition(
                "evaluation point too close to 0".into(),
            ));
        }
        Ok(x.iter().map(|z| -2.0 / z).collect())
    }

    /// The series cut at a fixed weight.
    pub fn eval_truncated(&mut self, x: &[Complex64], truncation: u32) -> Result<SeriesValue> {
        let y = self.arguments(x)?;
        let mut sum = Complex64::zero();
        let mut last = Complex64::zero();
        for w in 0..=truncation {
            last = self.shell_at(w, &y)?;
            sum += last;
        }
        Ok(SeriesValue {
            value: sum,
            truncation,
            tail: last.norm() / sum.norm(),
        })
    }

    /// Adds shells until two consecutive ones fall below `tolerance/10` of
    /// the running sum, starting the test at `cfg.truncation_weight`.
    pub fn eval(&mut self, x: &[Complex64], cfg: &QuadratureConfig) -> Result<SeriesValue> {
        let y = self.arguments(x)?;
        let cap = cfg.truncation_weight + EXTRA_SHELLS;
        let threshold = cfg.tolerance / 10.0;
        let mut sum = Complex64::zero();
        let mut prev = f64::INFINITY;
        let mut small = 0;
        let mut growing = 0;
        for w in 0..=cap {
            let s = self.shell_at(w, &y)?;
            sum += s;
            let mag = s.norm();
            if w < cfg.truncation_weight {
                prev = mag;
                continue;
            }
            let rel = mag / sum.norm();
            if rel < threshold {
                small += 1;
                if small == 2 {
                    return Ok(SeriesValue {
                        value: sum,
                        truncation: w,
                        tail: rel,
                    });
                }
            } else {
                small = 0;
            }
            if mag >= prev && rel >= threshold {
                growing += 1;
                if growing >= MAX_GROWING_SHELLS {
                    return Err(Error::NonConvergence(format!(
                        "weight shells stopped decreasing at weight {w}"
                    )));
                }
            } else {
                growing = 0;
            }
            prev = mag;
        }
        Err(Error::NonConvergence(format!(
            "tail still above {threshold:e} at weight {cap}"
        )))
    }
}

/// The bare weight series at `x`, without the `(2πi)^n n!` normalisation.
pub fn eval_weight_series(
    x: &[Complex64],
    a: &Rational,
    k: &Rational,
    cfg: &QuadratureConfig,
) -> Result<SeriesValue> {
    WeightSeriesEvaluator::new(x.len(), a, k).eval(x, cfg)
}
