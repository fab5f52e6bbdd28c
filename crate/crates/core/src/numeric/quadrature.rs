//! Real-line quadrature rules.

use super::gamma::ln_gamma_abs;
use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel with its embedded 7-point Gauss estimate.
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evals: u64,
}

/// Adaptive Gauss–Kronrod 7/15 on `[a, b]` with global bisection of the
/// worst panel.
pub fn adaptive_gk(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<QuadResult> {
    let mut panels = vec![{
        let (v, e) = gk15(&f, a, b);
        (a, b, v, e)
    }];
    let mut evals = 15u64;
    for _ in 0..4000 {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let err: f64 = panels.iter().map(|p| p.3).sum();
        if !total.is_finite() {
            return Err(Error::NonConvergence("integrand not finite".into()));
        }
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(QuadResult {
                value: total,
                error: err,
                evals,
            });
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("nonempty");
        let (pa, pb, _, _) = panels.swap_remove(idx);
        let m = 0.5 * (pa + pb);
        let (v1, e1) = gk15(&f, pa, m);
        let (v2, e2) = gk15(&f, m, pb);
        evals += 30;
        panels.push((pa, m, v1, e1));
        panels.push((m, pb, v2, e2));
    }
    let total: f64 = panels.iter().map(|p| p.2).sum();
    let err: f64 = panels.iter().map(|p| p.3).sum();
    Err(Error::NonConvergence(format!(
        "adaptive quadrature stalled at {total:e} with error {err:e}"
    )))
}

/// Nodes and weights of the `m`-point rule for `∫_0^∞ g(y) y^α e^{-y} dy`.
pub fn gauss_laguerre(m: usize, alpha: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if alpha <= -1.0 {
        return Err(Error::Precondition(format!(
            "Laguerre exponent {alpha} <= -1"
        )));
    }
    let mf = m as f64;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let mut z = 0.0f64;
    let ln_norm = ln_gamma_abs(alpha + mf)? - ln_gamma_abs(mf)?;
    for i in 0..m {
        // standard asymptotic starting values
        z = match i {
            0 => (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * mf + 1.8 * alpha),
            1 => z + (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * mf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai))
                    * (z - nodes[i - 2])
                    / (1.0 + 0.3 * alpha)
            }
        };
        let mut converged = false;
        let mut pp = 0.0;
        let mut p2 = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            p2 = 0.0;
            for j in 1..=m {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf - 1.0 + alpha - z) * p2 - (jf - 1.0 + alpha) * p3) / jf;
            }
            pp = (mf * p1 - (mf + alpha) * p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            if converged {
                break;
            }
            // one polishing step after the update falls to rounding level
            converged = (z - z1).abs() <= 1e-14 * z.abs();
        }
        if !converged {
            return Err(Error::NonConvergence(format!("Laguerre node {i} of {m}")));
        }
        nodes.push(z);
        weights.push(-(ln_norm.exp()) / (pp * mf * p2));
    }
    Ok((nodes, weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gk_beta_integral() {
        // ∫_0^1 y^{2.5}(1-y)^{1.5} dy = Γ(3.5)Γ(2.5)/Γ(6)
        let r = adaptive_gk(|y| y.powf(2.5) * (1.0 - y).powf(1.5), 0.0, 1.0, 1e-13, 0.0).unwrap();
        let exact = (ln_gamma_abs(3.5).unwrap() + ln_gamma_abs(2.5).unwrap()
            - ln_gamma_abs(6.0).unwrap())
        .exp();
        assert!((r.value - exact).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn laguerre_moments() {
        let (x, w) = gauss_laguerre(20, 1.5).unwrap();
        // ∫ y^3 y^{1.5} e^{-y} = Γ(5.5)
        let v: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(3)).sum();
        let exact = ln_gamma_abs(5.5).unwrap().exp();
        assert!((v / exact - 1.0).abs() < 1e-13);
        let (x0, w0) = gauss_laguerre(8, 0.0).unwrap();
        let s: f64 = x0.iter().zip(&w0).map(|(x, w)| w * x * x).sum();
        assert!((s - 2.0).abs() < 1e-13);
    }
}
