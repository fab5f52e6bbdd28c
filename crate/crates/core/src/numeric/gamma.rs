//! Lanczos approximation of Γ on the complex plane.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const G: f64 = 7.0;
const COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// `ln Γ(z)` for `Re z ≥ 1/2`.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(COEF[0], 0.0);
    for (i, c) in COEF.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// A branch of `ln Γ(z)`; `exp` of it is `Γ(z)`.
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::GammaPole(format!("{z}")));
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_right(z));
    }
    // Γ(z)Γ(1-z) = π / sin(πz)
    let s = (PI * z).sin();
    if s.norm() == 0.0 {
        return Err(Error::GammaPole(format!("{z}")));
    }
    Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_right(1.0 - z))
}

/// Γ(z) for complex `z`, with reflection for `Re z < 1/2`.
pub fn gamma_eval(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::GammaPole(format!("{z}")));
    }
    if z.re >= 0.5 {
        // exact factorials for small positive integers
        if z.im == 0.0 && z.re == z.re.round() && z.re <= 171.0 {
            let n = z.re as u32;
            return Ok(Complex64::new((1..n).map(f64::from).product(), 0.0));
        }
        return Ok(ln_gamma_right(z).exp());
    }
    let s = (PI * z).sin();
    Ok(PI / (s * gamma_eval(1.0 - z)?))
}

/// `ln |Γ(x)|` for real `x`.
pub fn ln_gamma_abs(x: f64) -> Result<f64> {
    Ok(ln_gamma_complex(Complex64::new(x, 0.0))?.re)
}
