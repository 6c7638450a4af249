//! Complex log-gamma via the Lanczos approximation (g = 7, nine terms).

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
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

/// Distance below which an argument counts as sitting on a pole.
pub const POLE_GUARD: f64 = 1e-8;

/// True when `z` lies within `tol` of a nonpositive integer.
pub fn near_pole(z: Complex64, tol: f64) -> bool {
    z.re < 0.5 && z.im.abs() < tol && (z.re - z.re.round()).abs() < tol
}

fn lanczos_ln(z: Complex64) -> Complex64 {
    // valid for Re z >= 1/2
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// log Γ(z), reduced to the principal branch of the logarithm.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if near_pole(z, POLE_GUARD) {
        return Err(Error::Pole(format!("{z}")));
    }
    let raw = if z.re < 0.5 {
        // Γ(z)Γ(1-z) = π / sin(πz)
        let s = ln_sin_pi(z);
        Complex64::new(PI.ln(), 0.0) - s - lanczos_ln(1.0 - z)
    } else {
        lanczos_ln(z)
    };
    Ok(Complex64::new(raw.re, principal_arg(raw.im)))
}

/// log sin(πz) without overflow for moderately large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    // reduce the real part to [-1/2, 1/2); sin(π(z - k)) = (-1)^k sin(πz)
    let k = z.re.round();
    let zr = Complex64::new(z.re - k, z.im);
    let mut s = (PI * zr).sin().ln();
    if (k as i64).rem_euclid(2) == 1 {
        s += Complex64::new(0.0, PI);
    }
    s
}

fn principal_arg(x: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut y = x.rem_euclid(two_pi);
    if y > PI {
        y -= two_pi;
    }
    y
}

/// Γ(z).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// 1/Γ(z), which is entire; returns exactly zero at the poles of Γ.
pub fn rgamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 && z.im == 0.0 && z.re == z.re.round() {
        return Complex64::new(0.0, 0.0);
    }
    match ln_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// Real Γ for real arguments, reusing the complex path.
pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(Complex64::new(x, 0.0))?.re)
}

/// Π_j Γ(α_j) computed as the exponential of summed log-gammas.
pub fn gamma_vector(alpha: &[Complex64]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &a in alpha {
        acc += ln_gamma(a)?;
    }
    Ok(acc.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn small_values() {
        assert!(ln_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(ln_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let half = ln_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.5 * PI.ln()).abs() < 1e-15);
    }

    #[test]
    fn negative_half_integers() {
        // Γ(-1/2) = -2√π
        let g = gamma(c(-0.5, 0.0)).unwrap();
        assert!((g.re + 2.0 * PI.sqrt()).abs() < 1e-14);
        assert!(g.im.abs() < 1e-14);
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(ln_gamma(c(0.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(ln_gamma(c(-3.0, 0.0)), Err(Error::Pole(_))));
        assert_eq!(rgamma(c(-2.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn gamma_vector_products() {
        let v = gamma_vector(&[c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
        assert!((v - c(PI, 0.0)).norm() < 1e-14);
        let one = gamma_vector(&[c(1.0, 0.0); 3]).unwrap();
        assert!((one - c(1.0, 0.0)).norm() < 1e-14);
    }
}
