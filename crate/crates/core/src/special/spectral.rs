use crate::characters::q_factor;
use crate::cone::{ConeModel, ConeStructure, ParityVector};
use crate::error::{Error, Result};
use crate::special::gamma::ln_gamma;
use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Component sum |α| (never the modulus).
pub fn component_sum(alpha: &[Complex64]) -> Complex64 {
    alpha.iter().sum()
}

/// Γ_Ω(α) = (2π)^{(n−r)/2} Γ(α − p/2).
pub fn gindikin_gamma(structure: &ConeStructure, alpha: &[Complex64]) -> Result<Complex64> {
    ln_gindikin_gamma(structure, alpha).map(|l| l.exp())
}

pub fn ln_gindikin_gamma(structure: &ConeStructure, alpha: &[Complex64]) -> Result<Complex64> {
    gindikin_with(&structure.p_f64(), structure.ambient_dim - structure.rank, alpha)
}

/// Same product with q in place of p, for the dual cone.
pub fn ln_gindikin_gamma_dual(structure: &ConeStructure, alpha: &[Complex64]) -> Result<Complex64> {
    gindikin_with(&structure.q_f64(), structure.ambient_dim - structure.rank, alpha)
}

fn gindikin_with(shift: &[f64], off_dim: usize, alpha: &[Complex64]) -> Result<Complex64> {
    if alpha.len() != shift.len() {
        return Err(Error::Dimension { expected: shift.len(), got: alpha.len() });
    }
    let mut acc = c(0.5 * off_dim as f64 * (2.0 * PI).ln());
    for (a, p) in alpha.iter().zip(shift) {
        acc += ln_gamma(a - 0.5 * p)?;
    }
    Ok(acc)
}

/// Diagonal of Λ(α): entry a is π^{|α|/2} / Γ((α + a)/2), in the fixed order on A.
pub fn lambda_matrix(alpha: &[Complex64]) -> Result<Vec<Complex64>> {
    let r = alpha.len();
    let half_sum = component_sum(alpha) * 0.5 * PI.ln();
    ParityVector::all(r)
        .map(|a| {
            let mut acc = half_sum;
            for j in 0..r {
                let arg = (alpha[j] + a.get(j) as f64) * 0.5;
                acc -= ln_gamma(arg).map_err(|_| Error::Pole(format!("Λ entry a = {}", a.label())))?;
            }
            Ok(acc.exp())
        })
        .collect()
}

/// Both sides of Γ(z)cos(π(z−a)/2) = (2^z √π / 2) Γ((z+a)/2) / Γ((1−z+a)/2).
pub fn reflection_duplication(z: Complex64, a: u8) -> Result<(Complex64, Complex64)> {
    let af = a as f64;
    let lhs = ln_gamma(z)?.exp() * ((z - af) * (PI / 2.0)).cos();
    let ln_rhs = z * 2f64.ln() + 0.5 * PI.ln() - 2f64.ln() + ln_gamma((z + af) * 0.5)? - ln_gamma((1.0 - z + af) * 0.5)?;
    Ok((lhs, ln_rhs.exp()))
}

/// A point s together with w = sσ − p/2 and v = τ(s)σ* − q/2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub s: Vec<Complex64>,
    pub w: Vec<Complex64>,
    pub v: Vec<Complex64>,
    pub tau: Vec<Complex64>,
}

impl SpectralPoint {
    pub fn new(cone: &ConeModel, s: &[Complex64]) -> Result<Self> {
        if s.len() != cone.rank() {
            return Err(Error::Dimension { expected: cone.rank(), got: s.len() });
        }
        let p = cone.structure.p_f64();
        let q = cone.structure.q_f64();
        let w: Vec<Complex64> = cone.sigma.row_mul(s).iter().zip(&p).map(|(x, p)| x - 0.5 * p).collect();
        let tau = tau_transform(cone, s, Direction::PrimalToDual)?;
        let v = cone.sigma_star.row_mul(&tau).iter().zip(&q).map(|(x, q)| x - 0.5 * q).collect();
        Ok(SpectralPoint { s: s.to_vec(), w, v, tau })
    }

    /// Spectral point whose w = sσ − p/2 is prescribed.
    pub fn from_w(cone: &ConeModel, w: &[Complex64]) -> Result<Self> {
        let p = cone.structure.p_f64();
        let shifted: Vec<Complex64> = w.iter().zip(&p).map(|(x, p)| x + 0.5 * p).collect();
        let inv = cone.sigma.inverse()?;
        Self::new(cone, &inv.row_mul(&shifted))
    }
}

/// Both sides of (Γ(w)/(2π)^{|w|}) Q_a(w) = (π^{r/2−|w|}/2^r) Γ((w+a)/2)/Γ((v+a)/2).
pub fn half_gamma_ratio(point: &SpectralPoint, a: ParityVector) -> Result<(Complex64, Complex64)> {
    let r = point.w.len();
    let wsum = component_sum(&point.w);
    let mut ln_lhs = -wsum * (2.0 * PI).ln();
    for &wj in &point.w {
        ln_lhs += ln_gamma(wj)?;
    }
    let lhs = ln_lhs.exp() * q_factor(a, &point.w);
    let mut ln_rhs = (0.5 * r as f64 - wsum) * PI.ln() - r as f64 * 2f64.ln();
    for j in 0..r {
        let af = a.get(j) as f64;
        ln_rhs += ln_gamma((point.w[j] + af) * 0.5)? - ln_gamma((point.v[j] + af) * 0.5)?;
    }
    Ok((lhs, ln_rhs.exp()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    PrimalToDual,
    DualToPrimal,
}

/// (d − sσ)σ*^{-1}, or (d − sσ*)σ^{-1} in the reverse direction.
pub fn tau_transform(cone: &ConeModel, s: &[Complex64], direction: Direction) -> Result<Vec<Complex64>> {
    let (fwd, back) = match direction {
        Direction::PrimalToDual => (&cone.sigma, &cone.sigma_star),
        Direction::DualToPrimal => (&cone.sigma_star, &cone.sigma),
    };
    let d = cone.structure.d_f64();
    let ss = fwd.row_mul(s);
    let diff: Vec<Complex64> = d.iter().zip(&ss).map(|(d, x)| c(*d) - x).collect();
    Ok(back.inverse()?.row_mul(&diff))
}

/// τ over the rationals.
pub fn tau_transform_q(cone: &ConeModel, s: &[Ratio<i64>], direction: Direction) -> Result<Vec<Ratio<i64>>> {
    let (fwd, back) = match direction {
        Direction::PrimalToDual => (&cone.sigma, &cone.sigma_star),
        Direction::DualToPrimal => (&cone.sigma_star, &cone.sigma),
    };
    let ss = fwd.row_mul_q(s);
    let diff: Vec<Ratio<i64>> = cone.structure.d.iter().zip(&ss).map(|(d, x)| d - x).collect();
    Ok(back.inverse()?.row_mul_q(&diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::load_catalog_cone;

    fn cv(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| c(x)).collect()
    }

    #[test]
    fn gindikin_examples() {
        let o = load_catalog_cone("orthant_1").unwrap();
        let g = gindikin_gamma(&o.structure, &cv(&[4.0])).unwrap();
        assert!((g - c(6.0)).norm() < 1e-12);
        let q = load_catalog_cone("rank3_quat").unwrap();
        let g = gindikin_gamma(&q.structure, &cv(&[5.0, 3.0, 3.0])).unwrap();
        let want = 24.0 * (2.0 * PI).powi(4);
        assert!((g.re - want).abs() < 1e-12 * want);
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_matrix(&cv(&[1.0])).unwrap();
        assert!((l[0] - c(1.0)).norm() < 1e-14);
        assert!((l[1] - c(PI.sqrt())).norm() < 1e-14);
        let l = lambda_matrix(&cv(&[0.0, 0.0]));
        assert!(matches!(l, Err(Error::Pole(_))));
        let l = lambda_matrix(&cv(&[1e-3, 1e-3])).unwrap();
        assert!((l[3] - c(1.0 / PI)).norm() < 1e-2);
    }

    #[test]
    fn reflection_duplication_examples() {
        let (l, r) = reflection_duplication(c(1.0), 1).unwrap();
        assert!((l - c(1.0)).norm() < 1e-14 && (r - c(1.0)).norm() < 1e-14);
        let (l, r) = reflection_duplication(c(0.5), 0).unwrap();
        let want = (PI / 2.0).sqrt();
        assert!((l - c(want)).norm() < 1e-14 && (r - c(want)).norm() < 1e-14);
    }

    #[test]
    fn tau_examples() {
        let o = load_catalog_cone("orthant_1").unwrap();
        let t = tau_transform(&o, &cv(&[0.3]), Direction::PrimalToDual).unwrap();
        assert!((t[0] - c(0.7)).norm() < 1e-15);
        let l = load_catalog_cone("lorentz_4").unwrap();
        let t = tau_transform(&l, &cv(&[0.4, 2.5]), Direction::PrimalToDual).unwrap();
        assert!((t[0] - c(3.0 - 0.4 - 2.5)).norm() < 1e-14);
        assert!((t[1] - c(0.4)).norm() < 1e-14);
    }

    #[test]
    fn w_plus_v_is_one() {
        let q = load_catalog_cone("rank3_quat").unwrap();
        let s: Vec<Ratio<i64>> = vec![Ratio::new(-9, 2), Ratio::new(27, 10), Ratio::new(13, 5)];
        let tau = tau_transform_q(&q, &s, Direction::PrimalToDual).unwrap();
        let w: Vec<Ratio<i64>> = q.sigma.row_mul_q(&s).iter().zip(&q.structure.p).map(|(x, p)| x - Ratio::new(*p, 2)).collect();
        let v: Vec<Ratio<i64>> =
            q.sigma_star.row_mul_q(&tau).iter().zip(&q.structure.q).map(|(x, q)| x - Ratio::new(*q, 2)).collect();
        for j in 0..3 {
            assert_eq!(w[j] + v[j], Ratio::from(1));
        }
        let back = tau_transform_q(&q, &tau, Direction::DualToPrimal).unwrap();
        assert_eq!(back, s);
    }
}
