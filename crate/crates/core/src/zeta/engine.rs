//! Orbit integrals Z_ε(f; s) and Z*_δ(f; s) for Hermite–Gaussian test functions.

use crate::cone::{parity_times, ConeModel, ParityVector, Realization, Side, SignVector};
use crate::error::{Error, Result};
use crate::zeta::fibered::{dual_star_term, orthant_term, primal_star_term, Route};
use crate::zeta::quadrature::QuadratureSpec;
use crate::zeta::test_function::TestFunction;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Highest refinement level tried before giving up.
pub const MAX_LEVEL: u32 = 4;

/// All 2^r orbit integrals on one side, in the fixed sign order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaVector {
    pub values: Vec<Complex64>,
    pub side: Side,
    pub s: Vec<Complex64>,
    /// Gindikin-domain guard Re sσ > p/2 (primal) or Re sσ* > q/2 (dual).
    pub convergence_ok: bool,
    /// Whether every component lies in Re s > dσ^{-1} (dσ*^{-1} on the dual side).
    pub absolute_region: bool,
    /// Largest change of a component between the last two refinement levels.
    pub refinement_delta: f64,
    /// Double-exponential level that met the tolerance.
    pub level: u32,
    /// Orbits whose outer integral needed the finite-part continuation.
    pub continued_orbits: Vec<usize>,
}

/// Strict Gindikin-domain inequalities; the error names the first violated component.
pub fn check_guard(cone: &ConeModel, s: &[Complex64], side: Side) -> Result<()> {
    if s.len() != cone.rank() {
        return Err(Error::Dimension { expected: cone.rank(), got: s.len() });
    }
    let (shift, name, tag) = match side {
        Side::Primal => (cone.structure.p_f64(), "σ", "p"),
        Side::Dual => (cone.structure.q_f64(), "σ*", "q"),
    };
    let a = cone.multiplier(side).row_mul(s);
    for (j, (x, h)) in a.iter().zip(&shift).enumerate() {
        if x.re - 0.5 * h <= 0.0 {
            return Err(Error::Guard(format!(
                "Re (s{name})_{} = {} must exceed {tag}_{}/2 = {}",
                j + 1,
                x.re,
                j + 1,
                0.5 * h
            )));
        }
    }
    Ok(())
}

fn in_absolute_region(cone: &ConeModel, s: &[Complex64], side: Side) -> bool {
    cone.measure_exponents(side).iter().zip(s).all(|(m, x)| x.re > *m)
}

fn orbit_value(
    cone: &ConeModel,
    eps: SignVector,
    f: &TestFunction,
    s: &[Complex64],
    side: Side,
    level: u32,
) -> Result<(Complex64, bool)> {
    let mut acc = Vec::with_capacity(f.terms.len());
    let mut continued = false;
    for (degrees, &coef) in &f.terms {
        if coef == Complex64::new(0.0, 0.0) {
            continue;
        }
        let v = match (&cone.realization, side) {
            (Realization::Orthant, _) => orthant_term(eps, s, degrees)?,
            (Realization::Star { .. }, Side::Primal) => {
                let (v, route) = primal_star_term(cone, eps, s, degrees, level)?;
                continued |= route == Route::Continued;
                v
            }
            (Realization::Star { .. }, Side::Dual) => {
                let (v, route) = dual_star_term(cone, eps, s, degrees, level)?;
                continued |= route == Route::Continued;
                v
            }
        };
        acc.push(coef * v);
    }
    let total = crate::zeta::quadrature::pairwise_sum(&acc);
    Ok((cone.calibration(side) * total, continued))
}

fn check_function(cone: &ConeModel, f: &TestFunction) -> Result<()> {
    if f.dimension != cone.dim() {
        return Err(Error::Dimension { expected: cone.dim(), got: f.dimension });
    }
    Ok(())
}

/// ∫_{Ω_ε} Π|Δ_j(x)|^{s_j} f(x) dμ(x) (or the dual integral over Ω*_ε).
pub fn local_zeta(
    cone: &ConeModel,
    eps: SignVector,
    f: &TestFunction,
    s: &[Complex64],
    quad: &QuadratureSpec,
    side: Side,
) -> Result<Complex64> {
    check_guard(cone, s, side)?;
    check_function(cone, f)?;
    if eps.rank != cone.rank() {
        return Err(Error::Dimension { expected: cone.rank(), got: eps.rank });
    }
    Ok(orbit_value(cone, eps, f, s, side, quad.de_level())?.0)
}

fn vector_at(
    cone: &ConeModel,
    f: &TestFunction,
    s: &[Complex64],
    side: Side,
    level: u32,
) -> Result<Vec<(Complex64, bool)>> {
    SignVector::all(cone.rank())
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|eps| orbit_value(cone, eps, f, s, side, level))
        .collect()
}

/// All orbit integrals in the fixed order. The double-exponential step is halved
/// until two successive levels agree to `target_tol` relative to the largest entry.
pub fn zeta_vector(
    cone: &ConeModel,
    f: &TestFunction,
    s: &[Complex64],
    quad: &QuadratureSpec,
    side: Side,
) -> Result<ZetaVector> {
    check_guard(cone, s, side)?;
    check_function(cone, f)?;
    let needs_quadrature = !matches!(cone.realization, Realization::Orthant);
    let mut level = quad.de_level();
    let mut fine = vector_at(cone, f, s, side, level)?;
    let mut refinement_delta = 0.0;
    if needs_quadrature {
        let mut coarse = vector_at(cone, f, s, side, level.saturating_sub(1))?;
        loop {
            refinement_delta = fine.iter().zip(&coarse).map(|(a, b)| (a.0 - b.0).norm()).fold(0.0, f64::max);
            let scale = fine.iter().map(|v| v.0.norm()).fold(0.0, f64::max).max(1e-300);
            if refinement_delta <= quad.target_tol * scale {
                break;
            }
            if level >= MAX_LEVEL {
                return Err(Error::Quadrature { tol: quad.target_tol, estimate: refinement_delta / scale });
            }
            level += 1;
            coarse = std::mem::replace(&mut fine, vector_at(cone, f, s, side, level)?);
        }
    }
    Ok(ZetaVector {
        values: fine.iter().map(|v| v.0).collect(),
        side,
        s: s.to_vec(),
        convergence_ok: true,
        absolute_region: in_absolute_region(cone, s, side),
        refinement_delta,
        level,
        continued_orbits: fine.iter().enumerate().filter(|(_, v)| v.1).map(|(i, _)| i).collect(),
    })
}

/// Weights κ_ε(bσ) over the orbits ε in the fixed order.
pub fn distribution_weights(cone: &ConeModel, b: ParityVector, side: Side) -> Vec<f64> {
    let bs = parity_times(b, cone.multiplier(side));
    SignVector::all(cone.rank()).into_iter().map(|eps| crate::cone::kappa(eps, bs) as f64).collect()
}

/// Σ_ε κ_ε(bσ) Z_ε, the zeta distribution with characters ω^{s_j, b_j}.
pub fn distribution_from_vector(cone: &ConeModel, b: ParityVector, z: &ZetaVector) -> Complex64 {
    distribution_weights(cone, b, z.side).iter().zip(&z.values).map(|(k, v)| *k * v).sum()
}

/// Zeta distribution evaluated two ways: through the orbit sign weights, and
/// directly by reading the character values from the invariant signs at a point
/// of each orbit. Returns the weighted value and the discrepancy.
pub fn zeta_distribution(
    cone: &ConeModel,
    b: ParityVector,
    f: &TestFunction,
    s: &[Complex64],
    quad: &QuadratureSpec,
    side: Side,
) -> Result<(Complex64, f64)> {
    let z = zeta_vector(cone, f, s, quad, side)?;
    let via_weights = distribution_from_vector(cone, b, &z);
    let direct = distribution_by_signs(cone, b, &z)?;
    let scale = via_weights.norm().max(direct.norm()).max(1e-300);
    Ok((via_weights, (via_weights - direct).norm() / scale))
}

/// Σ_ε χ_b(ε) Z_ε with χ_b read from the signs of Δ_j at a point of each orbit.
pub fn distribution_by_signs(cone: &ConeModel, b: ParityVector, z: &ZetaVector) -> Result<Complex64> {
    let mut direct = Complex64::new(0.0, 0.0);
    for (eps, v) in SignVector::all(cone.rank()).zip(&z.values) {
        let x = cone.chart_point(&orbit_probe(cone, eps), z.side)?;
        let delta = cone.evaluate_invariants(&x, z.side)?;
        let chi: f64 = delta
            .iter()
            .enumerate()
            .map(|(j, d)| if b.get(j) == 1 && *d < 0.0 { -1.0 } else { 1.0 })
            .product();
        direct += chi * v;
    }
    Ok(direct)
}

/// A generic chart point of the orbit ε (nonzero off-diagonal part).
pub fn orbit_probe(cone: &ConeModel, eps: SignVector) -> crate::cone::ChartPoint {
    let r = cone.rank();
    let t = (0..r).map(|j| 0.7 + 0.13 * j as f64).collect();
    let u = (0..cone.dim() - r).map(|i| 0.31 - 0.07 * i as f64).collect();
    crate::cone::ChartPoint { orbit_sign: eps, t, u }
}
