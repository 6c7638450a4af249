//! Direct quadrature over orbit charts, used for measure calibration and as an
//! independent check of the fibered engine inside the absolutely convergent region.
//!
//! Integration variables are the chart parameters t_1..t_r > 0 and one radius per
//! off-diagonal block; each block u_k ∈ R^{n_k} is integrated radially with surface
//! factor |S^{n_k−1}| ρ^{n_k−1}, which is exact when the integrand depends on u_k only
//! through |u_k|. Every positive axis is mapped by x = exp(sinh(span·y)), y ∈ (−1, 1),
//! and the Jacobian of the chart is evaluated numerically at each node.

use crate::cone::{ChartPoint, ConeModel, Realization, Side, SignVector};
use crate::error::{Error, Result};
use crate::special::{gamma_real, gindikin_gamma, spectral::ln_gindikin_gamma_dual};
use crate::zeta::quadrature::{gauss_legendre, pairwise_sum, QuadratureSpec, Scheme};
use crate::zeta::test_function::TestFunction;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use std::f64::consts::PI;

use crate::report::VerificationReport;

/// Largest tensor grid evaluated before the quadrature request is rejected.
const MAX_NODES: usize = 40_000_000;

/// Truncated tails of every axis are below e^{−TAIL_DEPTH}.
const TAIL_DEPTH: f64 = 25.0;

/// |S^{n−1}| = 2π^{n/2}/Γ(n/2).
fn sphere_area(n: usize) -> Result<f64> {
    Ok(2.0 * PI.powf(n as f64 / 2.0) / gamma_real(n as f64 / 2.0)?)
}

/// Number of integration axes: r chart parameters plus one radius per block.
fn axes(cone: &ConeModel) -> usize {
    cone.rank() + cone.leaves().len()
}

/// Map y ∈ (−1, 1) to (0, ∞) and return (x, dx/dy).
fn positive_axis(y: f64, span: f64) -> (f64, f64) {
    let a = span * y;
    let x = a.sinh().exp();
    (x, x * a.cosh() * span)
}

/// Chart parameters (t, u) from integration variables (t, ρ), with the radial
/// surface factors, or None off the domain.
fn chart_params(cone: &ConeModel, eps: SignVector, params: &[f64]) -> Result<Option<(ChartPoint, f64)>> {
    if params.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Ok(None);
    }
    let r = cone.rank();
    let mut u = vec![0.0; cone.dim() - r];
    let mut radial = 1.0;
    let mut off = 0;
    for (k, &n) in cone.leaves().iter().enumerate() {
        let rho = params[r + k];
        u[off] = rho;
        radial *= sphere_area(n)? * rho.powi(n as i32 - 1);
        off += n;
    }
    Ok(Some((ChartPoint { orbit_sign: eps, t: params[..r].to_vec(), u }, radial)))
}

/// ∫ over the chart of `eps` of h(x) · |J| (in orthonormal coordinates) by the
/// chosen scheme; `h` receives the raw chart point.
///
/// `rates[j]` is the power of t_j in the integrand as t_j → 0; axes with slow decay
/// are lengthened so the truncated tail stays below e^{−25}.
fn integrate<F>(
    cone: &ConeModel,
    eps: SignVector,
    side: Side,
    quad: &QuadratureSpec,
    rates: &[f64],
    h: F,
) -> Result<Complex64>
where
    F: Fn(&[f64]) -> Result<Complex64> + Sync,
{
    let dims = axes(cone);
    let r = cone.rank();
    // a radius of an n-block enters as ρ^n near zero
    let spans: Vec<f64> = (0..dims)
        .map(|i| {
            let rate = if i < r { rates[i] } else { cone.leaves()[i - r] as f64 };
            quad.axis_span.max((TAIL_DEPTH / rate.max(0.05)).asinh())
        })
        .collect();
    let eval = |ys: &[f64]| -> Result<Complex64> {
        let mut params = Vec::with_capacity(dims);
        let mut w = 1.0;
        for (&y, &span) in ys.iter().zip(&spans) {
            let (x, dx) = positive_axis(y, span);
            params.push(x);
            w *= dx;
        }
        let Some((pt, radial)) = chart_params(cone, eps, &params)? else {
            return Ok(Complex64::new(0.0, 0.0));
        };
        let x = cone.chart_point(&pt, side)?;
        let v = h(&x)?;
        if v == Complex64::new(0.0, 0.0) {
            return Ok(v);
        }
        let (_, jac) = cone.orbit_chart(&pt, side)?;
        Ok(v * (w * jac * radial))
    };
    match quad.scheme {
        Scheme::TensorGauss => {
            let n = quad.nodes_per_axis.max(1);
            let total = n.checked_pow(dims as u32).filter(|&t| t <= MAX_NODES).ok_or_else(|| {
                Error::Input(format!("{n} nodes on {dims} axes exceeds the grid limit {MAX_NODES}"))
            })?;
            let (gx, gw) = gauss_legendre(n);
            let vals: Vec<Complex64> = (0..total)
                .into_par_iter()
                .map(|mut idx| {
                    let mut ys = Vec::with_capacity(dims);
                    let mut w = 1.0;
                    for _ in 0..dims {
                        ys.push(gx[idx % n]);
                        w *= gw[idx % n];
                        idx /= n;
                    }
                    eval(&ys).map(|v| v * w)
                })
                .collect::<Result<_>>()?;
            Ok(pairwise_sum(&vals))
        }
        Scheme::MonteCarlo => {
            let mut rng = ChaCha8Rng::seed_from_u64(quad.seed);
            let samples: Vec<Vec<f64>> =
                (0..quad.mc_samples.max(1)).map(|_| (0..dims).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
            let vals: Vec<Complex64> = samples.par_iter().map(|ys| eval(ys)).collect::<Result<_>>()?;
            let vol = 2f64.powi(dims as i32);
            Ok(pairwise_sum(&vals) * (vol / vals.len() as f64))
        }
    }
}

/// ∫_Ω Π Δ_j^{s_j} e^{−⟨x, I_N⟩} dμ with the measure constant taken as 1.
pub fn gindikin_integral(cone: &ConeModel, s: &[Complex64], quad: &QuadratureSpec, side: Side) -> Result<Complex64> {
    let m = cone.measure_exponents(side);
    let identity = SignVector { rank: cone.rank(), index: 0 };
    let r = cone.rank();
    let rates = axis_rates(cone, s, side);
    integrate(cone, identity, side, quad, &rates, |x| {
        let delta = cone.evaluate_invariants(x, side)?;
        let trace: f64 = x[..r].iter().sum();
        let mut ln = Complex64::new(-trace, 0.0);
        for j in 0..r {
            if delta[j] <= 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            ln += (s[j] - m[j]) * delta[j].ln();
        }
        Ok(ln.exp())
    })
}

/// Decay power 2·Re(sσ − p/2)_j of the Gindikin integrand in t_j (σ*, q on the dual side).
fn axis_rates(cone: &ConeModel, s: &[Complex64], side: Side) -> Vec<f64> {
    let shift = match side {
        Side::Primal => cone.structure.p_f64(),
        Side::Dual => cone.structure.q_f64(),
    };
    cone.multiplier(side).row_mul(s).iter().zip(&shift).map(|(a, h)| 2.0 * (a.re - 0.5 * h)).collect()
}

/// Closed form of the Gindikin integral: Γ_Ω(sσ) or its dual analogue Γ_Ω*(sσ*).
pub fn gindikin_closed_form(cone: &ConeModel, s: &[Complex64], side: Side) -> Result<Complex64> {
    let a = cone.multiplier(side).row_mul(s);
    match side {
        Side::Primal => gindikin_gamma(&cone.structure, &a),
        Side::Dual => ln_gindikin_gamma_dual(&cone.structure, &a).map(|l| l.exp()),
    }
}

/// Orbit integral Z_ε(f; s) over the chart, for f radial in every off-diagonal block.
pub fn chart_zeta(
    cone: &ConeModel,
    eps: SignVector,
    f: &TestFunction,
    s: &[Complex64],
    quad: &QuadratureSpec,
    side: Side,
) -> Result<Complex64> {
    let r = cone.rank();
    if f.terms.keys().any(|k| k[r..].iter().any(|&d| d != 0)) && !matches!(cone.realization, Realization::Orthant) {
        return Err(Error::Unsupported("chart quadrature needs degree zero in off-diagonal coordinates".into()));
    }
    chart_integral(cone, eps, s, quad, side, |x| Ok(f.evaluate(&cone.to_orthonormal(x))))
}

/// ∫_{Ω_ε} Π|Δ_j|^{s_j} g(x) dμ(x) over the chart. `g` takes raw coordinates and
/// must depend on each off-diagonal block only through its norm.
pub fn chart_integral<G>(
    cone: &ConeModel,
    eps: SignVector,
    s: &[Complex64],
    quad: &QuadratureSpec,
    side: Side,
    g: G,
) -> Result<Complex64>
where
    G: Fn(&[f64]) -> Result<Complex64> + Sync,
{
    let r = cone.rank();
    let m = cone.measure_exponents(side);
    let c = cone.calibration(side);
    let rates = axis_rates(cone, s, side);
    let v = integrate(cone, eps, side, quad, &rates, |x| {
        let delta = cone.evaluate_invariants(x, side)?;
        let mut ln = Complex64::new(0.0, 0.0);
        for j in 0..r {
            if delta[j] == 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            ln += (s[j] - m[j]) * delta[j].abs().ln();
        }
        Ok(ln.exp() * g(x)?)
    })?;
    Ok(c * v)
}

/// Calibrates c_primal and c_dual so the Gindikin integral at s0 matches its closed
/// form, then checks every validation point on both sides.
pub fn calibrate_measure(
    cone: &ConeModel,
    s0: &[Complex64],
    validation: &[Vec<Complex64>],
    quad: &QuadratureSpec,
) -> Result<(ConeModel, VerificationReport)> {
    let start = std::time::Instant::now();
    let mut out = cone.clone();
    let mut constants = Vec::new();
    for side in [Side::Primal, Side::Dual] {
        let guard_point = if side == Side::Primal { s0.to_vec() } else { dual_point(cone, s0)? };
        crate::zeta::engine::check_guard(cone, &guard_point, side)?;
        let numeric = gindikin_integral(cone, &guard_point, quad, side)?;
        let exact = gindikin_closed_form(cone, &guard_point, side)?;
        let c = (exact / numeric).re;
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::Quadrature { tol: quad.target_tol, estimate: f64::INFINITY });
        }
        constants.push(c);
        match side {
            Side::Primal => out.c_primal = Some(c),
            Side::Dual => out.c_dual = Some(c),
        }
    }
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for s in validation {
        for side in [Side::Primal, Side::Dual] {
            let point = if side == Side::Primal { s.clone() } else { dual_point(cone, s)? };
            crate::zeta::engine::check_guard(cone, &point, side)?;
            lhs.push(out.calibration(side) * gindikin_integral(cone, &point, quad, side)?);
            rhs.push(gindikin_closed_form(cone, &point, side)?);
        }
    }
    let pairs = |v: &[Complex64]| crate::report::pairs(v);
    let mut report = VerificationReport::compare(
        "gindikin",
        &cone.name,
        json!({
            "s0": pairs(s0),
            "validation": validation.iter().map(|s| pairs(s)).collect::<Vec<_>>(),
            "quadrature": quad,
            "seed": quad.seed,
        }),
        &lhs,
        &rhs,
        quad.target_tol,
    )
    .with_metadata(json!({
        "c_primal": constants[0],
        "c_dual": constants[1],
        "order": "validation points in turn, primal then dual",
    }));
    report.runtime_ms = start.elapsed().as_millis() as u64;
    Ok((out, report))
}

/// The dual calibration uses the point with the same Gindikin argument on the dual
/// side shifted to q: sσ* = s0σ − p/2 + q/2.
fn dual_point(cone: &ConeModel, s: &[Complex64]) -> Result<Vec<Complex64>> {
    let a = cone.sigma.row_mul(s);
    let p = cone.structure.p_f64();
    let q = cone.structure.q_f64();
    let shifted: Vec<Complex64> = a.iter().zip(p.iter().zip(&q)).map(|(x, (p, q))| x - 0.5 * p + 0.5 * q).collect();
    Ok(cone.sigma_star.inverse()?.row_mul(&shifted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::load_catalog_cone;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn rank_one_gamma_integral() {
        let cone = load_catalog_cone("orthant_1").unwrap();
        let q = QuadratureSpec { nodes_per_axis: 128, ..Default::default() };
        let v = gindikin_integral(&cone, &[c(2.5)], &q, Side::Primal).unwrap();
        assert!((v - c(gamma_real(2.5).unwrap())).norm() < 1e-10, "{v}");
    }

    #[test]
    fn lorentz_measure_constant_is_one() {
        let cone = load_catalog_cone("lorentz_1").unwrap();
        let q = QuadratureSpec { nodes_per_axis: 96, ..Default::default() };
        let (cal, report) = calibrate_measure(&cone, &[c(1.0), c(1.5)], &[vec![c(0.8), c(2.0)]], &q).unwrap();
        assert!((cal.c_primal.unwrap() - 1.0).abs() < 1e-6);
        assert!((cal.c_dual.unwrap() - 1.0).abs() < 1e-6);
        assert!(report.pass, "{}", report.rel_residual);
    }
}
