//! Functional-equation verifiers: raw, completed and distribution forms.

use crate::characters::{build_j, epsilon_factor, gamma_matrix_general, order_map_sigma};
use crate::cone::{check_completion_condition, ConeModel, ParityVector, Side};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::special::{component_sum, gindikin_gamma, lambda_matrix, SpectralPoint};
use crate::zeta::engine::{distribution_weights, zeta_vector, ZetaVector};
use crate::zeta::quadrature::QuadratureSpec;
use crate::zeta::test_function::TestFunction;
use num_complex::Complex64;
use serde_json::json;
use std::f64::consts::PI;
use std::time::Instant;

/// Dimension left after integrating every off-diagonal block radially.
pub fn effective_dimension(cone: &ConeModel) -> usize {
    cone.rank() + cone.leaves().len()
}

/// Default tolerance for FE checks by effective dimension.
pub fn ladder_tolerance(cone: &ConeModel) -> f64 {
    match effective_dimension(cone) {
        0..=2 => 1e-8,
        3 => 1e-4,
        _ => 5e-3,
    }
}

/// Requires 0 < Re w_j < 1 for w = sσ − p/2, the overlap strip.
pub fn check_strip(point: &SpectralPoint) -> Result<()> {
    for (j, w) in point.w.iter().enumerate() {
        if !(w.re > 0.0 && w.re < 1.0) {
            return Err(Error::Guard(format!(
                "overlap strip needs p_{j1}/2 < Re (sσ)_{j1} < p_{j1}/2 + 1, got Re w_{j1} = {}",
                w.re,
                j1 = j + 1
            )));
        }
    }
    Ok(())
}

fn cpairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    crate::report::pairs(v)
}

fn inputs(point: &SpectralPoint, f: &TestFunction, quad: &QuadratureSpec) -> serde_json::Value {
    json!({
        "s": cpairs(&point.s),
        "tau_s": cpairs(&point.tau),
        "w": cpairs(&point.w),
        "v": cpairs(&point.v),
        "f": f.descriptor(),
        "quadrature": quad,
        "seed": quad.seed,
    })
}

fn vector_meta(z: &ZetaVector) -> serde_json::Value {
    json!({
        "refinement_delta": z.refinement_delta,
        "level": z.level,
        "gindikin_domain": z.convergence_ok,
        "absolute_region": z.absolute_region,
        "continued_orbits": z.continued_orbits,
    })
}

struct Sides {
    point: SpectralPoint,
    primal: ZetaVector,
    dual: ZetaVector,
}

fn both_sides(cone: &ConeModel, f: &TestFunction, s: &[Complex64], quad: &QuadratureSpec) -> Result<Sides> {
    let point = SpectralPoint::new(cone, s)?;
    check_strip(&point)?;
    let primal = zeta_vector(cone, &f.fourier(), s, quad, Side::Primal)?;
    let dual = zeta_vector(cone, f, &point.tau, quad, Side::Dual)?;
    Ok(Sides { point, primal, dual })
}

fn finish(report: VerificationReport, start: Instant, sides: &Sides, extra: serde_json::Value) -> VerificationReport {
    let strip_sum: f64 = sides.point.w.iter().zip(&sides.point.v).map(|(w, v)| (w + v - 1.0).norm()).fold(0.0, f64::max);
    let mut meta = json!({
        "primal": vector_meta(&sides.primal),
        "dual": vector_meta(&sides.dual),
        "strip_sum_defect": strip_sum,
    });
    if let (Some(m), Some(e)) = (meta.as_object_mut(), extra.as_object()) {
        m.extend(e.clone());
    }
    let mut report = report.with_metadata(meta);
    report.runtime_ms = start.elapsed().as_millis() as u64;
    report
}

/// Z(Ff; s) against (Γ_Ω(sσ)/(2π)^{|sσ|}) · ᵀA(sσ − p/2) · Z*(f; τ(s)).
pub fn verify_raw_fe(
    cone: &ConeModel,
    f: &TestFunction,
    s: &[Complex64],
    quad: &QuadratureSpec,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let sides = both_sides(cone, f, s, quad)?;
    let a = cone.sigma.row_mul(s);
    let coef = gindikin_gamma(&cone.structure, &a)? * (-component_sum(&a) * (2.0 * PI).ln()).exp();
    let gm = gamma_matrix_general(&cone.structure, &sides.point.w);
    let size = sides.dual.values.len();
    let rhs: Vec<Complex64> = (0..size)
        .map(|eps| coef * (0..size).map(|delta| gm.values[(delta, eps)] * sides.dual.values[delta]).sum::<Complex64>())
        .collect();
    let report = VerificationReport::compare(
        "fe-raw",
        &cone.name,
        inputs(&sides.point, f, quad),
        &sides.primal.values,
        &rhs,
        ladder_tolerance(cone),
    );
    Ok(finish(report, start, &sides, json!({ "gamma_matrix": "transpose of A(sσ − p/2), rows δ" })))
}

fn completion_m(cone: &ConeModel) -> Result<u8> {
    check_completion_condition(&cone.structure).ok_or_else(|| Error::CompletionFails(cone.name.clone()))
}

fn j_transpose_times(cone: &ConeModel, z: &[Complex64]) -> Result<Vec<Complex64>> {
    let basis = build_j(cone.rank())?;
    let size = z.len();
    Ok((0..size).map(|a| (0..size).map(|eps| basis.j[(eps, a)] * z[eps]).sum()).collect())
}

/// Λ(sσ − p/2)·ᵀJ·Z(Ff; s) against E·Λ(τ(s)σ* − q/2)·ᵀJ·Z*(f; τ(s)).
pub fn verify_completed_fe(
    cone: &ConeModel,
    f: &TestFunction,
    s: &[Complex64],
    quad: &QuadratureSpec,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let m = completion_m(cone)?;
    let sides = both_sides(cone, f, s, quad)?;
    let lam_w = lambda_matrix(&sides.point.w)?;
    let lam_v = lambda_matrix(&sides.point.v)?;
    let e = epsilon_factor(m, cone.rank());
    let jl = j_transpose_times(cone, &sides.primal.values)?;
    let jr = j_transpose_times(cone, &sides.dual.values)?;
    let lhs: Vec<Complex64> = jl.iter().zip(&lam_w).map(|(z, l)| z * l).collect();
    let rhs: Vec<Complex64> = jr.iter().zip(&lam_v).zip(&e.diagonal).map(|((z, l), e)| e * l * z).collect();
    let report = VerificationReport::compare(
        "fe-completed",
        &cone.name,
        inputs(&sides.point, f, quad),
        &lhs,
        &rhs,
        ladder_tolerance(cone),
    );
    Ok(finish(report, start, &sides, json!({ "m": m })))
}

/// Zeta-distribution vector (Z_b)_b listed in A_σ order, times the Λ entry at each
/// position. The position of b is the fixed-order index of bσ.
fn distribution_vector(cone: &ConeModel, z: &ZetaVector, alpha: &[Complex64]) -> Result<(Vec<Complex64>, Vec<usize>)> {
    let order = order_map_sigma(cone.multiplier(z.side))?;
    let lam = lambda_matrix(alpha)?;
    let size = z.values.len();
    let mut out = vec![Complex64::new(0.0, 0.0); size];
    for b in ParityVector::all(cone.rank()) {
        let weights = distribution_weights(cone, b, z.side);
        let zb: Complex64 = weights.iter().zip(&z.values).map(|(k, v)| *k * v).sum();
        let pos = order.position(b.index);
        out[pos] = lam[pos] * zb;
    }
    Ok((out, order.order))
}

/// Z̃(Ff; s) against E·Z̃*(f; τ(s)) with the distribution vectors ordered by A_σ
/// and A_{σ*}. These vectors are 2^{r/2} times the completed-FE vectors, so the
/// relative residual agrees with the completed form.
pub fn verify_distribution_fe(
    cone: &ConeModel,
    f: &TestFunction,
    s: &[Complex64],
    quad: &QuadratureSpec,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let m = completion_m(cone)?;
    let sides = both_sides(cone, f, s, quad)?;
    let (lhs, order_primal) = distribution_vector(cone, &sides.primal, &sides.point.w)?;
    let (dual, order_dual) = distribution_vector(cone, &sides.dual, &sides.point.v)?;
    let e = epsilon_factor(m, cone.rank());
    let rhs: Vec<Complex64> = dual.iter().zip(&e.diagonal).map(|(z, e)| e * z).collect();
    let report = VerificationReport::compare(
        "fe-distribution",
        &cone.name,
        inputs(&sides.point, f, quad),
        &lhs,
        &rhs,
        ladder_tolerance(cone),
    );
    let scale = 2f64.powf(cone.rank() as f64 / 2.0);
    Ok(finish(
        report,
        start,
        &sides,
        json!({
            "m": m,
            "order_primal": order_primal,
            "order_dual": order_dual,
            "normalization": format!("Z_b = sum over orbits of kappa_eps(b sigma) Z_eps, equal to {scale} times the J-transformed vector"),
        }),
    ))
}
