//! One-dimensional rules (double-exponential, Gauss–Legendre) and deterministic summation.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Truncation of the double-exponential parameter; nodes reach ~1e-227 at the singular end.
const DE_SPAN: f64 = 6.5;

/// Node of a rule on a (possibly shifted) interval. `lo` and `hi` are the distances
/// to the left and right endpoints, computed without cancellation.
#[derive(Clone, Copy, Debug)]
pub struct Node {
    pub lo: f64,
    pub hi: f64,
    pub w: f64,
}

/// Exp-sinh rule for ∫_0^∞: x = exp(π/2 · sinh t), step h.
pub fn half_line(h: f64) -> Vec<Node> {
    let n = (DE_SPAN / h).ceil() as i64;
    let mut out = Vec::with_capacity(2 * n as usize + 1);
    for i in -n..=n {
        let t = i as f64 * h;
        let e = (PI / 2.0 * t.sinh()).exp();
        let w = h * e * PI / 2.0 * t.cosh();
        if w == 0.0 || !w.is_finite() || !e.is_finite() {
            continue;
        }
        out.push(Node { lo: e, hi: f64::INFINITY, w });
    }
    out
}

/// Tanh-sinh rule for ∫_0^len.
pub fn finite(len: f64, h: f64) -> Vec<Node> {
    let n = (DE_SPAN / h).ceil() as i64;
    let mut out = Vec::with_capacity(2 * n as usize + 1);
    for i in -n..=n {
        let t = i as f64 * h;
        let s = PI / 2.0 * t.sinh();
        // x = len/(1+e^{-2s}); distances to both ends without subtraction
        let em = (-2.0 * s).exp();
        let lo = len / (1.0 + em);
        let hi = len * em / (1.0 + em);
        let w = h * len * PI / 2.0 * t.cosh() / (2.0 * s.cosh() * s.cosh());
        if w == 0.0 || !w.is_finite() || lo == 0.0 || hi == 0.0 {
            continue;
        }
        out.push(Node { lo, hi, w });
    }
    out
}

/// Gauss–Legendre nodes and weights on [-1, 1] (n ≥ 1).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            // P_n(z) and P_{n-1}(z) by the three-term recurrence
            let (mut prev, mut cur) = (1.0, z);
            for k in 2..=n {
                let next = ((2 * k - 1) as f64 * z * cur - (k - 1) as f64 * prev) / k as f64;
                prev = cur;
                cur = next;
            }
            if n == 1 {
                prev = 1.0;
            }
            dp = n as f64 * (z * cur - prev) / (z * z - 1.0);
            let dz = cur / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Pairwise summation in a fixed tree shape, so results do not depend on thread count.
pub fn pairwise_sum<T>(v: &[T]) -> T
where
    T: Copy + Default + std::ops::Add<Output = T>,
{
    match v.len() {
        0 => T::default(),
        1 => v[0],
        n if n <= 8 => v.iter().fold(T::default(), |a, &b| a + b),
        n => {
            let (l, r) = v.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

/// Step size for refinement level `level` of the double-exponential rules.
pub fn de_step(level: u32) -> f64 {
    0.5 / f64::from(1u32 << level)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    TensorGauss,
    MonteCarlo,
}

/// Quadrature controls shared by both engines.
///
/// `nodes_per_axis` drives the chart engine directly. The fibered engine uses
/// double-exponential rules whose step is halved until the node count per half-line
/// reaches at least `nodes_per_axis`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    pub nodes_per_axis: usize,
    pub mc_samples: usize,
    pub seed: u64,
    pub target_tol: f64,
    /// Span of the sinh-mapped parameter on positive axes of the chart engine.
    pub axis_span: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            scheme: Scheme::TensorGauss,
            nodes_per_axis: 64,
            mc_samples: 200_000,
            seed: 1,
            target_tol: 1e-6,
            axis_span: 3.0,
        }
    }
}

impl QuadratureSpec {
    /// Double-exponential level whose half-line rule has at least `nodes_per_axis` nodes.
    pub fn de_level(&self) -> u32 {
        let mut level = 0;
        while (2.0 * DE_SPAN / de_step(level)) < self.nodes_per_axis as f64 && level < 8 {
            level += 1;
        }
        level
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn de_rules_integrate_singular_endpoints() {
        // ∫_0^∞ x^{-1/2} e^{-x} dx = √π
        let s: f64 = half_line(de_step(3)).iter().map(|n| n.w * n.lo.powf(-0.5) * (-n.lo).exp()).sum();
        assert!((s - PI.sqrt()).abs() < 1e-12);
        // ∫_0^1 x^{-0.9} (1-x)^{-0.5} dx = B(0.1, 0.5)
        let s: f64 = finite(1.0, de_step(3)).iter().map(|n| n.w * n.lo.powf(-0.9) * n.hi.powf(-0.5)).sum();
        let beta = 11.323_086_975_215_8;
        assert!((s - beta).abs() < 1e-9 * beta, "{s}");
    }

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        let (x, w) = gauss_legendre(7);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(12)).sum();
        assert!((s - 2.0 / 13.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn pairwise_sum_matches_naive_on_small_inputs() {
        let v: Vec<f64> = (0..100).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 4950.0);
    }
}
