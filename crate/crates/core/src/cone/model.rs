//! Concrete cones: coordinates, relative invariants, multiplier matrices and orbit charts.
//!
//! Two realization families cover the catalog.
//!
//! * The orthant R_{>0}^r with Δ_j = x_j.
//! * Star cones, where every off-diagonal block hangs off the first index
//!   (n_k1 = n_k > 0 for k ≥ 2, all other n_kj zero). Each leaf k is realized by
//!   the symmetric matrix `[[x1·I_{n_k}, X_k], [X_kᵀ, x_k]]`, giving
//!   Δ_1 = x1, Δ_k = x1·x_k − |X_k|² and the dual invariants
//!   Δ*_1 = y1·Π y_k − Σ_k |Y_k|² Π_{l≠k} y_l, Δ*_k = y_k.
//!
//! Points are stored in raw coordinates: the r diagonal entries first, then each
//! off-diagonal block in lexicographic (k, j) order. The inner product is
//! ⟨x, y⟩ = Σ x_j y_j + 2 Σ X·Y, so orthonormal coordinates scale the block
//! entries by √2 (see [`ConeModel::gram_scale`]).

use crate::cone::matrix::IntMatrix;
use crate::cone::signs::{kappa, ParityVector, SignVector};
use crate::cone::structure::{derive_constants, ConeStructure};
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Primal,
    Dual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Realization {
    Orthant,
    /// Leaf block sizes n_2, …, n_r.
    Star { leaves: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coordinate {
    pub label: String,
    /// `None` for a diagonal coordinate, otherwise the zero-based block (k, j).
    pub block: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeModel {
    pub name: String,
    pub structure: ConeStructure,
    pub realization: Realization,
    pub block_sizes: Vec<usize>,
    pub coordinates: Vec<Coordinate>,
    pub sigma: IntMatrix,
    pub sigma_star: IntMatrix,
    pub gram_scale: Vec<f64>,
    pub c_primal: Option<f64>,
    pub c_dual: Option<f64>,
}

/// A point of an orbit chart: x = T c_ε ᵀT.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartPoint {
    pub orbit_sign: SignVector,
    pub t: Vec<f64>,
    pub u: Vec<f64>,
}

/// Names accepted by [`load_catalog_cone`].
pub fn catalog_names() -> Vec<String> {
    let mut v: Vec<String> = (1..=4).map(|r| format!("orthant_{r}")).collect();
    v.extend([1, 2, 4].iter().map(|k| format!("lorentz_{k}")));
    v.push("vinberg".into());
    v.push("rank3_quat".into());
    v
}

pub fn load_catalog_cone(name: &str) -> Result<ConeModel> {
    let unknown = || Error::UnknownCone(name.to_string());
    if let Some(r) = name.strip_prefix("orthant_") {
        let r: usize = r.parse().map_err(|_| unknown())?;
        if r == 0 || r > 12 {
            return Err(unknown());
        }
        return ConeModel::orthant(name, r);
    }
    if let Some(k) = name.strip_prefix("lorentz_") {
        let k: usize = k.parse().map_err(|_| unknown())?;
        if k == 0 {
            return Err(unknown());
        }
        return ConeModel::star(name, vec![k]);
    }
    match name {
        "vinberg" => ConeModel::star(name, vec![1, 1]),
        "rank3_quat" => ConeModel::star(name, vec![4, 4]),
        _ => Err(unknown()),
    }
}

impl ConeModel {
    pub fn orthant(name: &str, r: usize) -> Result<ConeModel> {
        let structure = derive_constants(&[], r)?;
        let coordinates = (0..r).map(|j| Coordinate { label: format!("x{}", j + 1), block: None }).collect();
        Ok(ConeModel {
            name: name.to_string(),
            structure,
            realization: Realization::Orthant,
            block_sizes: vec![1; r],
            coordinates,
            sigma: IntMatrix::identity(r),
            sigma_star: IntMatrix::identity(r),
            gram_scale: vec![1.0; r],
            c_primal: None,
            c_dual: None,
        })
    }

    /// Star cone whose leaves k = 2..r carry blocks of size `leaves[k-2]`.
    pub fn star(name: &str, leaves: Vec<usize>) -> Result<ConeModel> {
        if leaves.is_empty() || leaves.contains(&0) {
            return Err(Error::InvalidStructure("star cone needs nonempty leaves".into()));
        }
        let r = leaves.len() + 1;
        let table: Vec<(usize, usize, i64)> =
            leaves.iter().enumerate().map(|(i, &n)| (i + 2, 1, n as i64)).collect();
        let structure = derive_constants(&table, r)?;
        let mut coordinates: Vec<Coordinate> =
            (0..r).map(|j| Coordinate { label: format!("x{}{}", j + 1, j + 1), block: None }).collect();
        let mut gram_scale = vec![1.0; r];
        for (i, &n) in leaves.iter().enumerate() {
            for c in 0..n {
                coordinates.push(Coordinate { label: format!("x{}1[{}]", i + 2, c), block: Some((i + 1, 0)) });
                gram_scale.push(2.0);
            }
        }
        let mut sigma = IntMatrix::identity(r);
        let mut sigma_star = IntMatrix::identity(r);
        for k in 1..r {
            sigma.0[k][0] = 1;
            sigma_star.0[0][k] = 1;
        }
        // The hub block repeats once per leaf unless every leaf is one-dimensional.
        let hub = if leaves.iter().all(|&n| n == 1) { 1 } else { leaves.iter().sum() };
        let mut block_sizes = vec![hub];
        block_sizes.extend(std::iter::repeat(1).take(leaves.len()));
        Ok(ConeModel {
            name: name.to_string(),
            structure,
            realization: Realization::Star { leaves },
            block_sizes,
            coordinates,
            sigma,
            sigma_star,
            gram_scale,
            c_primal: None,
            c_dual: None,
        })
    }

    pub fn rank(&self) -> usize {
        self.structure.rank
    }

    pub fn dim(&self) -> usize {
        self.structure.ambient_dim
    }

    pub fn leaves(&self) -> &[usize] {
        match &self.realization {
            Realization::Orthant => &[],
            Realization::Star { leaves } => leaves,
        }
    }

    /// Offset of leaf k's block (k ≥ 1, zero-based) inside a raw point.
    fn block_offset(&self, k: usize) -> usize {
        self.rank() + self.leaves()[..k - 1].iter().sum::<usize>()
    }

    fn block<'a>(&self, x: &'a [f64], k: usize) -> &'a [f64] {
        let o = self.block_offset(k);
        &x[o..o + self.leaves()[k - 1]]
    }

    pub fn multiplier(&self, side: Side) -> &IntMatrix {
        match side {
            Side::Primal => &self.sigma,
            Side::Dual => &self.sigma_star,
        }
    }

    pub fn calibration(&self, side: Side) -> f64 {
        match side {
            Side::Primal => self.c_primal.unwrap_or(1.0),
            Side::Dual => self.c_dual.unwrap_or(1.0),
        }
    }

    /// Exponents m with dμ = c·Π|Δ_j|^{-m_j}dξ: m = dσ^{-1} (primal) or dσ*^{-1} (dual).
    pub fn measure_exponents_q(&self, side: Side) -> Vec<Ratio<i64>> {
        let inv = self.multiplier(side).inverse().expect("catalog multiplier matrices are unimodular");
        inv.row_mul_q(&self.structure.d)
    }

    pub fn measure_exponents(&self, side: Side) -> Vec<f64> {
        self.measure_exponents_q(side).iter().map(|x| *x.numer() as f64 / *x.denom() as f64).collect()
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }

    /// (Δ_1(x), …, Δ_r(x)) or the dual invariants, from raw coordinates.
    pub fn evaluate_invariants(&self, x: &[f64], side: Side) -> Result<Vec<f64>> {
        self.check_dim(x)?;
        let r = self.rank();
        Ok(match (&self.realization, side) {
            (Realization::Orthant, _) => x.to_vec(),
            (Realization::Star { .. }, Side::Primal) => {
                let mut out = vec![x[0]];
                for k in 1..r {
                    let b = self.block(x, k);
                    out.push(x[0] * x[k] - b.iter().map(|v| v * v).sum::<f64>());
                }
                out
            }
            (Realization::Star { .. }, Side::Dual) => {
                let prod_leaves: f64 = x[1..r].iter().product();
                let mut first = x[0] * prod_leaves;
                for k in 1..r {
                    let b = self.block(x, k);
                    let others: f64 = (1..r).filter(|&l| l != k).map(|l| x[l]).product();
                    first -= b.iter().map(|v| v * v).sum::<f64>() * others;
                }
                let mut out = vec![first];
                out.extend_from_slice(&x[1..r]);
                out
            }
        })
    }

    /// The point with diagonal coordinates ε_j and zero off-diagonal part.
    pub fn orbit_representative(&self, eps: SignVector) -> Vec<f64> {
        let mut x = vec![0.0; self.dim()];
        for j in 0..self.rank() {
            x[j] = eps.get(j) as f64;
        }
        x
    }

    /// Expected sign of Δ_j on Ω_ε, namely κ_ε(e_jσ).
    pub fn orbit_sign_pattern(&self, eps: SignVector, side: Side) -> Vec<i8> {
        let s = self.multiplier(side);
        (0..self.rank()).map(|j| kappa(eps, row_parity(s, j))).collect()
    }

    /// Raw coordinates of the chart point x(ε, t, u).
    ///
    /// Primal star: x1 = ε1 t1², X_k = ε1 t1 u_k, x_k = ε1|u_k|² + ε_k t_k².
    /// Dual star: y_k = δ_k t_k², Y_k = δ_k t_k u_k, y1 = δ1 t1² + Σ δ_k |u_k|².
    pub fn chart_point(&self, pt: &ChartPoint, side: Side) -> Result<Vec<f64>> {
        if pt.t.iter().any(|&t| !(t > 0.0)) {
            return Err(Error::Input("chart parameters t must be positive".into()));
        }
        let r = self.rank();
        if pt.t.len() != r || pt.u.len() != self.dim() - r {
            return Err(Error::Dimension { expected: self.dim(), got: pt.t.len() + pt.u.len() });
        }
        let e = |j: usize| pt.orbit_sign.get(j) as f64;
        let mut x = vec![0.0; self.dim()];
        match (&self.realization, side) {
            (Realization::Orthant, _) => {
                for j in 0..r {
                    x[j] = e(j) * pt.t[j] * pt.t[j];
                }
            }
            (Realization::Star { leaves }, Side::Primal) => {
                x[0] = e(0) * pt.t[0] * pt.t[0];
                let mut off = 0;
                for (i, &n) in leaves.iter().enumerate() {
                    let k = i + 1;
                    let u = &pt.u[off..off + n];
                    let norm2: f64 = u.iter().map(|v| v * v).sum();
                    x[k] = e(0) * norm2 + e(k) * pt.t[k] * pt.t[k];
                    for c in 0..n {
                        x[r + off + c] = e(0) * pt.t[0] * u[c];
                    }
                    off += n;
                }
            }
            (Realization::Star { leaves }, Side::Dual) => {
                x[0] = e(0) * pt.t[0] * pt.t[0];
                let mut off = 0;
                for (i, &n) in leaves.iter().enumerate() {
                    let k = i + 1;
                    let u = &pt.u[off..off + n];
                    x[k] = e(k) * pt.t[k] * pt.t[k];
                    x[0] += e(k) * u.iter().map(|v| v * v).sum::<f64>();
                    for c in 0..n {
                        x[r + off + c] = e(k) * pt.t[k] * u[c];
                    }
                    off += n;
                }
            }
        }
        Ok(x)
    }

    /// Chart point and the absolute Jacobian determinant of (t, u) ↦ ξ, where ξ are
    /// orthonormal coordinates. The differential is taken by central differences.
    pub fn orbit_chart(&self, pt: &ChartPoint, side: Side) -> Result<(Vec<f64>, f64)> {
        let x = self.chart_point(pt, side)?;
        let n = self.dim();
        let r = self.rank();
        let scale: Vec<f64> = self.gram_scale.iter().map(|g| g.sqrt()).collect();
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for col in 0..n {
            let base = if col < r { pt.t[col] } else { pt.u[col - r] };
            let h = if col < r { 1e-5 * base } else { 1e-5 * base.abs().max(1e-2) };
            let eval = |delta: f64| -> Result<Vec<f64>> {
                let mut q = pt.clone();
                if col < r {
                    q.t[col] += delta;
                } else {
                    q.u[col - r] += delta;
                }
                self.chart_point(&q, side)
            };
            let plus = eval(h)?;
            let minus = eval(-h)?;
            for row in 0..n {
                jac[(row, col)] = scale[row] * (plus[row] - minus[row]) / (2.0 * h);
            }
        }
        Ok((x, jac.determinant().abs()))
    }

    /// Closed form |Δ_j(x(ε,t,u))| = Π_k t_k^{2σ_jk}.
    pub fn chart_invariant_moduli(&self, t: &[f64], side: Side) -> Vec<f64> {
        let s = self.multiplier(side);
        (0..self.rank())
            .map(|j| (0..self.rank()).map(|k| t[k].powi(2 * s.get(j, k) as i32)).product())
            .collect()
    }

    /// Orbit containing x, or [`Error::Boundary`] when some invariant vanishes.
    pub fn classify_orbit(&self, x: &[f64], side: Side) -> Result<SignVector> {
        let delta = self.evaluate_invariants(x, side)?;
        if delta.iter().any(|&v| v == 0.0) {
            return Err(Error::Boundary);
        }
        let bits: Vec<u8> = delta.iter().map(|&v| u8::from(v < 0.0)).collect();
        let target = ParityVector::from_bits(&bits);
        Ok(solve_mod2(self.multiplier(side), target)?.to_sign())
    }

    /// Density of dμ against Lebesgue measure in orthonormal coordinates.
    pub fn invariant_measure_weight(&self, x: &[f64], side: Side) -> Result<f64> {
        let delta = self.evaluate_invariants(x, side)?;
        if delta.iter().any(|&v| v == 0.0) {
            return Err(Error::Boundary);
        }
        let m = self.measure_exponents(side);
        let w: f64 = delta.iter().zip(&m).map(|(d, e)| d.abs().powf(-e)).product();
        Ok(self.calibration(side) * w)
    }

    /// Raw to orthonormal coordinates.
    pub fn to_orthonormal(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(&self.gram_scale).map(|(v, g)| v * g.sqrt()).collect()
    }
}

/// The parity vector e_jσ mod 2 (row j of σ).
pub fn row_parity(sigma: &IntMatrix, j: usize) -> ParityVector {
    let bits: Vec<u8> = (0..sigma.size()).map(|k| sigma.get(j, k).rem_euclid(2) as u8).collect();
    ParityVector::from_bits(&bits)
}

/// a ↦ aσ mod 2.
pub fn parity_times(a: ParityVector, sigma: &IntMatrix) -> ParityVector {
    let r = sigma.size();
    let bits: Vec<u8> = (0..r)
        .map(|k| ((0..r).map(|j| a.get(j) as i64 * sigma.get(j, k)).sum::<i64>().rem_euclid(2)) as u8)
        .collect();
    ParityVector::from_bits(&bits)
}

/// Finds a with aσ ≡ target (mod 2), using the integral inverse of σ.
///
/// Δ_j(c_ε) = κ_ε(e_jσ) = (-1)^{(aσᵀ)_j}, so the sign bits of Δ are aσᵀ; this solves
/// against σᵀ accordingly.
pub fn solve_mod2(sigma: &IntMatrix, target: ParityVector) -> Result<ParityVector> {
    let inv_t = sigma.transpose().inverse()?;
    Ok(parity_times(target, &inv_t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sigmas() {
        let c = load_catalog_cone("rank3_quat").unwrap();
        assert_eq!(c.sigma.0, vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]]);
        assert_eq!(c.sigma_star.0, vec![vec![1, 1, 1], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(c.dim(), 11);
        let o = load_catalog_cone("orthant_1").unwrap();
        assert_eq!(o.sigma.0, vec![vec![1]]);
        assert!(matches!(load_catalog_cone("nope"), Err(Error::UnknownCone(_))));
    }

    #[test]
    fn invariant_examples() {
        let c = load_catalog_cone("rank3_quat").unwrap();
        let mut x = vec![0.0; 11];
        x[0] = 2.0;
        x[1] = 1.0;
        x[2] = 1.0;
        assert_eq!(c.evaluate_invariants(&x, Side::Primal).unwrap(), vec![2.0, 2.0, 2.0]);
        let mut y = vec![0.0; 11];
        y[..3].copy_from_slice(&[1.0, 1.0, 1.0]);
        assert_eq!(c.evaluate_invariants(&y, Side::Dual).unwrap(), vec![1.0, 1.0, 1.0]);
        let l = load_catalog_cone("lorentz_4").unwrap();
        let x = [1.0, 1.0, 1.0, 0.0, 0.0, 0.0];
        assert_eq!(l.evaluate_invariants(&x, Side::Primal).unwrap(), vec![1.0, 0.0]);
        assert!(l.evaluate_invariants(&x[..3], Side::Primal).is_err());
    }

    #[test]
    fn measure_weights() {
        let o = load_catalog_cone("orthant_1").unwrap();
        assert_eq!(o.invariant_measure_weight(&[2.0], Side::Primal).unwrap(), 0.5);
        let l = load_catalog_cone("lorentz_4").unwrap();
        assert_eq!(l.measure_exponents(Side::Primal), vec![0.0, 3.0]);
        let x = [2.0, 1.0, 0.5, 0.0, 0.0, 0.0];
        let w = l.invariant_measure_weight(&x, Side::Primal).unwrap();
        assert!((w - 1.75f64.powi(-3)).abs() < 1e-15);
    }

    #[test]
    fn representatives_and_classification() {
        let v = load_catalog_cone("vinberg").unwrap();
        let e = SignVector::from_signs(&[-1, 1, 1]);
        let c = v.orbit_representative(e);
        assert_eq!(v.evaluate_invariants(&c, Side::Primal).unwrap(), vec![-1.0, -1.0, -1.0]);
        assert_eq!(v.classify_orbit(&c, Side::Primal).unwrap(), e);
        let o = load_catalog_cone("orthant_2").unwrap();
        assert_eq!(o.classify_orbit(&[3.0, -2.0], Side::Primal).unwrap(), SignVector::from_signs(&[1, -1]));
        assert_eq!(o.classify_orbit(&[0.0, 1.0], Side::Primal), Err(Error::Boundary));
    }

    #[test]
    fn chart_examples() {
        let l = load_catalog_cone("lorentz_4").unwrap();
        let pp = SignVector::from_signs(&[1, 1]);
        let pt = ChartPoint { orbit_sign: pp, t: vec![1.0, 1.0], u: vec![0.0; 4] };
        let (x, _) = l.orbit_chart(&pt, Side::Primal).unwrap();
        assert_eq!(x, l.orbit_representative(pp));
        let pt = ChartPoint { orbit_sign: pp, t: vec![0.7, 1.3], u: vec![0.3, -0.2, 0.9, 0.1] };
        let x = l.chart_point(&pt, Side::Primal).unwrap();
        let d = l.evaluate_invariants(&x, Side::Primal).unwrap();
        assert!((d[1] - 0.49 * 1.69).abs() < 1e-12);
        let bad = ChartPoint { orbit_sign: pp, t: vec![0.0, 1.0], u: vec![0.0; 4] };
        assert!(l.orbit_chart(&bad, Side::Primal).is_err());
    }

    #[test]
    fn chart_jacobian_closed_form() {
        // |det| = 2t1 · (√2 t1)^{Σn_k} · Π_k 2t_k for the primal star chart
        let v = load_catalog_cone("lorentz_2").unwrap();
        let pt = ChartPoint { orbit_sign: SignVector::from_signs(&[-1, 1]), t: vec![0.8, 1.4], u: vec![0.3, -0.5] };
        let (_, j) = v.orbit_chart(&pt, Side::Primal).unwrap();
        let expect = 2.0 * 0.8 * (2f64.sqrt() * 0.8).powi(2) * 2.0 * 1.4;
        assert!((j - expect).abs() < 1e-8 * expect);
    }
}
