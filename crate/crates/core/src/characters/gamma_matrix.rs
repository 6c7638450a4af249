use crate::characters::basis::CharacterBasis;
use crate::cone::{ConeStructure, ParityVector, SignVector};
use crate::report::VerificationReport;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaForm {
    General,
    Reduced { m: u8 },
}

/// A(α) with rows δ and columns ε, both in the fixed order on I_r.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaMatrix {
    pub rank: usize,
    pub values: DMatrix<Complex64>,
    pub form: GammaForm,
}

fn sign_sum(eps: SignVector, delta: SignVector, alpha: &[Complex64]) -> Complex64 {
    (0..alpha.len()).map(|j| alpha[j] * (eps.get(j) * delta.get(j)) as f64).sum()
}

/// Entry (δ, ε) = exp{(πi/2)(Σ_j ε_j δ_j α_j + ½ Σ_{j<k} ε_j δ_k n_kj)}.
pub fn gamma_matrix_general(structure: &ConeStructure, alpha: &[Complex64]) -> GammaMatrix {
    let r = structure.rank;
    let size = 1usize << r;
    let values = DMatrix::from_fn(size, size, |row, col| {
        let delta = SignVector { rank: r, index: row };
        let eps = SignVector { rank: r, index: col };
        let mut cross = 0i64;
        for k in 0..r {
            for j in 0..k {
                cross += (eps.get(j) * delta.get(k)) as i64 * structure.dims[k][j] as i64;
            }
        }
        (I * (PI / 2.0) * sign_sum(eps, delta, alpha)).exp() * eighth_root_of_unity(cross)
    });
    GammaMatrix { rank: r, values, form: GammaForm::General }
}

/// exp(πi k/4), exact on the real and imaginary axes.
fn eighth_root_of_unity(k: i64) -> Complex64 {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match k.rem_euclid(8) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(h, h),
        2 => Complex64::new(0.0, 1.0),
        3 => Complex64::new(-h, h),
        4 => Complex64::new(-1.0, 0.0),
        5 => Complex64::new(-h, -h),
        6 => Complex64::new(0.0, -1.0),
        _ => Complex64::new(h, -h),
    }
}

/// Entry (δ, ε) = (−1)^m exp{(πi/2) Σ_j ε_j δ_j α_j}.
pub fn gamma_matrix_reduced(m: u8, alpha: &[Complex64]) -> GammaMatrix {
    let r = alpha.len();
    let size = 1usize << r;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let values = DMatrix::from_fn(size, size, |row, col| {
        let delta = SignVector { rank: r, index: row };
        let eps = SignVector { rank: r, index: col };
        sign * (I * (PI / 2.0) * sign_sum(eps, delta, alpha)).exp()
    });
    GammaMatrix { rank: r, values, form: GammaForm::Reduced { m } }
}

/// Q_a(α) = Π_j cos((π/2)(α_j − a_j)).
pub fn q_factor(a: ParityVector, alpha: &[Complex64]) -> Complex64 {
    (0..alpha.len()).map(|j| ((alpha[j] - a.get(j) as f64) * (PI / 2.0)).cos()).product()
}

/// Diagonal of ᵀJ A J and its largest off-diagonal modulus.
pub fn diagonalize_gamma_matrix(a: &GammaMatrix, basis: &CharacterBasis) -> (Vec<Complex64>, f64) {
    let j = basis.j.map(|x| Complex64::new(x, 0.0));
    let d = j.transpose() * &a.values * &j;
    let n = d.nrows();
    let diag = (0..n).map(|i| d[(i, i)]).collect();
    let mut off = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                off = off.max(d[(r, c)].norm());
            }
        }
    }
    (diag, off)
}

/// The diagonal predicted by the eigen-relation: (−1)^m 2^r i^{|a|} Q_a(α).
pub fn predicted_diagonal(m: u8, alpha: &[Complex64]) -> Vec<Complex64> {
    let r = alpha.len();
    let e = epsilon_factor(m, r);
    ParityVector::all(r)
        .map(|a| e.diagonal[a.index] * (1usize << r) as f64 * q_factor(a, alpha))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonFactor {
    pub rank: usize,
    pub m: u8,
    pub diagonal: Vec<Complex64>,
}

/// E = (−1)^m diag(i^{|a|}).
pub fn epsilon_factor(m: u8, r: usize) -> EpsilonFactor {
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let diagonal = ParityVector::all(r).map(|a| sign * I.powu(a.weight())).collect();
    EpsilonFactor { rank: r, m, diagonal }
}

/// Determinant by LU with partial pivoting.
pub fn det_gamma_matrix(a: &GammaMatrix) -> Complex64 {
    a.values.clone().lu().determinant()
}

/// sin(πz) with the real part reduced modulo 2 first.
fn sin_pi(z: Complex64) -> Complex64 {
    let k = (z.re / 2.0).round() * 2.0;
    (Complex64::new(z.re - k, z.im) * PI).sin()
}

/// (Π_j 2i sin πα_j)^{2^{r−1}}.
pub fn det_conjecture_value(alpha: &[Complex64]) -> Complex64 {
    let r = alpha.len();
    let base: Complex64 = alpha.iter().map(|&x| 2.0 * I * sin_pi(x)).product();
    let exp = 1u32 << (r - 1);
    base.powu(exp)
}

/// Compares det A(α) for the general-form matrix against the conjectured product.
pub fn check_det_conjecture(name: &str, structure: &ConeStructure, trials: usize, seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lhs = Vec::with_capacity(trials);
    let mut rhs = Vec::with_capacity(trials);
    for _ in 0..trials {
        let alpha: Vec<Complex64> = (0..structure.rank)
            .map(|_| Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-0.5..0.5)))
            .collect();
        lhs.push(det_gamma_matrix(&gamma_matrix_general(structure, &alpha)));
        rhs.push(det_conjecture_value(&alpha));
    }
    VerificationReport::compare(
        "det-conjecture",
        name,
        json!({ "trials": trials, "seed": seed }),
        &lhs,
        &rhs,
        1e-8,
    )
}
