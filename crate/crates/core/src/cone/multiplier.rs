use crate::cone::model::{ConeModel, Side};
use crate::cone::signs::SignVector;
use crate::report::VerificationReport;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Checks Δ_j(diag x) = Π_k x_k^{σ_jk} (and the dual analogue) at random diagonal
/// points, plus the sign pattern Δ_j(c_ε) = κ_ε(e_jσ) on every orbit representative.
pub fn multiplier_consistency_check(cone: &ConeModel, samples: usize, seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = cone.rank();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for side in [Side::Primal, Side::Dual] {
        let sigma = cone.multiplier(side);
        for _ in 0..samples {
            let mut x = vec![0.0; cone.dim()];
            for v in x.iter_mut().take(r) {
                let mag = rng.gen_range(0.2..3.0);
                *v = if rng.gen_bool(0.5) { mag } else { -mag };
            }
            let got = cone.evaluate_invariants(&x, side).expect("dimension matches");
            for j in 0..r {
                let want: f64 = (0..r).map(|k| x[k].powi(sigma.get(j, k) as i32)).product();
                lhs.push(Complex64::new(got[j], 0.0));
                rhs.push(Complex64::new(want, 0.0));
            }
        }
        for eps in SignVector::all(r) {
            let c = cone.orbit_representative(eps);
            let got = cone.evaluate_invariants(&c, side).expect("dimension matches");
            let want = cone.orbit_sign_pattern(eps, side);
            for j in 0..r {
                lhs.push(Complex64::new(got[j], 0.0));
                rhs.push(Complex64::new(want[j] as f64, 0.0));
            }
        }
    }
    VerificationReport::compare(
        "multiplier",
        &cone.name,
        json!({ "samples": samples, "seed": seed }),
        &lhs,
        &rhs,
        1e-12,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::load_catalog_cone;

    #[test]
    fn catalog_passes() {
        for name in ["orthant_2", "lorentz_4", "vinberg", "rank3_quat"] {
            let c = load_catalog_cone(name).unwrap();
            let rep = multiplier_consistency_check(&c, 20, 3);
            assert!(rep.pass, "{name}: {}", rep.rel_residual);
        }
    }

    #[test]
    fn diagonal_examples() {
        let v = load_catalog_cone("vinberg").unwrap();
        let d = v.evaluate_invariants(&[2.0, 3.0, 5.0, 0.0, 0.0], Side::Primal).unwrap();
        assert_eq!(d, vec![2.0, 6.0, 10.0]);
        let q = load_catalog_cone("rank3_quat").unwrap();
        let mut y = vec![0.0; 11];
        y[..3].copy_from_slice(&[2.0, 3.0, 5.0]);
        assert_eq!(q.evaluate_invariants(&y, Side::Dual).unwrap(), vec![30.0, 3.0, 5.0]);
    }
}
