//! Structural properties checked on random inputs.

use conezeta::characters::{build_j, epsilon_factor, gamma_matrix_reduced};
use conezeta::cone::graph::{build_structure_from_graph, GraphInput};
use conezeta::cone::{
    catalog_names, check_completion_condition, derive_constants, load_catalog_cone, ChartPoint, ConeModel, ParityVector,
    Side, SignVector,
};
use conezeta::special::{gamma_vector, lambda_matrix, tau_transform_q, Direction, SpectralPoint};
use conezeta::zeta::chart::chart_integral;
use conezeta::zeta::{make_test_function, zeta_distribution, zeta_vector, QuadratureSpec, TestFunction, TestKind};
use conezeta::Error;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_chart_point(cone: &ConeModel, rng: &mut ChaCha8Rng) -> ChartPoint {
    let r = cone.rank();
    let eps = SignVector { rank: r, index: rng.gen_range(0..1usize << r) };
    ChartPoint {
        orbit_sign: eps,
        t: (0..r).map(|_| rng.gen_range(0.2..2.5)).collect(),
        u: (0..cone.dim() - r).map(|_| rng.gen_range(-2.0..2.0)).collect(),
    }
}

#[test]
fn chart_points_have_the_predicted_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in catalog_names() {
        let cone = load_catalog_cone(&name).unwrap();
        for side in [Side::Primal, Side::Dual] {
            let sigma = cone.multiplier(side);
            for _ in 0..100 {
                let pt = random_chart_point(&cone, &mut rng);
                let x = cone.chart_point(&pt, side).unwrap();
                let delta = cone.evaluate_invariants(&x, side).unwrap();
                for (j, d) in delta.iter().enumerate() {
                    let sign: i64 = (0..cone.rank()).map(|k| if pt.orbit_sign.get(k) < 0 { sigma.get(j, k) } else { 0 }).sum();
                    let want_sign = if sign % 2 == 0 { 1.0 } else { -1.0 };
                    let modulus: f64 = (0..cone.rank()).map(|k| pt.t[k].powi(2 * sigma.get(j, k) as i32)).product();
                    assert_eq!(d.signum(), want_sign, "{name} {side:?} j={j}");
                    assert!((d.abs() - modulus).abs() <= 1e-10 * modulus, "{name} {side:?} j={j}: {d} vs {modulus}");
                }
                assert_eq!(cone.classify_orbit(&x, side).unwrap(), pt.orbit_sign);
            }
        }
    }
}

/// x ↦ h x hᵀ for h = diag(h_1 I, ..., h_r I) in raw star-cone coordinates.
fn act_diagonal(cone: &ConeModel, h: &[f64], x: &[f64]) -> Vec<f64> {
    let r = cone.rank();
    let mut y = x.to_vec();
    for j in 0..r {
        y[j] *= h[j] * h[j];
    }
    let mut offset = r;
    for (k, &n) in cone.leaves().iter().enumerate() {
        for v in &mut y[offset..offset + n] {
            *v *= h[k + 1] * h[0];
        }
        offset += n;
    }
    y
}

#[test]
fn invariant_measure_under_the_diagonal_group() {
    // ∫ Π Δ_j^{s_j} f(h·x) dμ = Π_j Δ_j(h)^{−s_j} ∫ Π Δ_j^{s_j} f dμ with Δ_j(h) = Π_k h_k^{2σ_jk}
    let quad = QuadratureSpec { nodes_per_axis: 64, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in ["lorentz_1", "lorentz_4"] {
        let cone = load_catalog_cone(name).unwrap();
        let r = cone.rank();
        let identity = SignVector { rank: r, index: 0 };
        let s = SpectralPoint::from_w(&cone, &[c(1.3, 0.2), c(1.6, -0.1)]).unwrap().s;
        let gauss = |y: &[f64]| -> Complex64 {
            let xi = cone.to_orthonormal(y);
            c((-PI * xi.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0)
        };
        let base = chart_integral(&cone, identity, &s, &quad, Side::Primal, |x| Ok(gauss(x))).unwrap();
        for _ in 0..2 {
            let h: Vec<f64> = (0..r).map(|_| rng.gen_range(0.7..1.4)).collect();
            let moved = chart_integral(&cone, identity, &s, &quad, Side::Primal, |x| Ok(gauss(&act_diagonal(&cone, &h, x)))).unwrap();
            let mut factor = c(1.0, 0.0);
            for j in 0..r {
                let dh: f64 = (0..r).map(|k| h[k].powi(2 * cone.sigma.get(j, k) as i32)).product();
                factor *= (-s[j] * dh.ln()).exp();
            }
            let want = factor * base;
            assert!((moved - want).norm() < 1e-6 * want.norm(), "{name} h={h:?}: {moved} vs {want}");
        }
    }
}

#[test]
fn chart_and_fibered_engines_agree_on_the_identity_orbit() {
    let quad = QuadratureSpec { nodes_per_axis: 96, ..Default::default() };
    for (name, w) in [("lorentz_1", vec![c(1.2, 0.0), c(0.9, 0.3)]), ("lorentz_4", vec![c(1.4, 0.0), c(1.1, 0.0)])] {
        let cone = load_catalog_cone(name).unwrap();
        let s = SpectralPoint::from_w(&cone, &w).unwrap().s;
        let f = TestFunction::gaussian(cone.dim());
        let fibered = zeta_vector(&cone, &f, &s, &quad, Side::Primal).unwrap().values[0];
        let identity = SignVector { rank: 2, index: 0 };
        let chart = conezeta::zeta::chart::chart_zeta(&cone, identity, &f, &s, &quad, Side::Primal).unwrap();
        assert!((chart - fibered).norm() < 1e-6 * fibered.norm(), "{name}: {chart} vs {fibered}");
    }
}

#[test]
fn scale_covariance_on_the_orthant() {
    // Z(f(λ·); s) = λ^{−s} Z(f; s) for the measure dx/|x|
    let cone = load_catalog_cone("orthant_1").unwrap();
    let quad = QuadratureSpec { nodes_per_axis: 128, ..Default::default() };
    let s = [c(0.7, 0.4)];
    let base = zeta_vector(&cone, &TestFunction::gaussian(1), &s, &quad, Side::Primal).unwrap().values;
    for lambda in [0.6, 1.7] {
        for (i, eps) in SignVector::all(1).enumerate() {
            let v = chart_integral(&cone, eps, &s, &quad, Side::Primal, |x| Ok(c((-PI * lambda * lambda * x[0] * x[0]).exp(), 0.0))).unwrap();
            let want = (-s[0] * lambda.ln()).exp() * base[i];
            assert!((v - want).norm() < 1e-9 * want.norm(), "λ={lambda}: {v} vs {want}");
        }
    }
}

#[test]
fn parity_selection_on_the_orthant() {
    let cone = load_catalog_cone("orthant_2").unwrap();
    let f = make_test_function(&TestKind::Hermite(vec![1, 0]), 2).unwrap();
    let quad = QuadratureSpec::default();
    for b in ParityVector::all(2) {
        let (zb, gap) = zeta_distribution(&cone, b, &f, &[c(0.6, 0.0), c(0.8, 0.0)], &quad, Side::Primal).unwrap();
        assert!(gap < 1e-12);
        if b.bits() == vec![1, 0] {
            assert!(zb.norm() > 1e-3);
        } else {
            assert!(zb.norm() < 1e-10, "b={:?}: {zb}", b.bits());
        }
    }
}

#[test]
fn completion_factors_rebuild_the_reduced_gamma_matrix() {
    // J Λ(w)^{-1} E Λ(v) ᵀJ = Γ(w)/(2π)^{|w|} · A_reduced(w)
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["orthant_2", "lorentz_4", "rank3_quat"] {
        let cone = load_catalog_cone(name).unwrap();
        let m = check_completion_condition(&cone.structure).unwrap();
        let r = cone.rank();
        let n = 1usize << r;
        let j = build_j(r).unwrap().j.map(|x| c(x, 0.0));
        let e = epsilon_factor(m, r);
        for _ in 0..10 {
            let w: Vec<Complex64> = (0..r).map(|_| c(rng.gen_range(0.1..0.9), rng.gen_range(-2.0..2.0))).collect();
            let point = SpectralPoint::from_w(&cone, &w).unwrap();
            let lw = lambda_matrix(&point.w).unwrap();
            let lv = lambda_matrix(&point.v).unwrap();
            let mid = DMatrix::from_fn(n, n, |a, b| if a == b { e.diagonal[a] * lv[a] / lw[a] } else { c(0.0, 0.0) });
            let lhs = &j * mid * j.transpose();
            let wsum: Complex64 = point.w.iter().sum();
            let coef = gamma_vector(&point.w).unwrap() * (-wsum * (2.0 * PI).ln()).exp();
            let rhs = gamma_matrix_reduced(m, &point.w).values * coef;
            let scale = rhs.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let err = (lhs - &rhs).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(err < 1e-9 * scale, "{name}: {err} vs {scale}");
        }
    }
}

fn small_ratio() -> impl Strategy<Value = Ratio<i64>> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Ratio::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tau_round_trip_is_exact(idx in 0usize..9, s in proptest::collection::vec(small_ratio(), 3)) {
        let names = catalog_names();
        let cone = load_catalog_cone(&names[idx]).unwrap();
        let s = &s[..cone.rank().min(3)];
        prop_assume!(s.len() == cone.rank());
        let tau = tau_transform_q(&cone, s, Direction::PrimalToDual).unwrap();
        prop_assert_eq!(tau_transform_q(&cone, &tau, Direction::DualToPrimal).unwrap(), s.to_vec());
        // w + v = 1 with w = sσ − p/2 and v = τ(s)σ* − q/2
        let w = cone.sigma.row_mul_q(s);
        let v = cone.sigma_star.row_mul_q(&tau);
        for j in 0..cone.rank() {
            let total = w[j] - Ratio::new(cone.structure.p[j], 2) + v[j] - Ratio::new(cone.structure.q[j], 2);
            prop_assert_eq!(total, Ratio::from(1));
        }
    }

    #[test]
    fn derived_constants_are_consistent(rank in 1usize..6, raw in proptest::collection::vec(0i64..6, 15)) {
        let mut table = Vec::new();
        let mut it = raw.iter();
        for k in 2..=rank {
            for j in 1..k {
                table.push((k, j, *it.next().unwrap()));
            }
        }
        let st = derive_constants(&table, rank).unwrap();
        prop_assert!(st.is_consistent());
        for i in 0..rank {
            let p: i64 = table.iter().filter(|e| e.0 == i + 1).map(|e| e.2).sum();
            let q: i64 = table.iter().filter(|e| e.1 == i + 1).map(|e| e.2).sum();
            prop_assert_eq!(st.p[i], p);
            prop_assert_eq!(st.q[i], q);
            prop_assert_eq!(st.d[i] * 2, Ratio::from(2 + p + q));
        }
        let total: i64 = table.iter().map(|e| e.2).sum();
        prop_assert_eq!(st.ambient_dim as i64, rank as i64 + total);
    }

    #[test]
    fn graph_structures_count_edges(n in 1usize..7, mask in 0u32..(1 << 15)) {
        let mut edges = Vec::new();
        let mut bit = 0;
        for a in 0..n {
            for b in a + 1..n {
                if mask >> bit & 1 == 1 {
                    edges.push([a, b]);
                }
                bit += 1;
            }
        }
        let count = edges.len();
        let input = GraphInput { vertices: n, edges };
        match build_structure_from_graph(&input.adjacency().unwrap()) {
            Ok(g) => {
                let total: u32 = g.structure.dims.iter().flatten().sum();
                prop_assert_eq!(total as usize, 4 * count);
                prop_assert_eq!(g.m, Some((count % 2) as u8));
            }
            Err(e) => prop_assert!(matches!(e, Error::NotChordal | Error::NotA4Free)),
        }
    }
}
