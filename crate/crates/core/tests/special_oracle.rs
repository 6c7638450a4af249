//! Gamma-function checks against an independent Stirling-series oracle and
//! high-precision reference values.

use conezeta::special::{gamma, gamma_vector, ln_gamma, reflection_duplication};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Γ(z) from the Stirling series after shifting z past |z| ≥ 40 with the recurrence.
fn stirling_gamma(z: Complex64) -> Complex64 {
    const B: [f64; 10] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
        43867.0 / 798.0,
        -174611.0 / 330.0,
    ];
    let mut shift = 0usize;
    while (z + shift as f64).norm() < 40.0 || (z + shift as f64).re < 10.0 {
        shift += 1;
    }
    let w = z + shift as f64;
    let mut ln = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln();
    for (k, b) in B.iter().enumerate() {
        let n = 2 * (k + 1);
        ln += b / ((n * (n - 1)) as f64 * w.powu(n as u32 - 1));
    }
    let mut denom = c(1.0, 0.0);
    for k in 0..shift {
        denom *= z + k as f64;
    }
    ln.exp() / denom
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn reference_values() {
    let cases = [
        (c(3.0, 4.0), c(0.005_225_538_471_369_214_194_7, -0.172_547_079_294_300_187_72)),
        (c(2.0, 1.0), c(0.652_965_496_420_166_727_84, 0.343_065_839_816_545_357_59)),
        (c(-4.3, 2.2), c(0.000_141_393_805_080_601_802_42, 0.000_226_915_952_276_213_534_61)),
        (c(0.1, -30.0), c(-1.452_046_606_782_858_517_2e-21, -1.653_932_490_883_406_107_4e-21)),
        (c(45.0, -12.0), c(-7.251_973_910_293_955_920_1e52, -5.323_948_723_860_877_715e53)),
        (c(-20.5, 0.7), c(3.340_880_539_480_013_128_3e-20, -5.322_103_144_555_553_965_8e-20)),
        (c(0.25, 0.0), c(3.625_609_908_221_908_311_9, 0.0)),
    ];
    for (z, want) in cases {
        let got = gamma(z).unwrap();
        assert!(rel(got, want) < 1e-12, "Γ({z}) = {got}, want {want}");
    }
}

#[test]
fn oracle_agrees_at_three_plus_four_i() {
    let z = c(3.0, 4.0);
    assert!(rel(gamma(z).unwrap(), stirling_gamma(z)) < 1e-12);
    assert!(rel(ln_gamma(z).unwrap().exp(), stirling_gamma(z)) < 1e-12);
}

#[test]
fn gamma_vector_against_oracle() {
    let v = gamma_vector(&[c(2.0, 1.0), c(3.0, 0.0)]).unwrap();
    let want = stirling_gamma(c(2.0, 1.0)) * 2.0;
    assert!(rel(v, want) < 1e-12);
}

#[test]
fn grid_against_oracle() {
    let mut worst = 0.0f64;
    for i in -20..=20 {
        for k in -20..=20 {
            let z = c(i as f64 * 2.5 + 0.137, k as f64 * 2.5);
            let r = rel(gamma(z).unwrap(), stirling_gamma(z));
            worst = worst.max(r);
        }
    }
    assert!(worst < 1e-12, "worst relative error {worst:e}");
}

fn off_pole(re: f64, im: f64, dist: f64) -> bool {
    !(re < 0.5 && im.abs() < dist && (re - re.round()).abs() < dist)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn recurrence(re in -30.0f64..30.0, im in -30.0f64..30.0) {
        prop_assume!(off_pole(re, im, 1e-3) && off_pole(re + 1.0, im, 1e-3));
        let z = c(re, im);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn reflection(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        prop_assume!(off_pole(re, im, 0.05) && off_pole(1.0 - re, im, 0.05));
        let z = c(re, im);
        let prod = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * (z * PI).sin();
        prop_assert!((prod - PI).norm() < 1e-10 * PI);
    }

    #[test]
    fn duplication(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let z = c(re, im);
        prop_assume!(off_pole(re, im, 0.05) && off_pole(re / 2.0, im / 2.0, 0.05) && off_pole((re + 1.0) / 2.0, im / 2.0, 0.05));
        let rhs = (z * 2f64.ln()).exp() / (2.0 * PI.sqrt()) * gamma(z / 2.0).unwrap() * gamma((z + 1.0) / 2.0).unwrap();
        prop_assert!(rel(gamma(z).unwrap(), rhs) < 1e-10);
    }

    #[test]
    fn reflection_duplication_identity(re in -5.0f64..5.0, im in -5.0f64..5.0, a in 0u8..2) {
        let z = c(re, im);
        let af = a as f64;
        prop_assume!(off_pole(re, im, 0.1) && off_pole((re + af) / 2.0, im / 2.0, 0.1) && off_pole((1.0 - re + af) / 2.0, -im / 2.0, 0.1));
        let (l, r) = reflection_duplication(z, a).unwrap();
        prop_assert!((l - r).norm() <= 1e-10 * r.norm().max(l.norm()).max(1e-300));
    }
}
