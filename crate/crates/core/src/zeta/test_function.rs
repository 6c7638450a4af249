//! Hermite–Gaussian test functions with exact Fourier transforms.
//!
//! The one-dimensional family is h_k(x) = P_k(x) e^{-πx²} with P_k monic,
//! P_0 = 1, P_1 = x, P_{k+1} = x P_k − (k/4π) P_{k−1}. With the kernel e^{2πixy}
//! these satisfy ĥ_k = i^k h_k, so h_0 is the Gaussian e^{-πx²} and h_1 = x e^{-πx²}.

use crate::error::{Error, Result};
use crate::special::{gamma, near_pole, POLE_GUARD};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Ascending coefficients of the monic polynomial P_k.
pub fn hermite_poly(k: u32) -> Vec<f64> {
    let mut prev = vec![1.0];
    if k == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 1.0];
    for m in 1..k {
        let mut next = vec![0.0; cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= m as f64 / (4.0 * PI) * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// A one-dimensional factor P(x) e^{-πx²} with real polynomial P.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussFactor {
    pub poly: Vec<f64>,
}

impl GaussFactor {
    pub fn hermite(k: u32) -> Self {
        GaussFactor { poly: hermite_poly(k) }
    }

    pub fn value(&self, x: f64) -> f64 {
        let p = self.poly.iter().rev().fold(0.0, |acc, c| acc * x + c);
        p * (-PI * x * x).exp()
    }

    /// First `len` Taylor coefficients at 0.
    pub fn taylor(&self, len: usize) -> Vec<f64> {
        let mut out = vec![0.0; len];
        let mut term = 1.0;
        for m in 0..len.div_ceil(2) {
            if m > 0 {
                term *= -PI / m as f64;
            }
            for (i, c) in self.poly.iter().enumerate() {
                let idx = 2 * m + i;
                if idx < len {
                    out[idx] += c * term;
                }
            }
        }
        out
    }

    /// ∫_R x^j P(x) e^{-πx²} dx.
    pub fn moment(&self, j: usize) -> f64 {
        self.poly
            .iter()
            .enumerate()
            .filter(|(i, _)| (i + j) % 2 == 0)
            .map(|(i, c)| {
                let nu = (i + j + 1) as f64 / 2.0;
                c * gamma(Complex64::new(nu, 0.0)).expect("positive argument").re / PI.powf(nu)
            })
            .sum()
    }

    /// ∫_0^∞ x^ν P(±x) e^{-πx²} dx, continued meromorphically in ν.
    pub fn half_moment(&self, nu: Complex64, sign: i8) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &c) in self.poly.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let z = (nu + i as f64 + 1.0) / 2.0;
            if near_pole(z, POLE_GUARD) {
                return Err(Error::Pole(format!("half moment at ν = {nu}")));
            }
            let sgn = if sign < 0 && i % 2 == 1 { -1.0 } else { 1.0 };
            acc += sgn * c * gamma(z)? * (-z * PI.ln()).exp() / 2.0;
        }
        Ok(acc)
    }
}

/// Σ_k c_k h_k(ξ) in orthonormal coordinates, h_k = Π_i h_{k_i}(ξ_i).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    pub dimension: usize,
    pub terms: BTreeMap<Vec<u32>, Complex64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestKind {
    Gaussian,
    /// Degree per coordinate.
    Hermite(Vec<u32>),
    Combination(Vec<(Vec<u32>, Complex64)>),
}

pub fn make_test_function(kind: &TestKind, dimension: usize) -> Result<TestFunction> {
    let mut terms = BTreeMap::new();
    let check = |k: &Vec<u32>| {
        if k.len() != dimension {
            Err(Error::Dimension { expected: dimension, got: k.len() })
        } else {
            Ok(())
        }
    };
    match kind {
        TestKind::Gaussian => {
            terms.insert(vec![0; dimension], Complex64::new(1.0, 0.0));
        }
        TestKind::Hermite(k) => {
            check(k)?;
            terms.insert(k.clone(), Complex64::new(1.0, 0.0));
        }
        TestKind::Combination(list) => {
            for (k, c) in list {
                check(k)?;
                *terms.entry(k.clone()).or_insert(Complex64::new(0.0, 0.0)) += c;
            }
        }
    }
    Ok(TestFunction { dimension, terms })
}

impl TestFunction {
    pub fn gaussian(dimension: usize) -> Self {
        make_test_function(&TestKind::Gaussian, dimension).expect("gaussian is always valid")
    }

    /// Coefficient at k multiplied by i^{|k|}.
    pub fn fourier(&self) -> TestFunction {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c * I.powu(k.iter().sum::<u32>())))
            .collect();
        TestFunction { dimension: self.dimension, terms }
    }

    pub fn evaluate(&self, xi: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| c * k.iter().zip(xi).map(|(&d, &x)| GaussFactor::hermite(d).value(x)).product::<f64>())
            .sum()
    }

    /// Coefficientwise difference, used for exact comparisons.
    pub fn max_coefficient_gap(&self, other: &TestFunction) -> f64 {
        let keys: std::collections::BTreeSet<&Vec<u32>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .map(|k| {
                let a = self.terms.get(k).copied().unwrap_or_default();
                let b = other.terms.get(k).copied().unwrap_or_default();
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }

    /// f(−x): coefficients times (−1)^{|k|}.
    pub fn reflect(&self) -> TestFunction {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), if k.iter().sum::<u32>() % 2 == 0 { *c } else { -c }))
            .collect();
        TestFunction { dimension: self.dimension, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.norm() == 0.0)
    }

    pub fn descriptor(&self) -> serde_json::Value {
        serde_json::json!(self
            .terms
            .iter()
            .map(|(k, c)| serde_json::json!({ "degree": k, "coef": [c.re, c.im] }))
            .collect::<Vec<_>>())
    }
}
