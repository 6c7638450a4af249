//! Generalized power series Σ_g t^{e_g} Σ_j c_{g,j} t^j and their Hadamard finite-part
//! integrals over (0, t0].

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Number of retained terms per exponent group.
pub const TERMS: usize = 40;

#[derive(Clone, Debug, PartialEq)]
pub struct GSeries {
    pub groups: Vec<(Complex64, Vec<Complex64>)>,
}

fn same_base(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < 1e-12
}

impl GSeries {
    pub fn power(coeffs: Vec<Complex64>) -> Self {
        GSeries { groups: vec![(Complex64::new(0.0, 0.0), coeffs)] }
    }

    pub fn from_groups(groups: Vec<(Complex64, Vec<Complex64>)>) -> Self {
        let mut s = GSeries { groups: Vec::new() };
        for (e, c) in groups {
            s.add_group(e, c);
        }
        s
    }

    fn add_group(&mut self, base: Complex64, coeffs: Vec<Complex64>) {
        if let Some((_, existing)) = self.groups.iter_mut().find(|(e, _)| same_base(*e, base)) {
            for (a, b) in existing.iter_mut().zip(coeffs) {
                *a += b;
            }
        } else {
            self.groups.push((base, coeffs));
        }
    }

    pub fn scale(mut self, k: Complex64) -> Self {
        for (_, c) in self.groups.iter_mut() {
            for v in c.iter_mut() {
                *v *= k;
            }
        }
        self
    }

    pub fn mul(&self, other: &GSeries) -> GSeries {
        let mut out = GSeries { groups: Vec::new() };
        for (ea, ca) in &self.groups {
            for (eb, cb) in &other.groups {
                let mut c = vec![Complex64::new(0.0, 0.0); TERMS];
                for (i, a) in ca.iter().enumerate() {
                    if *a == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for (j, b) in cb.iter().enumerate().take(TERMS - i) {
                        c[i + j] += a * b;
                    }
                }
                out.add_group(ea + eb, c);
            }
        }
        out
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let lt = t.ln();
        self.groups
            .iter()
            .map(|(e, c)| {
                let head = (e * lt).exp();
                head * c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, v| acc * t + v)
            })
            .sum()
    }

    /// Finite part of ∫_0^{t0} t^λ · series dt, termwise Σ c t0^{λ+e+j+1}/(λ+e+j+1).
    ///
    /// A vanishing denominator with an exactly zero coefficient is skipped; with a
    /// nonzero coefficient it is a genuine pole and reported as such.
    pub fn finite_part(&self, lambda: Complex64, t0: f64) -> Result<Complex64> {
        let lt = t0.ln();
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.groups {
            for (j, &v) in c.iter().enumerate() {
                let p = lambda + e + j as f64 + 1.0;
                if p.norm() < 1e-8 {
                    if v == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    return Err(Error::Pole(format!("orbit integral has a pole (exponent {p})")));
                }
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                acc += v * (p * lt).exp() / p;
            }
        }
        Ok(acc)
    }
}

/// Pochhammer symbol (x)_j.
pub fn pochhammer(x: Complex64, j: usize) -> Complex64 {
    (0..j).fold(Complex64::new(1.0, 0.0), |acc, i| acc * (x + i as f64))
}

/// Generalized binomial coefficient binom(x, j) by the product formula.
pub fn binom(x: Complex64, j: usize) -> Complex64 {
    (0..j).fold(Complex64::new(1.0, 0.0), |acc, i| acc * (x - i as f64) / (i as f64 + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn finite_part_matches_continuation() {
        // ∫_0^1 t^λ dt = 1/(λ+1) for every λ ≠ −1
        let s = GSeries::power(vec![c(1.0)]);
        let v = s.finite_part(c(-2.5), 1.0).unwrap();
        assert!((v - c(1.0 / -1.5)).norm() < 1e-15);
        assert!(s.finite_part(c(-1.0), 1.0).is_err());
        // removable: zero coefficient on the pole
        let s = GSeries::power(vec![c(1.0), c(0.0)]);
        assert!(s.finite_part(c(-2.0), 0.5).is_ok());
    }

    #[test]
    fn products_merge_exponents() {
        let a = GSeries::from_groups(vec![(c(0.5), vec![c(1.0), c(2.0)]), (c(0.0), vec![c(1.0)])]);
        let b = GSeries::from_groups(vec![(c(-0.5), vec![c(3.0)])]);
        let p = a.mul(&b);
        assert_eq!(p.groups.len(), 2);
        let t = 0.3;
        assert!((p.eval(t) - a.eval(t) * b.eval(t)).norm() < 1e-14);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(c(-2.0), 3), c(-4.0));
        assert_eq!(pochhammer(c(1.0), 4), c(24.0));
    }
}
