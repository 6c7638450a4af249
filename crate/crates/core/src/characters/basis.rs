use crate::cone::{kappa, ParityVector, SignVector};
use crate::error::{Error, Result};
use nalgebra::DMatrix;

/// κ_a as a column indexed by ε in the fixed order.
pub fn kappa_vector(a: ParityVector) -> Vec<i8> {
    SignVector::all(a.rank).map(|e| kappa(e, a)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterBasis {
    pub rank: usize,
    /// `kappa[ε][a]`.
    pub kappa: Vec<Vec<i8>>,
    /// J = 2^{-r/2} (κ_a)_a, rows ε and columns a.
    pub j: DMatrix<f64>,
}

pub fn build_j(r: usize) -> Result<CharacterBasis> {
    if !(1..=12).contains(&r) {
        return Err(Error::RankOutOfRange(r));
    }
    let size = 1usize << r;
    let kappa: Vec<Vec<i8>> = SignVector::all(r)
        .map(|e| ParityVector::all(r).map(|a| crate::cone::kappa(e, a)).collect())
        .collect();
    let norm = (size as f64).sqrt().recip();
    let j = DMatrix::from_fn(size, size, |row, col| kappa[row][col] as f64 * norm);
    Ok(CharacterBasis { rank: r, kappa, j })
}

impl CharacterBasis {
    /// max |ᵀJ J − I|.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.j.nrows();
        let prod = self.j.transpose() * &self.j;
        let mut worst = 0.0f64;
        for i in 0..n {
            for k in 0..n {
                let target = if i == k { 1.0 } else { 0.0 };
                worst = worst.max((prod[(i, k)] - target).abs());
            }
        }
        worst
    }

    /// True when κ_a·κ_b = 2^r δ_ab for all a, b, in integer arithmetic.
    pub fn kappa_orthogonal(&self) -> bool {
        let n = self.kappa.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let dot: i64 = (0..n).map(|e| self.kappa[e][a] as i64 * self.kappa[e][b] as i64).sum();
                dot == if a == b { n as i64 } else { 0 }
            })
        })
    }
}
