//! Small exact integer matrices (multiplier matrices and their inverses).

use crate::error::{Error, Result};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

type Q = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntMatrix(pub Vec<Vec<i64>>);

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        IntMatrix((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.size();
        IntMatrix(
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| self.0[i][k] * other.0[k][j]).sum()).collect())
                .collect(),
        )
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.size();
        IntMatrix((0..n).map(|i| (0..n).map(|j| self.0[j][i]).collect()).collect())
    }

    /// Row vector times matrix over the rationals.
    pub fn row_mul_q(&self, v: &[Q]) -> Vec<Q> {
        let n = self.size();
        (0..n).map(|j| (0..n).fold(Q::from(0), |acc, k| acc + v[k] * self.0[k][j])).collect()
    }

    /// Row vector times matrix over f64-like types.
    pub fn row_mul<T>(&self, v: &[T]) -> Vec<T>
    where
        T: Copy + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T> + Default,
    {
        let n = self.size();
        (0..n).map(|j| (0..n).fold(T::default(), |acc, k| acc + v[k] * self.0[k][j] as f64)).collect()
    }

    /// Exact inverse by Gauss-Jordan elimination over the rationals.
    pub fn inverse_q(&self) -> Result<Vec<Vec<Q>>> {
        let n = self.size();
        let mut a: Vec<Vec<Q>> = self.0.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect();
        let mut inv: Vec<Vec<Q>> =
            (0..n).map(|i| (0..n).map(|j| Q::from(i64::from(i == j))).collect()).collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a[r][col] != Q::from(0))
                .ok_or_else(|| Error::InvalidStructure("singular multiplier matrix".into()))?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let p = a[col][col];
            for j in 0..n {
                a[col][j] /= p;
                inv[col][j] /= p;
            }
            for r in 0..n {
                if r != col && a[r][col] != Q::from(0) {
                    let f = a[r][col];
                    for j in 0..n {
                        let (x, y) = (a[col][j], inv[col][j]);
                        a[r][j] -= f * x;
                        inv[r][j] -= f * y;
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Inverse of a unimodular matrix, which is again integral.
    pub fn inverse(&self) -> Result<IntMatrix> {
        let q = self.inverse_q()?;
        let mut out = Vec::with_capacity(q.len());
        for row in q {
            let mut r = Vec::with_capacity(row.len());
            for x in row {
                if !x.is_integer() {
                    return Err(Error::InvalidStructure("multiplier matrix is not unimodular".into()));
                }
                r.push(x.to_integer());
            }
            out.push(r);
        }
        Ok(IntMatrix(out))
    }

    pub fn det(&self) -> i64 {
        let n = self.size();
        let mut a: Vec<Vec<Q>> = self.0.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect();
        let mut det = Q::from(1);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r][col] != Q::from(0)) else {
                return 0;
            };
            if piv != col {
                a.swap(col, piv);
                det = -det;
            }
            det *= a[col][col];
            for r in col + 1..n {
                let f = a[r][col] / a[col][col];
                for j in col..n {
                    let x = a[col][j];
                    a[r][j] -= f * x;
                }
            }
        }
        det.to_integer()
    }

    pub fn is_unimodular_unit_diagonal(&self) -> bool {
        (0..self.size()).all(|i| self.0[i][i] == 1) && self.det().abs() == 1
    }
}
