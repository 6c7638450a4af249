use crate::cone::signs::SignVector;
use crate::error::{Error, Result};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Rank, structure constants n_kj and the derived vectors p, q, d.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeStructure {
    pub rank: usize,
    /// `dims[k][j]` = n_kj for j < k (zero-based), zero elsewhere.
    pub dims: Vec<Vec<u32>>,
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    pub d: Vec<Ratio<i64>>,
    pub ambient_dim: usize,
}

/// Computes p, q, d and n from the structure constants.
///
/// `table` lists `(k, j, n_kj)` with one-based indices and j < k; pairs not listed are zero.
pub fn derive_constants(table: &[(usize, usize, i64)], rank: usize) -> Result<ConeStructure> {
    if rank == 0 {
        return Err(Error::InvalidStructure("rank must be positive".into()));
    }
    let mut dims = vec![vec![0u32; rank]; rank];
    for &(k, j, n) in table {
        if !(1 <= j && j < k && k <= rank) {
            return Err(Error::InvalidStructure(format!("entry ({k},{j}) is not below the diagonal of a rank-{rank} table")));
        }
        if n < 0 {
            return Err(Error::InvalidStructure(format!("n_{k}{j} = {n} is negative")));
        }
        dims[k - 1][j - 1] = n as u32;
    }
    Ok(from_dims(dims))
}

pub(crate) fn from_dims(dims: Vec<Vec<u32>>) -> ConeStructure {
    let rank = dims.len();
    let p: Vec<i64> = (0..rank).map(|k| (0..k).map(|j| dims[k][j] as i64).sum()).collect();
    let q: Vec<i64> = (0..rank).map(|j| (j + 1..rank).map(|k| dims[k][j] as i64).sum()).collect();
    let d = (0..rank).map(|i| Ratio::new(2 + p[i] + q[i], 2)).collect();
    let ambient_dim = rank + p.iter().sum::<i64>() as usize;
    ConeStructure { rank, dims, p, q, d, ambient_dim }
}

impl ConeStructure {
    pub fn n(&self, k: usize, j: usize) -> u32 {
        if j < k {
            self.dims[k][j]
        } else {
            0
        }
    }

    /// The off-diagonal blocks (k, j, n_kj) with n_kj > 0, in lexicographic order.
    pub fn blocks(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for k in 0..self.rank {
            for j in 0..k {
                if self.dims[k][j] > 0 {
                    out.push((k, j, self.dims[k][j] as usize));
                }
            }
        }
        out
    }

    pub fn d_f64(&self) -> Vec<f64> {
        self.d.iter().map(|x| *x.numer() as f64 / *x.denom() as f64).collect()
    }

    pub fn p_f64(&self) -> Vec<f64> {
        self.p.iter().map(|&x| x as f64).collect()
    }

    pub fn q_f64(&self) -> Vec<f64> {
        self.q.iter().map(|&x| x as f64).collect()
    }

    /// Recomputes p, q, d and n from `dims` and compares with the stored values.
    pub fn is_consistent(&self) -> bool {
        from_dims(self.dims.clone()) == *self
    }
}

/// Returns m when Σ_{j<k} ε_j δ_k n_kj ≡ 4m (mod 8) for every sign pair, and `None` otherwise.
pub fn check_completion_condition(s: &ConeStructure) -> Option<u8> {
    let mut found: Option<i64> = None;
    for eps in SignVector::all(s.rank) {
        for delta in SignVector::all(s.rank) {
            let mut sum = 0i64;
            for k in 0..s.rank {
                for j in 0..k {
                    sum += (eps.get(j) * delta.get(k)) as i64 * s.dims[k][j] as i64;
                }
            }
            let res = sum.rem_euclid(8);
            if res != 0 && res != 4 {
                return None;
            }
            match found {
                None => found = Some(res),
                Some(f) if f != res => return None,
                _ => {}
            }
        }
    }
    found.map(|r| (r / 4) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table() {
        let s = derive_constants(&[], 2).unwrap();
        assert_eq!(s.p, vec![0, 0]);
        assert_eq!(s.q, vec![0, 0]);
        assert_eq!(s.d, vec![Ratio::from(1), Ratio::from(1)]);
        assert_eq!(s.ambient_dim, 2);
        assert_eq!(check_completion_condition(&s), Some(0));
    }

    #[test]
    fn quaternionic_rank_three() {
        let s = derive_constants(&[(2, 1, 4), (3, 1, 4)], 3).unwrap();
        assert_eq!(s.p, vec![0, 4, 4]);
        assert_eq!(s.q, vec![8, 0, 0]);
        assert_eq!(s.d, vec![Ratio::from(5), Ratio::from(3), Ratio::from(3)]);
        assert_eq!(s.ambient_dim, 11);
        assert_eq!(check_completion_condition(&s), Some(0));
    }

    #[test]
    fn vinberg_constants() {
        let s = derive_constants(&[(2, 1, 1), (3, 1, 1)], 3).unwrap();
        assert_eq!(s.d, vec![Ratio::from(2), Ratio::new(3, 2), Ratio::new(3, 2)]);
        assert_eq!(s.ambient_dim, 5);
        assert_eq!(check_completion_condition(&s), None);
    }

    #[test]
    fn lorentz_four_has_m_one() {
        let s = derive_constants(&[(2, 1, 4)], 2).unwrap();
        assert_eq!(check_completion_condition(&s), Some(1));
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(derive_constants(&[(1, 2, 1)], 2).is_err());
        assert!(derive_constants(&[(2, 1, -1)], 2).is_err());
        assert!(derive_constants(&[], 0).is_err());
    }
}
