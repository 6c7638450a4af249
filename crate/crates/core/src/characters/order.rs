use crate::cone::model::parity_times;
use crate::cone::{IntMatrix, ParityVector};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The bijection a ↦ aσ mod 2 and the order A_σ it induces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaOrder {
    /// `map[a] = aσ mod 2`, as indices in the fixed order.
    pub map: Vec<usize>,
    /// Parity vectors b listed in A_σ order (b ≺ b' iff bσ < b'σ).
    pub order: Vec<usize>,
}

impl SigmaOrder {
    /// Position of b in A_σ, which is the fixed-order index of bσ.
    pub fn position(&self, b: usize) -> usize {
        self.map[b]
    }
}

pub fn order_map_sigma(sigma: &IntMatrix) -> Result<SigmaOrder> {
    let r = sigma.size();
    let map: Vec<usize> = ParityVector::all(r).map(|a| parity_times(a, sigma).index).collect();
    let mut order = vec![usize::MAX; map.len()];
    for (b, &img) in map.iter().enumerate() {
        if order[img] != usize::MAX {
            return Err(Error::InvalidStructure("σ is not invertible mod 2".into()));
        }
        order[img] = b;
    }
    Ok(SigmaOrder { map, order })
}

/// R σ* R^{-1} for the anti-diagonal reversal R, and whether it equals σ.
pub fn reversal_conjugation_check(sigma: &IntMatrix, sigma_star: &IntMatrix) -> Result<(IntMatrix, bool)> {
    let r = sigma.size();
    if sigma_star.size() != r {
        return Err(Error::Dimension { expected: r, got: sigma_star.size() });
    }
    let conj = IntMatrix((0..r).map(|i| (0..r).map(|j| sigma_star.get(r - 1 - i, r - 1 - j)).collect()).collect());
    let equal = conj == *sigma;
    Ok((conj, equal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::load_catalog_cone;

    #[test]
    fn identity_order() {
        let o = order_map_sigma(&IntMatrix::identity(3)).unwrap();
        assert_eq!(o.map, (0..8).collect::<Vec<_>>());
        assert_eq!(o.order, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn vinberg_map() {
        let v = load_catalog_cone("vinberg").unwrap();
        let o = order_map_sigma(&v.sigma).unwrap();
        let b = ParityVector::from_bits(&[1, 1, 0]);
        assert_eq!(o.map[b.index], ParityVector::from_bits(&[0, 1, 0]).index);
        let mut seen = o.map.clone();
        seen.sort_unstable();
        assert_eq!(seen, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn reversal_examples() {
        let q = load_catalog_cone("rank3_quat").unwrap();
        let (m, eq) = reversal_conjugation_check(&q.sigma, &q.sigma_star).unwrap();
        assert_eq!(m.0, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]);
        assert!(!eq);
        let l = load_catalog_cone("lorentz_4").unwrap();
        let (m, eq) = reversal_conjugation_check(&l.sigma, &l.sigma_star).unwrap();
        assert_eq!(m.0, vec![vec![1, 0], vec![1, 1]]);
        assert!(eq);
        let o = load_catalog_cone("orthant_3").unwrap();
        assert!(reversal_conjugation_check(&o.sigma, &o.sigma_star).unwrap().1);
    }
}
