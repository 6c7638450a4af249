//! Sign vectors ε ∈ {±1}^r and parity vectors a ∈ {0,1}^r.
//!
//! Both index sets are enumerated by the integers `0..2^r` read as bit strings,
//! most significant bit first. Bit 0 means parity 0 or sign `+`, so the
//! lexicographic orders on both sets coincide with the integer order and
//! ε_j = (-1)^{a_j} is order preserving.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignVector {
    pub rank: usize,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParityVector {
    pub rank: usize,
    pub index: usize,
}

fn bit(index: usize, rank: usize, j: usize) -> usize {
    (index >> (rank - 1 - j)) & 1
}

fn from_bits(bits: impl IntoIterator<Item = usize>) -> (usize, usize) {
    let mut index = 0;
    let mut rank = 0;
    for b in bits {
        index = (index << 1) | (b & 1);
        rank += 1;
    }
    (rank, index)
}

impl SignVector {
    pub fn from_signs(signs: &[i8]) -> Self {
        let (rank, index) = from_bits(signs.iter().map(|&s| usize::from(s < 0)));
        SignVector { rank, index }
    }

    pub fn get(&self, j: usize) -> i8 {
        if bit(self.index, self.rank, j) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.rank).map(|j| self.get(j)).collect()
    }

    pub fn to_parity(self) -> ParityVector {
        ParityVector { rank: self.rank, index: self.index }
    }

    /// All 2^r sign vectors in the fixed order.
    pub fn all(rank: usize) -> impl Iterator<Item = SignVector> {
        (0..1usize << rank).map(move |index| SignVector { rank, index })
    }

    pub fn label(&self) -> String {
        self.signs().iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }
}

impl ParityVector {
    pub fn from_bits(bits: &[u8]) -> Self {
        let (rank, index) = from_bits(bits.iter().map(|&b| b as usize));
        ParityVector { rank, index }
    }

    pub fn get(&self, j: usize) -> u8 {
        bit(self.index, self.rank, j) as u8
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.rank).map(|j| self.get(j)).collect()
    }

    /// |a|, the number of ones.
    pub fn weight(&self) -> u32 {
        self.index.count_ones()
    }

    pub fn to_sign(self) -> SignVector {
        SignVector { rank: self.rank, index: self.index }
    }

    pub fn all(rank: usize) -> impl Iterator<Item = ParityVector> {
        (0..1usize << rank).map(move |index| ParityVector { rank, index })
    }

    pub fn label(&self) -> String {
        self.bits().iter().map(|b| char::from(b'0' + b)).collect()
    }
}

/// κ_a(ε) = Π_j ε_j^{a_j}.
pub fn kappa(eps: SignVector, a: ParityVector) -> i8 {
    if (eps.index & a.index).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}
