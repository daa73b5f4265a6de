//! Dense linear algebra over Z₂.

use alloc::vec::Vec;

/// A bit vector over Z₂ with a fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: alloc::vec![0; len.div_ceil(64)], len }
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the highest set bit.
    pub fn highest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

/// Rank of a set of vectors of equal length.
pub fn rank(vectors: &[BitVec]) -> usize {
    let mut basis: Vec<BitVec> = Vec::new();
    // basis[k] has pivot pivots[k]; pivots are distinct.
    let mut pivots: Vec<usize> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        while let Some(p) = v.highest() {
            match pivots.iter().position(|&q| q == p) {
                Some(k) => v.xor_assign(&basis[k]),
                None => {
                    pivots.push(p);
                    basis.push(v);
                    break;
                }
            }
        }
    }
    basis.len()
}

/// Basis of the kernel of the linear map whose `j`-th column is `columns[j]`.
/// Each kernel vector has length `columns.len()`.
pub fn kernel(columns: &[BitVec]) -> Vec<BitVec> {
    let n = columns.len();
    let mut reduced: Vec<(BitVec, BitVec)> = Vec::new();
    let mut kernel = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        let mut col = c.clone();
        let mut combo = BitVec::from_ones(n, [j]);
        while let Some(p) = col.highest() {
            match reduced.iter().find(|(r, _)| r.highest() == Some(p)) {
                Some((r, rc)) => {
                    col.xor_assign(r);
                    combo.xor_assign(rc);
                }
                None => break,
            }
        }
        if col.is_zero() {
            kernel.push(combo);
        } else {
            reduced.push((col, combo));
        }
    }
    kernel
}
