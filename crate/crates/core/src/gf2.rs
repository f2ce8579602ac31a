//! Bit-packed square matrices over GF(2).

use thiserror::Error;

use crate::graph::{low_mask, LoopedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("diagonal mask has bits beyond the {n} matrix rows")]
    MaskWidth { n: usize },
    #[error("row {row} has {len} entries, expected {n}")]
    RowWidth { row: usize, len: usize, n: usize },
}

/// Square bit matrix; row `i` is stored as `words` little-endian `u64` words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self { n, words, bits: vec![0; n * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_bool_rows(rows: &[Vec<bool>]) -> Result<Self, Gf2Error> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Gf2Error::RowWidth { row: i, len: row.len(), n });
            }
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        Ok(m)
    }

    /// Builds from single-word rows (`n <= 64`).
    pub fn from_word_rows(rows: &[u64]) -> Self {
        assert!(rows.len() <= 64);
        let n = rows.len();
        Self { n, words: 1, bits: rows.iter().map(|r| r & low_mask(n)).collect() }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Row rank over GF(2).
    pub fn rank(&self) -> usize {
        if self.words == 1 {
            let mut rows = self.bits.clone();
            return rank_words(&mut rows);
        }
        let mut rows = self.bits.clone();
        rank_multiword(&mut rows, self.words, self.n)
    }

    pub fn nullity(&self) -> usize {
        self.n - self.rank()
    }
}

/// In-place rank of single-word rows; the slice is clobbered.
///
/// Pivot on the lowest set bit of each remaining row and clear that bit from
/// every later row.
#[inline]
pub fn rank_words(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    let len = rows.len();
    for i in 0..len {
        let pivot_row = rows[i];
        if pivot_row == 0 {
            continue;
        }
        rank += 1;
        let pivot = pivot_row & pivot_row.wrapping_neg();
        for r in &mut rows[i + 1..] {
            if *r & pivot != 0 {
                *r ^= pivot_row;
            }
        }
    }
    rank
}

fn rank_multiword(bits: &mut [u64], words: usize, n: usize) -> usize {
    let mut rank = 0;
    for i in 0..n {
        let (head, tail) = bits.split_at_mut((i + 1) * words);
        let row = &head[i * words..];
        let Some((w, b)) = row.iter().enumerate().find(|(_, &x)| x != 0).map(|(w, &x)| (w, x & x.wrapping_neg()))
        else {
            continue;
        };
        rank += 1;
        for r in tail.chunks_mut(words) {
            if r[w] & b != 0 {
                for (dst, src) in r.iter_mut().zip(row) {
                    *dst ^= src;
                }
            }
        }
    }
    rank
}

/// `A(G) + Δ`: adjacency off the diagonal, `loop(i) XOR Δ_i` on it.
pub fn adjacency_with_mask(g: &LoopedGraph, delta: u64) -> Result<Gf2Matrix, Gf2Error> {
    let n = g.n();
    if delta & !low_mask(n) != 0 {
        return Err(Gf2Error::MaskWidth { n });
    }
    let diag = g.loop_mask() ^ delta;
    let rows: Vec<u64> = (0..n).map(|i| g.row(i) | (diag & (1 << i))).collect();
    Ok(Gf2Matrix::from_word_rows(&rows))
}

/// Boolean adjacency matrix `A(G)` with loops on the diagonal.
pub fn adjacency_matrix(g: &LoopedGraph) -> Gf2Matrix {
    adjacency_with_mask(g, 0).expect("zero mask always fits")
}
