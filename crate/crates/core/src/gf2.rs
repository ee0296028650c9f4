//! Dense bit-packed matrices over GF(2) with Gauss-Jordan elimination.

use rayon::prelude::*;

/// Below this many words per elimination step the row sweep stays serial.
const PAR_THRESHOLD: usize = 1 << 14;

/// Row-major bit matrix; each row is `stride` 64-bit words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        let w = &mut self.data[r * self.stride + c / 64];
        if bit {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Reduces to reduced row-echelon form in place and returns the pivot
    /// column of each nonzero row, in row order. Pivots are chosen as the
    /// first row at or below the current position with the column set.
    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_with(PAR_THRESHOLD)
    }

    fn rref_with(&mut self, par_threshold: usize) -> Vec<usize> {
        let stride = self.stride;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (w, b) = (c / 64, c % 64);
            let Some(p) = (rank..self.rows).find(|&r| (self.data[r * stride + w] >> b) & 1 == 1)
            else {
                continue;
            };
            if p != rank {
                for i in 0..stride {
                    self.data.swap(p * stride + i, rank * stride + i);
                }
            }
            let pivot: Vec<u64> = self.row(rank)[w..].to_vec();
            let sweep = |(r, row): (usize, &mut [u64])| {
                if r != rank && (row[w] >> b) & 1 == 1 {
                    for (x, y) in row[w..].iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            };
            if self.rows * (stride - w) >= par_threshold {
                self.data.par_chunks_mut(stride).enumerate().for_each(sweep);
            } else {
                self.data.chunks_mut(stride).enumerate().for_each(sweep);
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free column
    /// in ascending column order, each as a `cols`-bit word vector.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        m.kernel_from_rref(&pivots, usize::MAX)
    }

    /// First kernel basis vector, if the kernel is nontrivial.
    pub fn first_kernel_vector(&self) -> Option<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref();
        m.kernel_from_rref(&pivots, 1).pop()
    }

    fn kernel_from_rref(&self, pivots: &[usize], limit: usize) -> Vec<Vec<u64>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            if out.len() == limit {
                break;
            }
            let mut v = vec![0u64; self.stride];
            v[free / 64] |= 1 << (free % 64);
            for (r, &p) in pivots.iter().enumerate() {
                if self.get(r, free) {
                    v[p / 64] |= 1 << (p % 64);
                }
            }
            out.push(v);
        }
        out
    }

    /// `A x` for a bit vector `x` of length `cols`.
    pub fn mul_vec(&self, x: &[u64]) -> Vec<bool> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .map(|(a, b)| (a & b).count_ones())
                    .sum::<u32>()
                    % 2
                    == 1
            })
            .collect()
    }
}
