use serde::Serialize;

use crate::boolfun::TruthTable;

/// Walsh spectrum `W_f(l) = sum_x (-1)^(f(x) + l . x)` under the dot product
/// on index bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalshSpectrum {
    pub n: u32,
    pub values: Vec<i32>,
}

impl WalshSpectrum {
    pub fn max_abs(&self) -> u32 {
        self.values
            .iter()
            .map(|v| v.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Smallest index attaining [`Self::max_abs`].
    pub fn argmax_abs(&self) -> usize {
        let best = self.max_abs();
        self.values
            .iter()
            .position(|v| v.unsigned_abs() == best)
            .unwrap_or(0)
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.values
            .iter()
            .map(|&v| (v as i64 * v as i64) as u64)
            .sum()
    }
}

/// In-place integer butterfly, `O(n 2^n)`.
pub fn fwht(values: &mut [i32]) {
    let len = values.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in values.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

pub fn walsh_spectrum(tt: &TruthTable) -> WalshSpectrum {
    let mut values: Vec<i32> = (0..tt.len() as u32)
        .map(|v| if tt.get(v) { -1 } else { 1 })
        .collect();
    fwht(&mut values);
    WalshSpectrum { n: tt.n(), values }
}

/// `2^(n-1) - max |W_f| / 2`.
pub fn nonlinearity(tt: &TruthTable) -> u64 {
    let spectrum = walsh_spectrum(tt);
    (1u64 << (tt.n() - 1)) - spectrum.max_abs() as u64 / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_function_spectrum() {
        let w = walsh_spectrum(&TruthTable::zero(4).unwrap());
        assert_eq!(w.values[0], 16);
        assert!(w.values[1..].iter().all(|&v| v == 0));
    }

    #[test]
    fn matches_direct_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let tt = TruthTable::from_fn(7, |_| rng.gen()).unwrap();
        let w = walsh_spectrum(&tt);
        for l in 0..128u32 {
            let direct: i32 = (0..128u32)
                .map(|x| {
                    let e = tt.get(x) as u32 + (l & x).count_ones();
                    if e % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .sum();
            assert_eq!(w.values[l as usize], direct);
        }
    }

    #[test]
    fn affine_functions_have_zero_nonlinearity() {
        for l in [0u32, 1, 0b1011, 0xff] {
            let lin = TruthTable::from_fn(8, |x| (l & x).count_ones() % 2 == 1).unwrap();
            assert_eq!(nonlinearity(&lin), 0);
            assert_eq!(nonlinearity(&lin.complement()), 0);
        }
    }

    #[test]
    fn parseval_and_parity() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let tt = TruthTable::from_fn(10, |_| rng.gen()).unwrap();
        let w = walsh_spectrum(&tt);
        assert_eq!(w.sum_of_squares(), 1 << 20);
        assert!(w
            .values
            .iter()
            .all(|v| v % 2 == 0 && v.unsigned_abs() <= 1024));
    }

    #[test]
    fn argmax_prefers_smallest_index() {
        let w = WalshSpectrum {
            n: 2,
            values: vec![0, -4, 4, 0],
        };
        assert_eq!(w.argmax_abs(), 1);
    }
}
