//! Truth-table, ANF, univariate and bivariate (polar) representations.
//!
//! Point `v` of a truth table is the field element whose polynomial-basis
//! coordinates are the bits of `v`; bit 0 is the coefficient of 1.

use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::field::{FieldElement, FieldSpec, MAX_DEGREE};
use crate::spectra::WeightContext;

const HALF_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

fn word_count(n: u32) -> usize {
    (1usize << n).div_ceil(64)
}

fn check_vars(n: u32) -> Result<()> {
    if !(1..=MAX_DEGREE).contains(&n) {
        return invalid(format!(
            "variable count must be in 1..={MAX_DEGREE}, got {n}"
        ));
    }
    Ok(())
}

/// In-place binary Moebius transform over `n` variables; an involution.
fn moebius(words: &mut [u64], n: u32) {
    for (s, mask) in HALF_MASKS.iter().enumerate().take(n.min(6) as usize) {
        let shift = 1u32 << s;
        for w in words.iter_mut() {
            *w ^= (*w & mask) << shift;
        }
    }
    let mut h = 1;
    while h < words.len() {
        for block in words.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter().zip(hi.iter_mut()) {
                *b ^= *a;
            }
        }
        h *= 2;
    }
}

fn to_hex(words: &[u64], n: u32) -> String {
    let digits = ((1usize << n) / 4).max(1);
    let mut s = String::with_capacity(digits);
    for d in (0..digits).rev() {
        let nib = (words[d / 16] >> (4 * (d % 16))) & 0xf;
        s.push(char::from_digit(nib as u32, 16).unwrap());
    }
    s
}

fn from_hex(n: u32, hex: &str) -> Result<Vec<u64>> {
    check_vars(n)?;
    let digits = ((1usize << n) / 4).max(1);
    if hex.len() != digits {
        return invalid(format!(
            "expected {digits} hex digits for {n} variables, got {}",
            hex.len()
        ));
    }
    let mut words = vec![0u64; word_count(n)];
    for (pos, ch) in hex.chars().enumerate() {
        let nib = ch
            .to_digit(16)
            .filter(|_| !ch.is_ascii_uppercase())
            .ok_or_else(|| {
                Error::InvalidArgument(format!("bad hex digit {ch:?} at offset {pos}"))
            })?;
        let d = digits - 1 - pos;
        words[d / 16] |= (nib as u64) << (4 * (d % 16));
    }
    if n < 2 && words[0] >> (1u32 << n) != 0 {
        return invalid("hex payload has bits beyond the table length");
    }
    Ok(words)
}

macro_rules! bit_table {
    ($name:ident) => {
        impl $name {
            pub fn zero(n: u32) -> Result<Self> {
                check_vars(n)?;
                Ok(Self {
                    n,
                    words: vec![0; word_count(n)],
                })
            }

            pub fn n(&self) -> u32 {
                self.n
            }

            /// Number of entries, `2^n`.
            pub fn len(&self) -> usize {
                1usize << self.n
            }

            pub fn is_empty(&self) -> bool {
                false
            }

            pub fn words(&self) -> &[u64] {
                &self.words
            }

            #[inline]
            pub fn get(&self, v: u32) -> bool {
                (self.words[(v >> 6) as usize] >> (v & 63)) & 1 == 1
            }

            #[inline]
            pub fn set(&mut self, v: u32, bit: bool) {
                let w = &mut self.words[(v >> 6) as usize];
                if bit {
                    *w |= 1 << (v & 63);
                } else {
                    *w &= !(1 << (v & 63));
                }
            }

            /// Number of set entries.
            pub fn weight(&self) -> u64 {
                self.words.iter().map(|w| w.count_ones() as u64).sum()
            }

            /// Indices of set entries, ascending.
            pub fn ones(&self) -> impl Iterator<Item = u32> + '_ {
                self.words.iter().enumerate().flat_map(|(i, &w)| {
                    let mut w = w;
                    std::iter::from_fn(move || {
                        (w != 0).then(|| {
                            let b = w.trailing_zeros();
                            w &= w - 1;
                            (i as u32) * 64 + b
                        })
                    })
                })
            }

            /// Lowercase hex, most significant digit first; bit `v` is entry `v`.
            pub fn to_hex(&self) -> String {
                to_hex(&self.words, self.n)
            }

            pub fn from_hex(n: u32, hex: &str) -> Result<Self> {
                Ok(Self {
                    n,
                    words: from_hex(n, hex)?,
                })
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.to_hex())
            }
        }
    };
}

/// An `n`-variable Boolean function as its `2^n`-bit evaluation vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u32,
    words: Vec<u64>,
}

bit_table!(TruthTable);

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.n, self.to_hex())
    }
}

impl TruthTable {
    pub fn from_fn(n: u32, mut f: impl FnMut(u32) -> bool) -> Result<Self> {
        let mut tt = Self::zero(n)?;
        for v in 0..(1u32 << n) {
            if f(v) {
                tt.set(v, true);
            }
        }
        Ok(tt)
    }

    pub fn from_indices(n: u32, support: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut tt = Self::zero(n)?;
        for v in support {
            if (v as u64) >> n != 0 {
                return invalid(format!("point {v} out of range for {n} variables"));
            }
            tt.set(v, true);
        }
        Ok(tt)
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == 1u64 << (self.n - 1)
    }

    /// `f + 1`.
    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if self.n < 6 {
            words[0] &= (1u64 << (1u32 << self.n)) - 1;
        }
        Self { n: self.n, words }
    }

    /// Pointwise product `f * g`.
    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Self { n: self.n, words }
    }

    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Self { n: self.n, words }
    }
}

/// Algebraic normal form: bit at mask `I` is the coefficient of `prod_{i in I} x_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AnfForm {
    n: u32,
    words: Vec<u64>,
}

bit_table!(AnfForm);

impl fmt::Debug for AnfForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AnfForm(n={}, degree={}, {})",
            self.n,
            self.degree(),
            self.to_hex()
        )
    }
}

impl AnfForm {
    pub fn from_masks(n: u32, masks: impl IntoIterator<Item = u32>) -> Result<Self> {
        let tt = TruthTable::from_indices(n, masks)?;
        Ok(Self { n, words: tt.words })
    }

    /// Largest monomial weight with a nonzero coefficient; 0 for the zero form.
    pub fn degree(&self) -> u32 {
        self.ones().map(u32::count_ones).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Evaluates at one point by summing coefficients over submasks.
    pub fn evaluate(&self, point: u32) -> bool {
        let mut acc = false;
        let mut sub = point;
        loop {
            acc ^= self.get(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & point;
        }
        acc
    }
}

pub fn anf_of(tt: &TruthTable) -> AnfForm {
    let mut words = tt.words.clone();
    moebius(&mut words, tt.n);
    AnfForm { n: tt.n, words }
}

pub fn tt_of(anf: &AnfForm) -> TruthTable {
    let mut words = anf.words.clone();
    moebius(&mut words, anf.n);
    TruthTable { n: anf.n, words }
}

/// Algebraic degree of a truth table via its ANF.
pub fn degree(tt: &TruthTable) -> u32 {
    anf_of(tt).degree()
}

/// Indicator function of a set of field elements.
pub fn from_support<'a>(
    spec: &FieldSpec,
    support: impl IntoIterator<Item = &'a FieldElement>,
) -> Result<TruthTable> {
    let mut tt = TruthTable::zero(spec.n())?;
    for e in support {
        if e.modulus() != spec.modulus() {
            return Err(Error::SpecMismatch {
                left: spec.modulus(),
                right: e.modulus(),
            });
        }
        tt.set(e.bits(), true);
    }
    Ok(tt)
}

/// Coefficients `f_0, ..., f_{2^n - 1}` of `f(x) = sum f_i x^i` over GF(2^n).
#[derive(Clone, PartialEq, Eq)]
pub struct UnivariateForm {
    spec: FieldSpec,
    coeffs: Vec<u32>,
}

impl fmt::Debug for UnivariateForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UnivariateForm")
            .field("spec", &self.spec)
            .field("nonzero", &self.coeffs.iter().filter(|c| **c != 0).count())
            .finish()
    }
}

impl UnivariateForm {
    /// Wraps a raw coefficient array of length `2^n`.
    pub fn from_raw(spec: &FieldSpec, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() != spec.size() {
            return invalid(format!(
                "expected {} coefficients, got {}",
                spec.size(),
                coeffs.len()
            ));
        }
        if coeffs.iter().any(|&c| (c as u64) >> spec.n() != 0) {
            return invalid("coefficient outside the field");
        }
        Ok(Self {
            spec: spec.clone(),
            coeffs,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn raw(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.spec
            .elem(self.coeffs[i])
            .expect("coefficients are field elements")
    }

    /// `f(x)`, by direct summation.
    pub fn evaluate_bits(&self, x: u32) -> u32 {
        if x == 0 {
            return self.coeffs[0];
        }
        let spec = &self.spec;
        let order = spec.order();
        let lx = spec.log_bits(x).unwrap() as u64;
        let mut acc = 0u32;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let e = (lx * i as u64 % order) as i64;
                acc ^= spec.mul_bits(c, spec.alpha_pow_bits(e));
            }
        }
        acc
    }

    /// Whether the coefficients describe a GF(2)-valued function:
    /// `f_{2i} = f_i^2` and `f_0, f_{2^n-1}` in GF(2).
    pub fn is_boolean(&self) -> bool {
        let q = self.spec.order() as usize;
        if self.coeffs[0] > 1 || self.coeffs[q] > 1 {
            return false;
        }
        (1..q)
            .all(|i| self.coeffs[(2 * i) % q] == self.spec.mul_bits(self.coeffs[i], self.coeffs[i]))
    }

    /// Truth table of a Boolean-valued form.
    pub fn to_truth_table(&self) -> Result<TruthTable> {
        let mut tt = TruthTable::zero(self.spec.n())?;
        for x in 0..self.spec.size() as u32 {
            match self.evaluate_bits(x) {
                0 => {}
                1 => tt.set(x, true),
                v => return invalid(format!("form takes non-binary value {v:#x} at {x}")),
            }
        }
        Ok(tt)
    }
}

/// Mattson-Solomon inversion: `f_i = sum_{c != 0} f(c) c^{-i}` for
/// `1 <= i <= 2^n - 2`, computed once per cyclotomic coset and propagated by
/// squaring.
pub fn univariate_interpolate(tt: &TruthTable, spec: &FieldSpec) -> Result<UnivariateForm> {
    if tt.n() != spec.n() {
        return invalid(format!(
            "table has {} variables but the field has degree {}",
            tt.n(),
            spec.n()
        ));
    }
    let q = spec.order() as usize;
    let logs: Vec<u64> = tt
        .ones()
        .filter(|&v| v != 0)
        .map(|v| spec.log_bits(v).unwrap() as u64)
        .collect();
    let mut coeffs = vec![0u32; q + 1];
    let mut done = vec![false; q];
    for rep in 1..q {
        if done[rep] {
            continue;
        }
        let mut acc = 0u32;
        for &l in &logs {
            let e = (q as u64 - l * rep as u64 % q as u64) % q as u64;
            acc ^= spec.alpha_pow_bits(e as i64);
        }
        let mut i = rep;
        while !done[i] {
            done[i] = true;
            coeffs[i] = acc;
            acc = spec.mul_bits(acc, acc);
            i = (2 * i) % q;
        }
    }
    let f0 = u32::from(tt.get(0));
    let nonzero_parity = (logs.len() & 1) as u32;
    coeffs[0] = f0;
    coeffs[q] = f0 ^ nonzero_parity;
    Ok(UnivariateForm {
        spec: spec.clone(),
        coeffs,
    })
}

/// `max { wt_n(i) : f_i != 0 }`, with the zero form at degree 0.
pub fn univariate_degree(uf: &UnivariateForm) -> u32 {
    uf.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, _)| (i as u64).count_ones())
        .max()
        .unwrap_or(0)
}

/// Coefficients `f'_{j,k}` of `f'(y, z) = sum f'_{j,k} y^j z^k` on the polar
/// coordinates of GF(2^2m)^*, plus the value at zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BivariateCoeffs {
    m: u32,
    /// Row-major, `grid[j * (2^m + 1) + k]`.
    grid: Vec<u32>,
    constant: bool,
}

impl BivariateCoeffs {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn get(&self, j: u64, k: u64) -> u32 {
        self.grid[(j * ((1u64 << self.m) + 1) + k) as usize]
    }

    /// `f(0)`.
    pub fn constant(&self) -> bool {
        self.constant
    }

    /// Back to the univariate form over the same field.
    pub fn to_univariate(&self, spec: &FieldSpec) -> Result<UnivariateForm> {
        if spec.m()? != self.m {
            return invalid("field does not match the bivariate half-degree");
        }
        let ctx = WeightContext::new(self.m)?;
        let q = spec.order();
        let mut coeffs = vec![0u32; q as usize + 1];
        for (i, slot) in coeffs.iter_mut().enumerate().take(q as usize).skip(1) {
            let (j, k) = ctx.exponent_to_pair(i as u64)?;
            *slot = self.get(j, k);
        }
        coeffs[0] = u32::from(self.constant);
        coeffs[q as usize] = u32::from(self.constant) ^ self.get(0, 0);
        UnivariateForm::from_raw(spec, coeffs)
    }
}

/// Regroups univariate coefficients by the CRT pairing
/// `i = 2^(m-1) ((2^m + 1) j + (2^m - 1) k) mod (2^n - 1)`.
pub fn bivariate_of(uf: &UnivariateForm) -> Result<BivariateCoeffs> {
    let m = uf.spec.m()?;
    let ctx = WeightContext::new(m)?;
    let rows = (1u64 << m) - 1;
    let cols = (1u64 << m) + 1;
    let q = uf.spec.order() as usize;
    let mut grid = vec![0u32; (rows * cols) as usize];
    for j in 0..rows {
        for k in 0..cols {
            let i = ctx.pair_to_exponent(j, k)? as usize;
            grid[(j * cols + k) as usize] = if i == 0 {
                // f'_0 = f_0 + f_{2^n - 1}
                uf.coeffs[0] ^ uf.coeffs[q]
            } else {
                uf.coeffs[i]
            };
        }
    }
    Ok(BivariateCoeffs {
        m,
        grid,
        constant: uf.coeffs[0] == 1,
    })
}
