//! Algebraic immunity by rank computation on monomial evaluation matrices.
//!
//! For a candidate degree `d`, the rows are the points of one side's support
//! and the columns are the monomials of degree at most `d`, ordered by degree
//! and then by mask. A nonzero kernel vector is the ANF of an annihilator.

use serde::Serialize;

use crate::boolfun::{AnfForm, TruthTable};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Default cap on the number of monomial columns (covers n = 14 at d = 7).
pub const DEFAULT_MONOMIAL_CAP: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// The witness annihilates `f`.
    Function,
    /// The witness annihilates `f + 1`.
    Complement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AiCertificate {
    pub ai: u32,
    pub side: Side,
    pub witness: AnfForm,
}

impl AiCertificate {
    /// Checks the witness against `f`: nonzero, of degree `ai`, and vanishing
    /// on the support of the recorded side. Minimality is not rechecked.
    pub fn witness_is_valid(&self, f: &TruthTable) -> bool {
        let target = match self.side {
            Side::Function => f.clone(),
            Side::Complement => f.complement(),
        };
        let g = crate::boolfun::tt_of(&self.witness);
        !self.witness.is_zero() && self.witness.degree() == self.ai && g.and(&target).weight() == 0
    }
}

/// All masks of weight at most `d` over `n` variables, ordered by
/// (weight, mask).
pub fn monomials_up_to(n: u32, d: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (0..(1u32 << n)).filter(|m| m.count_ones() <= d).collect();
    out.sort_by_key(|&m| (m.count_ones(), m));
    out
}

fn monomial_count(n: u32, d: u32) -> usize {
    let mut total = 0usize;
    let mut c = 1usize;
    for i in 0..=d.min(n) {
        total += c;
        c = c * (n - i) as usize / (i + 1) as usize;
    }
    total
}

fn kernel_to_anf(n: u32, monomials: &[u32], v: &[u64]) -> AnfForm {
    let masks = monomials
        .iter()
        .enumerate()
        .filter(|(c, _)| (v[c / 64] >> (c % 64)) & 1 == 1)
        .map(|(_, &m)| m);
    AnfForm::from_masks(n, masks).expect("masks are in range")
}

/// A nonzero annihilator of degree at most `d` of the function whose
/// support is `support`, or `None`.
pub fn annihilator(support: &TruthTable, d: u32) -> Option<AnfForm> {
    let n = support.n();
    let monomials = monomials_up_to(n, d);
    let points: Vec<u32> = support.ones().collect();
    let mut matrix = BitMatrix::zeros(points.len(), monomials.len());
    for (r, &x) in points.iter().enumerate() {
        let row = matrix.row_mut(r);
        for (c, &mono) in monomials.iter().enumerate() {
            if mono & !x == 0 {
                row[c / 64] |= 1 << (c % 64);
            }
        }
    }
    matrix
        .first_kernel_vector()
        .map(|v| kernel_to_anf(n, &monomials, &v))
}

/// Algebraic immunity with the default monomial cap.
pub fn algebraic_immunity(tt: &TruthTable) -> Result<AiCertificate> {
    algebraic_immunity_capped(tt, DEFAULT_MONOMIAL_CAP)
}

/// Smallest `d` such that `f` or `f + 1` has a nonzero annihilator of degree
/// at most `d`. When both sides qualify at the same `d`, `f` is reported.
pub fn algebraic_immunity_capped(tt: &TruthTable, cap: usize) -> Result<AiCertificate> {
    let n = tt.n();
    let complement = tt.complement();
    for d in 0..=n {
        let needed = monomial_count(n, d);
        if needed > cap {
            return Err(Error::ResourceLimit {
                what: "monomial columns",
                needed,
                cap,
            });
        }
        for (side, support) in [(Side::Function, tt), (Side::Complement, &complement)] {
            if let Some(witness) = annihilator(support, d) {
                return Ok(AiCertificate {
                    ai: d,
                    side,
                    witness,
                });
            }
        }
    }
    unreachable!("the complement side always has an annihilator of degree n")
}
