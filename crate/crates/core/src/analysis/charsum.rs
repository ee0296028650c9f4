//! Kloosterman sums over the subfield GF(2^m) of GF(2^n), incomplete
//! character sums over `U`, and the nonlinearity lower bound for
//! Construction 2.
//!
//! Subfield elements are represented inside the big field as
//! `{0} ∪ {beta^t}`. Kloosterman sums use `1/0 := 0`.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::analysis::walsh::nonlinearity;
use crate::constructions::construction2;
use crate::error::{invalid, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::spectra::MAX_COUNTEREXAMPLES;

fn subfield_bits(spec: &FieldSpec) -> Result<Vec<u32>> {
    let mut out = vec![0];
    out.extend(spec.subfield_units()?.into_iter().map(|b| b.bits()));
    Ok(out)
}

fn sign(bit: u8) -> i64 {
    1 - 2 * bit as i64
}

fn kloosterman_bits(spec: &FieldSpec, m: u32, subfield: &[u32], a: u32) -> i64 {
    subfield
        .iter()
        .map(|&x| {
            let inv = if x == 0 { 0 } else { spec.inv_bits(x) };
            sign(spec.subfield_trace_bits(inv ^ spec.mul_bits(a, x), m))
        })
        .sum()
}

/// `K(a) = sum_{x in GF(2^m)} (-1)^{tr_1^m(1/x + a x)}`.
pub fn kloosterman(spec: &FieldSpec, a: FieldElement) -> Result<i64> {
    let m = spec.m()?;
    if !spec.in_subfield(a)? {
        return invalid("Kloosterman argument must lie in GF(2^m)");
    }
    Ok(kloosterman_bits(spec, m, &subfield_bits(spec)?, a.bits()))
}

/// `K(beta^t)` for `t = 0 .. 2^m - 2`.
fn kloosterman_table(spec: &FieldSpec) -> Result<Vec<i64>> {
    let m = spec.m()?;
    let subfield = subfield_bits(spec)?;
    Ok(subfield[1..]
        .iter()
        .map(|&a| kloosterman_bits(spec, m, &subfield, a))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma2Report {
    pub m: u32,
    pub holds: bool,
    pub checked: u64,
    /// `(a bits, sum over U, 1 - K(a))` for each failure.
    pub counterexamples: Vec<(u32, i64, i64)>,
}

/// Checks `sum_{z in U} (-1)^{tr_1^n(a z)} = 1 - K(a)` for all nonzero `a`
/// in the subfield.
pub fn verify_lemma2(spec: &FieldSpec) -> Result<Lemma2Report> {
    let m = spec.m()?;
    let u: Vec<u32> = spec.subgroup_u()?.into_iter().map(|z| z.bits()).collect();
    let subfield = subfield_bits(spec)?;
    let mut failures = 0u64;
    let mut counterexamples = Vec::new();
    for &a in &subfield[1..] {
        let lhs: i64 = u
            .iter()
            .map(|&z| sign(spec.trace_bits(spec.mul_bits(a, z))))
            .sum();
        let rhs = 1 - kloosterman_bits(spec, m, &subfield, a);
        if lhs != rhs {
            failures += 1;
            if counterexamples.len() < MAX_COUNTEREXAMPLES {
                counterexamples.push((a, lhs, rhs));
            }
        }
    }
    Ok(Lemma2Report {
        m,
        holds: failures == 0,
        checked: subfield.len() as u64 - 1,
        counterexamples,
    })
}

fn window_sum(table: &[i64], s: usize, len: usize) -> i64 {
    (s..s + len).map(|t| table[t % table.len()] - 1).sum()
}

/// `sum_{t = s}^{s + 2^(m-1) - 1} (K(beta^t) - 1)`.
pub fn delta_sum(spec: &FieldSpec, s: u64) -> Result<i64> {
    let m = spec.m()?;
    if s >= (1u64 << m) - 1 {
        return invalid(format!("s must be below 2^m - 1 = {}", (1u64 << m) - 1));
    }
    let table = kloosterman_table(spec)?;
    Ok(window_sum(&table, s as usize, 1 << (m - 1)))
}

/// `(ln2/pi + 0.42) 2^m + 1`.
pub fn lemma3_bound_as_printed(m: u32) -> f64 {
    (LN_2 / PI + 0.42) * (1u64 << m) as f64 + 1.0
}

/// `(ln2/pi * m + 0.42) 2^m + 1`.
pub fn lemma3_bound_with_m(m: u32) -> f64 {
    (LN_2 / PI * m as f64 + 0.42) * (1u64 << m) as f64 + 1.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma3Report {
    pub m: u32,
    /// `delta_sum(s)` for every `s`.
    pub sums: Vec<i64>,
    pub max_abs: u64,
    /// Smallest `s` attaining `max_abs`.
    pub argmax_s: u64,
    pub bound_as_printed: f64,
    pub bound_with_m: f64,
    pub holds_as_printed: bool,
    pub holds_with_m: bool,
}

/// Evaluates every window sum and compares the maximum against both readings
/// of the bound (strict inequality).
pub fn verify_lemma3(spec: &FieldSpec) -> Result<Lemma3Report> {
    let m = spec.m()?;
    let table = kloosterman_table(spec)?;
    let sums: Vec<i64> = (0..table.len())
        .map(|s| window_sum(&table, s, 1 << (m - 1)))
        .collect();
    let max_abs = sums.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    let argmax_s = sums
        .iter()
        .position(|v| v.unsigned_abs() == max_abs)
        .unwrap_or(0) as u64;
    let bound_as_printed = lemma3_bound_as_printed(m);
    let bound_with_m = lemma3_bound_with_m(m);
    Ok(Lemma3Report {
        m,
        sums,
        max_abs,
        argmax_s,
        bound_as_printed,
        bound_with_m,
        holds_as_printed: (max_abs as f64) < bound_as_printed,
        holds_with_m: (max_abs as f64) < bound_with_m,
    })
}

/// `sum over x in {xi^s, ..., xi^(s + 2^(m-1) - 1)} of (-1)^{tr_1^n(c x)}`.
pub fn phi_sum(spec: &FieldSpec, s: u64, c: FieldElement) -> Result<i64> {
    let m = spec.m()?;
    if s > 1u64 << m {
        return invalid(format!("s must be at most 2^m = {}", 1u64 << m));
    }
    if c.is_zero() {
        return invalid("c must be nonzero");
    }
    if !spec.in_subfield(c)? {
        return invalid("c must lie in GF(2^m)");
    }
    let u = spec.subgroup_u()?;
    Ok(phi_bits(spec, &u, s as usize, c.bits(), 1 << (m - 1)))
}

fn phi_bits(spec: &FieldSpec, u: &[FieldElement], s: usize, c: u32, len: usize) -> i64 {
    (s..s + len)
        .map(|t| sign(spec.trace_bits(spec.mul_bits(c, u[t % u.len()].bits()))))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiScanReport {
    pub m: u32,
    pub max_abs: u64,
    /// `max |Phi_s| / 2^(m/2)`.
    pub max_ratio: f64,
    /// First `(s, t)` attaining the maximum, with `c = beta^t`.
    pub argmax: (u64, u64),
}

/// Scans all `s` in `0..=2^m` and all nonzero `c` in the subfield.
pub fn phi_conjecture_scan(spec: &FieldSpec) -> Result<PhiScanReport> {
    let m = spec.m()?;
    let u = spec.subgroup_u()?;
    let units = spec.subfield_units()?;
    let mut max_abs = 0;
    let mut argmax = (0, 0);
    for s in 0..u.len() {
        for (t, c) in units.iter().enumerate() {
            let v = phi_bits(spec, &u, s, c.bits(), 1 << (m - 1)).unsigned_abs();
            if v > max_abs {
                max_abs = v;
                argmax = (s as u64, t as u64);
            }
        }
    }
    Ok(PhiScanReport {
        m,
        max_abs,
        max_ratio: max_abs as f64 / 2f64.powf(m as f64 / 2.0),
        argmax,
    })
}

/// `2^(2m-1) - (ln2/pi * m + 0.92) 2^m - 1`.
pub fn nl_lower_bound(m: u32) -> f64 {
    let h = (1u64 << m) as f64;
    h * h / 2.0 - (LN_2 / PI * m as f64 + 0.92) * h - 1.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem4Report {
    pub m: u32,
    pub nonlinearity: u64,
    pub bound: f64,
    pub holds: bool,
}

/// Compares the nonlinearity of Construction 2 with [`nl_lower_bound`].
pub fn verify_theorem4(spec: &FieldSpec) -> Result<Theorem4Report> {
    let m = spec.m()?;
    let nl = nonlinearity(&construction2(spec)?);
    let bound = nl_lower_bound(m);
    Ok(Theorem4Report {
        m,
        nonlinearity: nl,
        bound,
        holds: nl as f64 > bound,
    })
}
