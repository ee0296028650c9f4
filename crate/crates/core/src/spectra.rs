//! Binary weights of residues modulo `2^n - 1` and the `S_k` / `T_k` sets
//! that bound the support of low-degree annihilators in polar coordinates.

use serde::Serialize;

use crate::error::{invalid, Result};

/// Counterexample lists in reports are truncated to this many entries.
pub const MAX_COUNTEREXAMPLES: usize = 100;

/// Half-dimension `m`, with `n = 2m` and arithmetic modulo `2^n - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightContext {
    m: u32,
}

impl WeightContext {
    pub fn new(m: u32) -> Result<Self> {
        if !(1..=15).contains(&m) {
            return invalid(format!("half-dimension must be in 1..=15, got {m}"));
        }
        Ok(Self { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        2 * self.m
    }

    /// `2^n - 1`.
    pub fn modulus(&self) -> u64 {
        (1u64 << self.n()) - 1
    }

    /// `2^m`.
    fn half(&self) -> u64 {
        1u64 << self.m
    }

    /// Popcount of `u mod (2^n - 1)` taken in `{0, ..., 2^n - 2}`.
    pub fn wt(&self, u: i64) -> u32 {
        u.rem_euclid(self.modulus() as i64).count_ones()
    }

    /// `wt_n((2^m + 1) j + (2^m - 1) k)`.
    pub fn pair_weight(&self, j: i64, k: i64) -> u32 {
        let h = self.half() as i64;
        self.wt((h + 1) * j + (h - 1) * k)
    }

    /// `2^(m-1) ((2^m + 1) j + (2^m - 1) k) mod (2^n - 1)` for
    /// `0 <= j <= 2^m - 2`, `0 <= k <= 2^m`.
    pub fn pair_to_exponent(&self, j: u64, k: u64) -> Result<u64> {
        let h = self.half();
        if j > h - 2 || k > h {
            return invalid(format!("pair ({j}, {k}) out of range for m = {}", self.m));
        }
        let q = self.modulus();
        let inner = ((h + 1) * j + (h - 1) * k) % q;
        Ok((inner << (self.m - 1)) % q)
    }

    /// Inverse of [`Self::pair_to_exponent`]: `j = i mod (2^m - 1)`,
    /// `k = i mod (2^m + 1)`.
    pub fn exponent_to_pair(&self, i: u64) -> Result<(u64, u64)> {
        if i >= self.modulus() {
            return invalid(format!("exponent {i} out of range for n = {}", self.n()));
        }
        let h = self.half();
        Ok((i % (h - 1), i % (h + 1)))
    }
}

/// Convenience form of [`WeightContext::wt`].
pub fn wt_n(u: i64, ctx: &WeightContext) -> u32 {
    ctx.wt(u)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub m: u32,
    pub holds: bool,
    pub checked: u64,
    /// `(j, k)` pairs violating the reflection identity.
    pub counterexamples: Vec<(u64, u64)>,
}

/// Exhaustively checks
/// `wt_n((2^m+1)(2^m-1-j) + (2^m-1)k) = n - wt_n((2^m+1)j + (2^m-1)k)`
/// for `0 <= j <= 2^m - 2`, `1 <= k <= 2^m`.
pub fn verify_lemma1(ctx: &WeightContext) -> Lemma1Report {
    let h = ctx.half() as i64;
    let n = ctx.n();
    let mut checked = 0;
    let mut violations = 0u64;
    let mut counterexamples = Vec::new();
    for j in 0..=h - 2 {
        for k in 1..=h {
            checked += 1;
            if ctx.pair_weight(h - 1 - j, k) + ctx.pair_weight(j, k) != n {
                violations += 1;
                if counterexamples.len() < MAX_COUNTEREXAMPLES {
                    counterexamples.push((j as u64, k as u64));
                }
            }
        }
    }
    Lemma1Report {
        m: ctx.m(),
        holds: violations == 0,
        checked,
        counterexamples,
    }
}

/// Residues `j` modulo `2^m - 1` classified by `wt_n((2^m+1)j + (2^m-1)k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkSet {
    pub k: u64,
    pub members: Vec<u64>,
}

impl SkSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: u64) -> bool {
        self.members.binary_search(&j).is_ok()
    }
}

fn classify(ctx: &WeightContext, k: u64, keep: impl Fn(u32) -> bool) -> Result<SkSet> {
    let h = ctx.half();
    if k > h {
        return invalid(format!("k = {k} out of range 0..={h}"));
    }
    let members = (0..h - 1)
        .filter(|&j| keep(ctx.pair_weight(j as i64, k as i64)))
        .collect();
    Ok(SkSet { k, members })
}

/// `S_k`: residues with weight strictly below `m`.
pub fn s_k(ctx: &WeightContext, k: u64) -> Result<SkSet> {
    let m = ctx.m();
    classify(ctx, k, |w| w < m)
}

/// `T_k`: residues with weight strictly above `m`.
pub fn t_k(ctx: &WeightContext, k: u64) -> Result<SkSet> {
    let m = ctx.m();
    classify(ctx, k, |w| w > m)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed form for `|S_0|`: `2^(m-1)` for odd `m`, else
/// `2^(m-1) - C(m, m/2) / 2`.
pub fn s0_closed_form(m: u32) -> u64 {
    let half = 1u64 << (m - 1);
    if m % 2 == 1 {
        half
    } else {
        half - binomial(m as u64, m as u64 / 2) / 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop3Report {
    pub m: u32,
    /// `|S_k|` for `k = 0..=2^m`.
    pub cardinalities: Vec<usize>,
    pub bound: u64,
    pub max_card: usize,
    /// Values of `k` with `|S_k| = 2^(m-1)`.
    pub equality_cases: Vec<u64>,
    pub s0_closed_form: u64,
    /// Bound respected, equality exactly at (m odd, k = 0), and `|S_0|`
    /// equal to its closed form.
    pub holds: bool,
    /// `k` values where the bound fails.
    pub counterexamples: Vec<u64>,
}

/// `|S_k| <= 2^(m-1)` for every `k`, with equality iff `m` is odd and `k = 0`.
pub fn verify_prop3(ctx: &WeightContext) -> Prop3Report {
    let m = ctx.m();
    let bound = 1u64 << (m - 1);
    let cards: Vec<usize> = (0..=ctx.half())
        .map(|k| s_k(ctx, k).expect("k in range").len())
        .collect();
    let equality_cases: Vec<u64> = cards
        .iter()
        .enumerate()
        .filter(|(_, &c)| c as u64 == bound)
        .map(|(k, _)| k as u64)
        .collect();
    let counterexamples: Vec<u64> = cards
        .iter()
        .enumerate()
        .filter(|(_, &c)| c as u64 > bound)
        .map(|(k, _)| k as u64)
        .take(MAX_COUNTEREXAMPLES)
        .collect();
    let expected_equality: Vec<u64> = if m % 2 == 1 { vec![0] } else { vec![] };
    let s0 = s0_closed_form(m);
    let holds =
        counterexamples.is_empty() && equality_cases == expected_equality && cards[0] as u64 == s0;
    Prop3Report {
        m,
        max_card: cards.iter().copied().max().unwrap_or(0),
        cardinalities: cards,
        bound,
        equality_cases,
        s0_closed_form: s0,
        holds,
        counterexamples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_examples() {
        let c2 = WeightContext::new(2).unwrap();
        assert_eq!(c2.wt(5), 2);
        assert_eq!(c2.wt(-5), 2);
        assert_eq!(c2.wt(-5), 4 - c2.wt(5));
        assert_eq!(c2.wt(0), 0);
        assert_eq!(c2.wt(15), 0);
        let c3 = WeightContext::new(3).unwrap();
        assert_eq!(c3.wt(7 * 5), 3);
        assert_eq!(wt_n(52, &c3), 3);
    }

    #[test]
    fn negation_complements_weight() {
        for m in 1..=6 {
            let c = WeightContext::new(m).unwrap();
            let q = c.modulus() as i64;
            for u in -3 * q..3 * q {
                if u % q != 0 {
                    assert_eq!(c.wt(-u), c.n() - c.wt(u));
                }
            }
        }
    }

    #[test]
    fn cyclic_shift_preserves_weight() {
        let c = WeightContext::new(7).unwrap();
        for u in (0..1 << 14).step_by(37) {
            assert_eq!(c.wt(u << 7), c.wt(u));
        }
    }

    #[test]
    fn pairing_examples() {
        let c = WeightContext::new(2).unwrap();
        assert_eq!(c.pair_to_exponent(1, 1).unwrap(), 1);
        assert_eq!(c.pair_to_exponent(0, 0).unwrap(), 0);
        let e02 = c.pair_to_exponent(0, 2).unwrap();
        let e04 = c.pair_to_exponent(0, 4).unwrap();
        assert_eq!(e02, 12);
        assert_eq!(e04, 9);
        assert_eq!(e02, (e04 + 3) % 15);
        for j in 0..2 {
            for k in 0..4 {
                let a = c.pair_to_exponent(j, k).unwrap();
                let b = c.pair_to_exponent(j + 1, k + 1).unwrap();
                assert_eq!(b, (a + 1) % 15);
            }
        }
        assert!(c.pair_to_exponent(3, 0).is_err());
        assert!(c.pair_to_exponent(0, 5).is_err());
        assert!(c.exponent_to_pair(15).is_err());
    }

    #[test]
    fn pairing_is_a_bijection() {
        for m in 2..=6 {
            let c = WeightContext::new(m).unwrap();
            let h = 1u64 << m;
            let mut seen = vec![false; c.modulus() as usize];
            for j in 0..h - 1 {
                for k in 0..=h {
                    let i = c.pair_to_exponent(j, k).unwrap();
                    assert!(!seen[i as usize]);
                    seen[i as usize] = true;
                    assert_eq!(c.exponent_to_pair(i).unwrap(), (j, k));
                }
            }
        }
    }

    #[test]
    fn lemma1_small() {
        let r = verify_lemma1(&WeightContext::new(2).unwrap());
        assert!(r.holds);
        assert!(r.counterexamples.is_empty());
        assert_eq!(r.checked, 3 * 4);
        // m = 3, j = 1, k = 1: wt(9*6 + 7) = wt(61) = 5 = 6 - wt(16)
        let c = WeightContext::new(3).unwrap();
        assert_eq!(c.pair_weight(6, 1), 5);
        assert_eq!(c.pair_weight(6, 1), 6 - c.pair_weight(1, 1));
    }

    #[test]
    fn s_sets_small() {
        let c3 = WeightContext::new(3).unwrap();
        let s0 = s_k(&c3, 0).unwrap();
        assert_eq!(s0.members, vec![0, 1, 2, 4]);
        let c4 = WeightContext::new(4).unwrap();
        assert_eq!(s_k(&c4, 0).unwrap().len(), 5);
        assert!(s_k(&c4, 17).is_err());
        assert!(t_k(&c4, 17).is_err());
    }

    #[test]
    fn zero_excluded_for_positive_k() {
        for m in 2..=8 {
            let c = WeightContext::new(m).unwrap();
            for k in 1..=(1u64 << m) {
                assert!(!s_k(&c, k).unwrap().contains(0));
                assert!(!t_k(&c, k).unwrap().contains(0));
            }
        }
    }

    #[test]
    fn prop3_equality_cases() {
        let r3 = verify_prop3(&WeightContext::new(3).unwrap());
        assert!(r3.holds);
        assert_eq!(r3.equality_cases, vec![0]);
        let r4 = verify_prop3(&WeightContext::new(4).unwrap());
        assert!(r4.holds);
        assert!(r4.equality_cases.is_empty());
        assert!(r4.max_card < 8);
    }

    #[test]
    fn s_and_t_balance() {
        for m in 2..=8 {
            let c = WeightContext::new(m).unwrap();
            for k in 1..=(1u64 << m) {
                let s = s_k(&c, k).unwrap().len();
                let t = t_k(&c, k).unwrap().len();
                assert_eq!(s, t);
                assert!(s + t <= (1 << m) - 2);
            }
        }
    }
}
