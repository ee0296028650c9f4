//! The polar-decomposition function families and the Carlet-Feng comparator.
//!
//! With `n = 2m`, `beta = alpha^(2^m + 1)` and `xi = alpha^(2^m - 1)`, the
//! element `beta^t * xi^k` is `alpha^(t (2^m + 1) + k (2^m - 1))`, so every
//! support below is built directly from exponents of `alpha`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolfun::{TruthTable, UnivariateForm};
use crate::error::{invalid, Error, Result};
use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Unbalanced `Delta x U`.
    C1,
    /// `Delta_s x U` for a shifted window `Delta_s`.
    C1Shift,
    /// Balanced `(Gamma x U) u ({1} x Lambda)`.
    C2,
    /// Balanced variant with the partial column moved to `beta^(2^(m-1) - 1)`.
    C2Alt,
    /// `(Gamma x U) u ({1} x Lambda')` for any `Lambda'` of size `2^(m-1) + 1`.
    C2General,
    CarletFeng,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::C1,
        Family::C1Shift,
        Family::C2,
        Family::C2Alt,
        Family::C2General,
        Family::CarletFeng,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::C1 => "c1",
            Family::C1Shift => "c1shift",
            Family::C2 => "c2",
            Family::C2Alt => "c2alt",
            Family::C2General => "c2general",
            Family::CarletFeng => "carletfeng",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.to_ascii_lowercase().replace(['_', '-'], ""))
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown family {s:?}; expected one of c1, c1shift, c2, c2alt, c2general, carletfeng"
                ))
            })
    }
}

/// A fully parameterized family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub m: u32,
    pub shift: u32,
    pub lambda_prime: Option<Vec<FieldElement>>,
}

impl FamilySpec {
    pub fn new(family: Family, m: u32) -> Self {
        Self {
            family,
            m,
            shift: 0,
            lambda_prime: None,
        }
    }

    /// Builds the truth table over `spec`, whose degree must be `2m`.
    pub fn build(&self, spec: &FieldSpec) -> Result<TruthTable> {
        if spec.n() != 2 * self.m {
            return invalid(format!(
                "family has m = {} but the field has degree {}",
                self.m,
                spec.n()
            ));
        }
        match self.family {
            Family::C1 | Family::C1Shift => construction1(spec, self.shift),
            Family::C2 => construction2(spec),
            Family::C2Alt => construction2_alt(spec),
            Family::C2General => {
                let lambda = self.lambda_prime.as_deref().ok_or_else(|| {
                    Error::InvalidArgument("c2general needs a lambda-prime subset".into())
                })?;
                construction2_general(spec, lambda)
            }
            Family::CarletFeng => carlet_feng(spec),
        }
    }

    /// Short descriptor such as `c1shift;m=3;s=2`.
    pub fn descriptor(&self) -> String {
        let mut s = format!("{};m={}", self.family, self.m);
        if self.family == Family::C1Shift {
            s.push_str(&format!(";s={}", self.shift));
        }
        if let Some(l) = &self.lambda_prime {
            let bits: Vec<String> = l.iter().map(|e| format!("{:x}", e.bits())).collect();
            s.push_str(&format!(";lambda={}", bits.join(",")));
        }
        s
    }
}

fn half_degree(spec: &FieldSpec) -> Result<u32> {
    let m = spec.m()?;
    if m < 2 {
        return invalid("constructions need m >= 2");
    }
    Ok(m)
}

fn from_exponents(spec: &FieldSpec, exps: impl IntoIterator<Item = i64>) -> Result<TruthTable> {
    TruthTable::from_indices(spec.n(), exps.into_iter().map(|e| spec.alpha_pow_bits(e)))
}

/// Exponents of `{beta^t} x U` for `t` in `ts`.
fn columns(m: u32, ts: impl Iterator<Item = i64>) -> impl Iterator<Item = i64> {
    let h = 1i64 << m;
    ts.flat_map(move |t| (0..=h).map(move |k| t * (h + 1) + k * (h - 1)))
}

/// Support `{beta^(s+t) z : 0 <= t < 2^(m-1), z in U}`, weight `2^(n-1) + 2^(m-1)`.
pub fn construction1(spec: &FieldSpec, shift: u32) -> Result<TruthTable> {
    let m = half_degree(spec)?;
    let h = 1i64 << m;
    if shift as i64 > h - 2 {
        return invalid(format!("shift must be in 0..={}, got {shift}", h - 2));
    }
    let s = shift as i64;
    from_exponents(spec, columns(m, s..s + h / 2))
}

/// Support `{beta^t z : 1 <= t < 2^(m-1), z in U} u {xi^k : 0 <= k <= 2^(m-1)}`.
pub fn construction2(spec: &FieldSpec) -> Result<TruthTable> {
    let m = half_degree(spec)?;
    let h = 1i64 << m;
    let partial = (0..=h / 2).map(|k| k * (h - 1));
    from_exponents(spec, columns(m, 1..h / 2).chain(partial))
}

/// Support `{beta^t z : 0 <= t <= 2^(m-1) - 2, z in U} u
/// {beta^(2^(m-1) - 1) xi^k : 0 <= k <= 2^(m-1)}`.
pub fn construction2_alt(spec: &FieldSpec) -> Result<TruthTable> {
    let m = half_degree(spec)?;
    let h = 1i64 << m;
    let last = h / 2 - 1;
    let partial = (0..=h / 2).map(|k| last * (h + 1) + k * (h - 1));
    from_exponents(spec, columns(m, 0..last).chain(partial))
}

/// Support `(Gamma x U) u ({1} x lambda_prime)` for a subset of `U` of size
/// `2^(m-1) + 1`.
pub fn construction2_general(
    spec: &FieldSpec,
    lambda_prime: &[FieldElement],
) -> Result<TruthTable> {
    let m = half_degree(spec)?;
    let h = 1i64 << m;
    let distinct: BTreeSet<u32> = lambda_prime.iter().map(|e| e.bits()).collect();
    let need = (h / 2 + 1) as usize;
    if distinct.len() != need || lambda_prime.len() != need {
        return invalid(format!(
            "lambda-prime must contain exactly 2^(m-1)+1 = {need} distinct elements of U, got {}",
            distinct.len()
        ));
    }
    for &z in lambda_prime {
        if z.modulus() != spec.modulus() {
            return Err(Error::SpecMismatch {
                left: spec.modulus(),
                right: z.modulus(),
            });
        }
        if spec.pow_bits(z.bits(), h + 1) != 1 || z.is_zero() {
            return invalid(format!("lambda-prime element {:#x} is not in U", z.bits()));
        }
    }
    let mut tt = from_exponents(spec, columns(m, 1..h / 2))?;
    for z in distinct {
        tt.set(z, true);
    }
    Ok(tt)
}

/// Seeded uniform choice of `2^(m-1) + 1` elements of `U`, ordered by
/// their exponent with respect to `xi`.
pub fn sample_lambda_prime(spec: &FieldSpec, seed: u64) -> Result<Vec<FieldElement>> {
    let m = half_degree(spec)?;
    let u = spec.subgroup_u()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = sample(&mut rng, u.len(), (1 << (m - 1)) + 1).into_vec();
    idx.sort_unstable();
    Ok(idx.into_iter().map(|i| u[i]).collect())
}

/// Support `{0, 1, alpha, ..., alpha^(2^(n-1) - 2)}`.
pub fn carlet_feng(spec: &FieldSpec) -> Result<TruthTable> {
    let half = 1i64 << (spec.n() - 1);
    let mut tt = from_exponents(spec, 0..half - 1)?;
    tt.set(0, true);
    Ok(tt)
}

/// The support of [`construction2`] as field elements.
pub fn construction2_support(spec: &FieldSpec) -> Result<Vec<FieldElement>> {
    Ok(construction2(spec)?
        .ones()
        .map(|v| spec.elem(v).expect("index is a field element"))
        .collect())
}

/// Raw closed-form coefficient at index `1 <= i <= 2^n - 2`.
fn closed_form_entry(spec: &FieldSpec, m: u32, i: i64) -> u32 {
    let h = 1i64 << m;
    let q = spec.order() as i64;
    let neg = |e: i64| spec.alpha_pow_bits(-(e % q));
    if i % (h + 1) != 0 {
        // sum over the half column {xi^(2^(m-1) k)}: geometric ratio r = alpha^(-i 2^(m-1) (2^m - 1))
        let r = (i * (h / 2) % q) * (h - 1) % q;
        let num = 1 ^ neg(r * (h / 2 + 1) % q);
        let den = 1 ^ neg(r);
        assert!(
            den != 0,
            "vanishing denominator at i = {i} with 2^m + 1 not dividing i"
        );
        spec.mul_bits(num, spec.inv_bits(den))
    } else {
        let a = neg(i);
        let lead = neg(i * (h / 2 - 1) % q);
        let quotient = if lead == 1 {
            // numerator vanishes: evaluate the defining geometric sum
            (1..h / 2).fold(0, |acc, t| acc ^ neg(i * t % q))
        } else {
            let den = 1 ^ a;
            assert!(den != 0, "alpha^-i = 1 at i = {i}");
            spec.mul_bits(spec.mul_bits(a, 1 ^ lead), spec.inv_bits(den))
        };
        1 ^ quotient
    }
}

/// Closed-form coefficients indexed exactly as the closed formula is stated.
///
/// The formula is derived from the support rewritten in CRT coordinates
/// `(j, k) -> alpha^(2^(m-1) ((2^m+1) j + (2^m-1) k))`, which is the image of
/// the [`construction2`] support under `x -> x^(2^(m-1))`. These are therefore
/// the coefficients of `F(x^(2^(m+1)))`; see [`closed_form_coeffs`] for `F`.
pub fn closed_form_coeffs_frobenius_image(spec: &FieldSpec) -> Result<UnivariateForm> {
    let m = half_degree(spec)?;
    let q = spec.order() as usize;
    let mut coeffs = vec![0u32; q + 1];
    for (i, c) in coeffs.iter_mut().enumerate().take(q).skip(1) {
        *c = closed_form_entry(spec, m, i as i64);
    }
    UnivariateForm::from_raw(spec, coeffs)
}

/// Univariate coefficients of [`construction2`] from the closed formula:
/// `F_i = G_{2^(m+1) i mod (2^n - 1)}` where `G` is
/// [`closed_form_coeffs_frobenius_image`]; `F_0 = F_{2^n - 1} = 0`.
pub fn closed_form_coeffs(spec: &FieldSpec) -> Result<UnivariateForm> {
    let m = half_degree(spec)?;
    let q = spec.order() as usize;
    let twist = 1usize << (m + 1);
    let mut coeffs = vec![0u32; q + 1];
    for (i, c) in coeffs.iter_mut().enumerate().take(q).skip(1) {
        *c = closed_form_entry(spec, m, (twist * i % q) as i64);
    }
    UnivariateForm::from_raw(spec, coeffs)
}
