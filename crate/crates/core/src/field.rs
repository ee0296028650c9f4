//! Arithmetic in GF(2^n) for n up to 20, in a polynomial basis.
//!
//! Every field carries a designated generator `alpha`, the residue class of
//! the indeterminate `x`. The built-in moduli are the Conway polynomials, so
//! `alpha` is primitive and the subfield generator `beta = alpha^(2^m + 1)`
//! is the Conway generator of GF(2^m).
//!
//! Elements are stored as `u32` coordinate vectors: bit `i` is the
//! coefficient of `x^i`. The same encoding identifies a truth-table index
//! with a field element throughout the crate.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 20;

/// Conway polynomials over GF(2), indexed by degree, as coefficient bit masks.
const CONWAY: [u32; 21] = [
    0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x5b, 0x83, 0x11d, 0x211, 0x46f, 0x805, 0x10eb, 0x201b, 0x40a9,
    0x8035, 0x1002d, 0x20009, 0x41403, 0x80027, 0x1006f3,
];

/// The Conway polynomial of degree `n`, if tabulated.
pub fn conway_modulus(n: u32) -> Option<u32> {
    (2..=MAX_DEGREE).contains(&n).then(|| CONWAY[n as usize])
}

/// Shared, immutable description of a binary extension field.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

struct Inner {
    n: u32,
    modulus: u32,
    trace_mask: u32,
    tables: OnceLock<LogTables>,
}

struct LogTables {
    /// `exp[i] = alpha^i` for `0 <= i < 2 * order`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` is unused.
    log: Vec<u32>,
}

/// An element of a specific [`FieldSpec`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FieldElement {
    bits: u32,
    #[serde(skip)]
    modulus: u32,
}

impl FieldElement {
    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({:#x})", self.bits)
    }
}

/// The factorization `x = y * z` of a nonzero element of GF(2^2m) with
/// `y` in GF(2^m)^* and `z` in the order-(2^m + 1) subgroup `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolarPair {
    pub y: FieldElement,
    pub z: FieldElement,
}

/// Carry-less multiplication followed by reduction, without tables.
pub(crate) fn clmul_mod(mut a: u32, mut b: u32, modulus: u32, n: u32) -> u32 {
    let top = 1u32 << n;
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & top != 0 {
            a ^= modulus;
        }
    }
    acc
}

fn clpow_mod(mut a: u32, mut e: u64, modulus: u32, n: u32) -> u32 {
    let mut acc = 1u32;
    while e != 0 {
        if e & 1 == 1 {
            acc = clmul_mod(acc, a, modulus, n);
        }
        a = clmul_mod(a, a, modulus, n);
        e >>= 1;
    }
    acc
}

pub(crate) fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x % p == 0 {
            out.push(p);
            while x % p == 0 {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// Builds the field for an even extension degree `2 <= n <= 20` with its
/// Conway modulus.
pub fn make_field(n: u32) -> Result<FieldSpec> {
    if n % 2 == 1 {
        return invalid(format!("extension degree must be even, got {n}"));
    }
    FieldSpec::conway(n)
}

impl FieldSpec {
    /// Field of degree `n` (any parity) defined by the Conway polynomial.
    pub fn conway(n: u32) -> Result<Self> {
        let modulus = conway_modulus(n).ok_or(Error::NoModulus(n))?;
        Ok(Self::new_unchecked(n, modulus))
    }

    /// Field defined by an arbitrary primitive polynomial (bit mask including
    /// the leading term). The indeterminate must generate the multiplicative
    /// group, which also certifies irreducibility.
    pub fn with_modulus(modulus: u32) -> Result<Self> {
        if modulus < 4 {
            return invalid("modulus must have degree at least 2");
        }
        let n = 31 - modulus.leading_zeros();
        if n > MAX_DEGREE {
            return invalid(format!("modulus degree {n} exceeds {MAX_DEGREE}"));
        }
        if modulus & 1 == 0 {
            return invalid("modulus is divisible by x");
        }
        let order = (1u64 << n) - 1;
        let x_order_full = clpow_mod(2, order, modulus, n) == 1;
        let proper = prime_factors(order)
            .into_iter()
            .all(|p| clpow_mod(2, order / p, modulus, n) != 1);
        if !(x_order_full && proper) {
            return invalid(format!(
                "modulus {modulus:#b} is not a primitive polynomial"
            ));
        }
        Ok(Self::new_unchecked(n, modulus))
    }

    fn new_unchecked(n: u32, modulus: u32) -> Self {
        // trace is linear; bit i of the mask is tr(x^i)
        let mut trace_mask = 0u32;
        for i in 0..n {
            let mut acc = 0u32;
            let mut sq = 1u32 << i;
            for _ in 0..n {
                acc ^= sq;
                sq = clmul_mod(sq, sq, modulus, n);
            }
            debug_assert!(acc <= 1);
            trace_mask |= acc << i;
        }
        Self {
            inner: Arc::new(Inner {
                n,
                modulus,
                trace_mask,
                tables: OnceLock::new(),
            }),
        }
    }

    fn tables(&self) -> &LogTables {
        self.inner.tables.get_or_init(|| {
            let n = self.inner.n;
            let order = self.order() as usize;
            let mut exp = vec![0u32; 2 * order];
            let mut log = vec![0u32; order + 1];
            let mut a = 1u32;
            for (i, slot) in exp.iter_mut().take(order).enumerate() {
                *slot = a;
                log[a as usize] = i as u32;
                a <<= 1;
                if a >> n != 0 {
                    a ^= self.inner.modulus;
                }
            }
            let (lo, hi) = exp.split_at_mut(order);
            hi.copy_from_slice(lo);
            LogTables { exp, log }
        })
    }

    pub fn n(&self) -> u32 {
        self.inner.n
    }

    /// Half degree `m = n / 2`; errors for odd `n`.
    pub fn m(&self) -> Result<u32> {
        if self.inner.n % 2 == 1 {
            return invalid(format!("field degree {} is odd", self.inner.n));
        }
        Ok(self.inner.n / 2)
    }

    pub fn modulus(&self) -> u32 {
        self.inner.modulus
    }

    pub fn is_conway(&self) -> bool {
        conway_modulus(self.inner.n) == Some(self.inner.modulus)
    }

    /// Number of field elements, `2^n`.
    pub fn size(&self) -> usize {
        1usize << self.inner.n
    }

    /// Order of the multiplicative group, `2^n - 1`.
    pub fn order(&self) -> u64 {
        (1u64 << self.inner.n) - 1
    }

    pub fn elem(&self, bits: u32) -> Result<FieldElement> {
        if (bits as u64) >> self.inner.n != 0 {
            return invalid(format!(
                "{bits:#x} is not an element of GF(2^{})",
                self.inner.n
            ));
        }
        Ok(self.wrap(bits))
    }

    pub(crate) fn wrap(&self, bits: u32) -> FieldElement {
        FieldElement {
            bits,
            modulus: self.inner.modulus,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    pub fn alpha(&self) -> FieldElement {
        self.wrap(self.alpha_pow_bits(1))
    }

    /// `alpha^e`, with the exponent reduced modulo `2^n - 1`.
    pub fn alpha_pow(&self, e: i64) -> FieldElement {
        self.wrap(self.alpha_pow_bits(e))
    }

    pub fn alpha_pow_bits(&self, e: i64) -> u32 {
        let r = e.rem_euclid(self.order() as i64) as usize;
        self.tables().exp[r]
    }

    /// `beta = alpha^(2^m + 1)`, a generator of GF(2^m)^*.
    pub fn beta(&self) -> Result<FieldElement> {
        let m = self.m()?;
        Ok(self.alpha_pow((1i64 << m) + 1))
    }

    /// `xi = alpha^(2^m - 1)`, a generator of `U`.
    pub fn xi(&self) -> Result<FieldElement> {
        let m = self.m()?;
        Ok(self.alpha_pow((1i64 << m) - 1))
    }

    fn check(&self, a: FieldElement) -> Result<()> {
        if a.modulus != self.inner.modulus {
            return Err(Error::SpecMismatch {
                left: self.inner.modulus,
                right: a.modulus,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(a.bits ^ b.bits))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.mul_bits(a.bits, b.bits)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.bits == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.inv_bits(a.bits)))
    }

    /// `a^e` for any integer `e`; negative exponents need a nonzero base.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        self.check(a)?;
        if a.bits == 0 {
            return match e.signum() {
                0 => Ok(self.one()),
                1 => Ok(self.zero()),
                _ => Err(Error::DivisionByZero),
            };
        }
        Ok(self.wrap(self.pow_bits(a.bits, e)))
    }

    /// Frobenius square root, `a^(2^(n-1))`.
    pub fn sqrt(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        let mut r = a.bits;
        for _ in 1..self.inner.n {
            r = self.mul_bits(r, r);
        }
        Ok(self.wrap(r))
    }

    /// Absolute trace `tr_1^n(x)`.
    pub fn trace(&self, x: FieldElement) -> Result<u8> {
        self.check(x)?;
        Ok(self.trace_bits(x.bits))
    }

    /// Unchecked table multiplication on raw coordinates.
    #[inline]
    pub fn mul_bits(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = self.tables();
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    #[inline]
    pub fn inv_bits(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let t = self.tables();
        let order = self.order() as u32;
        t.exp[((order - t.log[a as usize]) % order) as usize]
    }

    /// `a^e` on raw coordinates; `a` must be nonzero unless `e > 0`.
    #[inline]
    pub fn pow_bits(&self, a: u32, e: i64) -> u32 {
        if a == 0 {
            return u32::from(e == 0);
        }
        let t = self.tables();
        let order = self.order() as i64;
        let r = (t.log[a as usize] as i64 * e.rem_euclid(order)).rem_euclid(order);
        t.exp[r as usize]
    }

    /// Discrete logarithm to base `alpha`; `None` for zero.
    #[inline]
    pub fn log_bits(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.tables().log[a as usize])
    }

    #[inline]
    pub fn trace_bits(&self, x: u32) -> u8 {
        ((x & self.inner.trace_mask).count_ones() & 1) as u8
    }

    /// Whether `x` lies in the subfield GF(2^m), i.e. `x^(2^m) = x`.
    pub fn in_subfield(&self, x: FieldElement) -> Result<bool> {
        self.check(x)?;
        let m = self.m()?;
        Ok(self.frobenius_bits(x.bits, m) == x.bits)
    }

    /// `x^(2^k)` on raw coordinates.
    pub fn frobenius_bits(&self, x: u32, k: u32) -> u32 {
        let mut r = x;
        for _ in 0..k {
            r = self.mul_bits(r, r);
        }
        r
    }

    /// Relative trace to GF(2) of an element of the subfield GF(2^m).
    pub(crate) fn subfield_trace_bits(&self, y: u32, m: u32) -> u8 {
        let mut acc = 0u32;
        let mut sq = y;
        for _ in 0..m {
            acc ^= sq;
            sq = self.mul_bits(sq, sq);
        }
        debug_assert!(acc <= 1, "element is not in the subfield");
        acc as u8
    }

    /// Unique factorization `x = y * z`, `y` in GF(2^m)^*, `z` in `U`.
    pub fn polar_decompose(&self, x: FieldElement) -> Result<PolarPair> {
        self.check(x)?;
        let m = self.m()?;
        if x.bits == 0 {
            return Err(Error::Domain("zero has no polar decomposition".into()));
        }
        let norm = self.pow_bits(x.bits, (1i64 << m) + 1);
        let y = self.sqrt(self.wrap(norm))?;
        let z = self.mul_bits(x.bits, self.inv_bits(y.bits));
        Ok(PolarPair { y, z: self.wrap(z) })
    }

    /// `[xi^0, xi^1, ..., xi^(2^m)]`, the subgroup of order `2^m + 1`.
    pub fn subgroup_u(&self) -> Result<Vec<FieldElement>> {
        let m = self.m()?;
        let step = (1i64 << m) - 1;
        Ok((0..=(1i64 << m))
            .map(|k| self.alpha_pow(k * step))
            .collect())
    }

    /// `[beta^0, ..., beta^(2^m - 2)]`, the nonzero subfield elements.
    pub fn subfield_units(&self) -> Result<Vec<FieldElement>> {
        let m = self.m()?;
        let step = (1i64 << m) + 1;
        Ok((0..(1i64 << m) - 1)
            .map(|t| self.alpha_pow(t * step))
            .collect())
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("n", &self.inner.n)
            .field("modulus", &format_args!("{:b}", self.inner.modulus))
            .finish()
    }
}
