//! Fast-algebraic-attack profile: for each `e < n/2`, the smallest `d` such
//! that some nonzero `g` of degree at most `e` has `deg(f g) <= d`.
//!
//! `g -> anf(f g)` is linear in the ANF coefficients of `g`, so each column of
//! the constraint matrix is the ANF of `f` times one monomial. Requiring
//! `deg(f g) <= d` keeps the rows indexed by masks of weight above `d`.

use serde::Serialize;

use crate::analysis::immunity::monomials_up_to;
use crate::boolfun::{anf_of, tt_of, AnfForm, TruthTable};
use crate::error::{invalid, Result};
use crate::gf2::BitMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaaRow {
    pub e: u32,
    pub d: u32,
    /// Hex ANF of a witness `g`.
    #[serde(serialize_with = "anf_hex")]
    pub witness: AnfForm,
}

fn anf_hex<S: serde::Serializer>(a: &AnfForm, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&a.to_hex())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaaProfile {
    pub n: u32,
    pub rows: Vec<FaaRow>,
}

/// Precomputed products `anf(f * x^I)` for all `I` of weight at most `e`.
struct ProductBasis {
    n: u32,
    monomials: Vec<u32>,
    products: Vec<AnfForm>,
}

impl ProductBasis {
    fn new(f: &TruthTable, e: u32) -> Self {
        let n = f.n();
        let monomials = monomials_up_to(n, e);
        let products = monomials
            .iter()
            .map(|&mono| {
                let indicator = TruthTable::from_fn(n, |x| mono & !x == 0).unwrap();
                anf_of(&f.and(&indicator))
            })
            .collect();
        Self {
            n,
            monomials,
            products,
        }
    }

    fn solve(&self, d: u32) -> Option<AnfForm> {
        let n = self.n;
        let mut row_of = vec![usize::MAX; 1 << n];
        let mut rows = 0;
        for k in 0..(1u32 << n) {
            if k.count_ones() > d {
                row_of[k as usize] = rows;
                rows += 1;
            }
        }
        let mut matrix = BitMatrix::zeros(rows, self.monomials.len());
        for (c, prod) in self.products.iter().enumerate() {
            for k in prod.ones() {
                let r = row_of[k as usize];
                if r != usize::MAX {
                    matrix.set(r, c, true);
                }
            }
        }
        let v = matrix.first_kernel_vector()?;
        let masks = self
            .monomials
            .iter()
            .enumerate()
            .filter(|(c, _)| (v[c / 64] >> (c % 64)) & 1 == 1)
            .map(|(_, &m)| m);
        Some(AnfForm::from_masks(n, masks).unwrap())
    }
}

fn check_e(n: u32, e: u32) -> Result<()> {
    if e == 0 || 2 * e >= n {
        return invalid(format!("e must satisfy 1 <= e < n/2 (n = {n}), got {e}"));
    }
    Ok(())
}

/// A nonzero `g` with `deg(g) <= e` and `deg(f g) <= d`, if one exists.
pub fn faa_solution(f: &TruthTable, e: u32, d: u32) -> Result<Option<AnfForm>> {
    check_e(f.n(), e)?;
    Ok(ProductBasis::new(f, e).solve(d))
}

/// Minimal `d` for the given `e`. The scan starts at `d = n - 1 - e` and
/// moves down while solvable, or up until solvable; solvability is monotone
/// in `d` and always holds at `d = n - 1`.
pub fn faa_min_degree(f: &TruthTable, e: u32) -> Result<FaaRow> {
    let n = f.n();
    check_e(n, e)?;
    let basis = ProductBasis::new(f, e);
    let start = n - 1 - e;
    let (d, witness) = match basis.solve(start) {
        Some(mut best) => {
            let mut d = start;
            while d > 0 {
                match basis.solve(d - 1) {
                    Some(g) => {
                        best = g;
                        d -= 1;
                    }
                    None => break,
                }
            }
            (d, best)
        }
        None => {
            let mut d = start + 1;
            loop {
                if let Some(g) = basis.solve(d) {
                    break (d, g);
                }
                d += 1;
                assert!(d <= n, "no solution at d = n");
            }
        }
    };
    Ok(FaaRow { e, d, witness })
}

/// Rows for `e = 1 .. ceil(n/2) - 1`.
pub fn faa_profile(f: &TruthTable) -> Result<FaaProfile> {
    let n = f.n();
    let rows = (1..n.div_ceil(2))
        .map(|e| faa_min_degree(f, e))
        .collect::<Result<_>>()?;
    Ok(FaaProfile { n, rows })
}

/// `(deg g, deg f g)` for a witness, for checking rows.
pub fn witness_degrees(f: &TruthTable, g: &AnfForm) -> (u32, u32) {
    let product = f.and(&tt_of(g));
    (g.degree(), anf_of(&product).degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn e_range() {
        let f = TruthTable::zero(6).unwrap();
        assert!(faa_min_degree(&f, 0).is_err());
        assert!(faa_min_degree(&f, 3).is_err());
        assert!(faa_solution(&f, 2, 3).is_ok());
    }

    #[test]
    fn always_solvable_at_n_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let f = TruthTable::from_fn(6, |_| rng.gen()).unwrap();
            for e in 1..3 {
                let g = faa_solution(&f, e, 5).unwrap().unwrap();
                let (dg, dfg) = witness_degrees(&f, &g);
                assert!(!g.is_zero() && dg <= e && dfg <= 5);
            }
        }
    }

    #[test]
    fn witnesses_meet_constraints_and_rows_are_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..5 {
            let f = TruthTable::from_fn(8, |_| rng.gen()).unwrap();
            let p = faa_profile(&f).unwrap();
            assert_eq!(p.rows.len(), 3);
            for row in &p.rows {
                let (dg, dfg) = witness_degrees(&f, &row.witness);
                assert!(!row.witness.is_zero());
                assert!(dg <= row.e && dfg <= row.d);
                if row.d > 0 {
                    assert!(faa_solution(&f, row.e, row.d - 1).unwrap().is_none());
                }
            }
            for w in p.rows.windows(2) {
                assert!(w[1].d <= w[0].d);
            }
        }
    }

    #[test]
    fn affine_function_has_tiny_products() {
        // f = x1: g = x1 gives f g = x1, degree 1
        let f = TruthTable::from_fn(6, |v| v & 1 == 1).unwrap();
        let row = faa_min_degree(&f, 1).unwrap();
        assert_eq!(row.d, 0);
    }
}
