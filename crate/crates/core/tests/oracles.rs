//! Cross-checks of the fast paths against slow, independent computations.

use polarbool::analysis::{algebraic_immunity, faa_min_degree, nonlinearity, walsh_spectrum};
use polarbool::boolfun::{anf_of, degree, tt_of, AnfForm, TruthTable};
use polarbool::constructions::{construction1, construction2, construction2_alt};
use polarbool::make_field;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_tt(rng: &mut ChaCha8Rng, n: u32) -> TruthTable {
    TruthTable::from_fn(n, |_| rng.gen()).unwrap()
}

/// Rank over GF(2) of rows packed in u64 words (at most 64 columns).
fn rank_u64(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r] >> bit & 1 == 1 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

/// Whether `support` has a nonzero annihilator of degree at most `d`, read
/// off the full evaluation matrix: columns are all `2^n` monomials, and
/// columns of weight above `d` are masked out.
fn has_annihilator_full_matrix(support: &TruthTable, d: u32) -> bool {
    let n = support.n();
    assert!(n <= 6);
    let allowed: u64 = (0..1u32 << n)
        .filter(|m| m.count_ones() <= d)
        .fold(0, |acc, m| acc | 1 << m);
    let rows: Vec<u64> = support
        .ones()
        .map(|x| {
            let full = (0..1u32 << n)
                .filter(|m| m & !x == 0)
                .fold(0u64, |a, m| a | 1 << m);
            full & allowed
        })
        .collect();
    rank_u64(rows) < allowed.count_ones() as usize
}

fn naive_ai(f: &TruthTable) -> u32 {
    let g = f.complement();
    (0..=f.n())
        .find(|&d| has_annihilator_full_matrix(f, d) || has_annihilator_full_matrix(&g, d))
        .unwrap()
}

/// Exhaustive enumeration of all 2^16 ANFs at n = 4.
fn enumerated_ai_n4(f: &TruthTable) -> u32 {
    let g = f.complement();
    let mut best = 4;
    for coeffs in 1u32..1 << 16 {
        let anf = AnfForm::from_masks(4, (0..16).filter(|i| coeffs >> i & 1 == 1)).unwrap();
        let d = anf.degree();
        if d >= best {
            continue;
        }
        let h = tt_of(&anf);
        if h.and(f).weight() == 0 || h.and(&g).weight() == 0 {
            best = d;
        }
    }
    best
}

#[test]
fn ai_matches_full_matrix_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for n in [4, 6] {
        for _ in 0..50 {
            let f = random_tt(&mut rng, n);
            let cert = algebraic_immunity(&f).unwrap();
            assert_eq!(cert.ai, naive_ai(&f));
            assert!(cert.witness_is_valid(&f));
        }
    }
}

#[test]
fn ai_matches_exhaustive_enumeration_at_n4() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..20 {
        let f = random_tt(&mut rng, 4);
        assert_eq!(algebraic_immunity(&f).unwrap().ai, enumerated_ai_n4(&f));
    }
}

#[test]
fn ai_symmetry_and_upper_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for n in 2..=8 {
        for _ in 0..10 {
            let f = random_tt(&mut rng, n);
            let a = algebraic_immunity(&f).unwrap();
            let b = algebraic_immunity(&f.complement()).unwrap();
            assert_eq!(a.ai, b.ai);
            assert!(a.ai <= n.div_ceil(2));
            assert!(b.witness_is_valid(&f.complement()));
        }
    }
}

#[test]
fn constructed_functions_have_optimal_ai() {
    for m in 2..=6 {
        let spec = make_field(2 * m).unwrap();
        for f in [
            construction1(&spec, 0).unwrap(),
            construction2(&spec).unwrap(),
            construction2_alt(&spec).unwrap(),
        ] {
            let cert = algebraic_immunity(&f).unwrap();
            assert_eq!(cert.ai, m);
            assert!(cert.witness_is_valid(&f));
        }
    }
}

/// `sum_x (-1)^(f(x) + tr(l x))` with the field trace instead of the dot
/// product.
fn trace_walsh(f: &TruthTable, n: u32) -> Vec<i64> {
    let spec = make_field(n).unwrap();
    (0..1u32 << n)
        .map(|l| {
            (0..1u32 << n)
                .map(|x| {
                    let e = f.get(x) as u8 ^ spec.trace_bits(spec.mul_bits(l, x));
                    1 - 2 * e as i64
                })
                .sum()
        })
        .collect()
}

#[test]
fn trace_form_spectrum_is_a_permutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for n in [4, 6, 8] {
        let spec = make_field(n).unwrap();
        for f in [random_tt(&mut rng, n), construction2(&spec).unwrap()] {
            let mut a: Vec<i64> = walsh_spectrum(&f)
                .values
                .iter()
                .map(|&v| v as i64)
                .collect();
            let mut b = trace_walsh(&f, n);
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b);
        }
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, n: u32) -> Vec<u32> {
    loop {
        let cols: Vec<u32> = (0..n).map(|_| rng.gen_range(0..1u32 << n)).collect();
        if rank_u64(cols.iter().map(|&c| c as u64).collect()) == n as usize {
            return cols;
        }
    }
}

fn apply(cols: &[u32], x: u32) -> u32 {
    cols.iter()
        .enumerate()
        .filter(|(i, _)| x >> i & 1 == 1)
        .fold(0, |acc, (_, &c)| acc ^ c)
}

#[test]
fn nonlinearity_is_affine_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for n in 2..=8 {
        for _ in 0..5 {
            let f = random_tt(&mut rng, n);
            let nl = nonlinearity(&f);
            assert_eq!(nonlinearity(&f.complement()), nl);
            let a = random_invertible(&mut rng, n);
            let b = rng.gen_range(0..1u32 << n);
            let g = TruthTable::from_fn(n, |x| f.get(apply(&a, x) ^ b)).unwrap();
            assert_eq!(nonlinearity(&g), nl);
        }
    }
}

#[test]
fn nonlinearity_matches_distance_to_affine_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for n in [3, 5, 6] {
        let f = random_tt(&mut rng, n);
        let best = (0..1u32 << n)
            .flat_map(|l| [false, true].map(move |c| (l, c)))
            .map(|(l, c)| {
                (0..1u32 << n)
                    .filter(|&x| f.get(x) != (((l & x).count_ones() % 2 == 1) ^ c))
                    .count() as u64
            })
            .min()
            .unwrap();
        assert_eq!(nonlinearity(&f), best);
    }
}

#[test]
fn balanced_constructions_have_zero_walsh_at_origin() {
    for m in 2..=7 {
        let f = construction2(&make_field(2 * m).unwrap()).unwrap();
        assert_eq!(walsh_spectrum(&f).values[0], 0);
    }
}

#[test]
fn degree_via_anf_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for n in 1..=10 {
        let f = random_tt(&mut rng, n);
        let anf = anf_of(&f);
        assert_eq!(tt_of(&anf), f);
        assert_eq!(degree(&f), anf.degree());
    }
}

/// Exhaustive FAA oracle at n = 6, e = 1: try every nonzero affine `g`.
fn faa_exhaustive_e1(f: &TruthTable) -> u32 {
    let n = f.n();
    (1u32..1 << (n + 1))
        .map(|coeffs| {
            let g = AnfForm::from_masks(
                n,
                (0..=n)
                    .filter(|i| coeffs >> i & 1 == 1)
                    .map(|i| if i == 0 { 0 } else { 1 << (i - 1) }),
            )
            .unwrap();
            degree(&f.and(&tt_of(&g)))
        })
        .min()
        .unwrap()
}

#[test]
fn faa_matches_exhaustive_search_for_affine_multipliers() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let spec = make_field(6).unwrap();
    let mut fs = vec![construction2(&spec).unwrap()];
    fs.extend((0..10).map(|_| random_tt(&mut rng, 6)));
    for f in &fs {
        assert_eq!(faa_min_degree(f, 1).unwrap().d, faa_exhaustive_e1(f));
    }
    assert_eq!(faa_min_degree(&fs[0], 1).unwrap().d, 4);
}

#[test]
fn faa_is_monotone_in_e() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for n in [7, 8, 9] {
        let f = random_tt(&mut rng, n);
        let ds: Vec<u32> = (1..n.div_ceil(2))
            .map(|e| faa_min_degree(&f, e).unwrap().d)
            .collect();
        assert!(ds.windows(2).all(|w| w[1] <= w[0]), "{ds:?}");
    }
}
