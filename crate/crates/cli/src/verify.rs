//! `verify` targets: exhaustive checks of the combinatorial and analytic
//! statements over a range of `m`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use polarbool::analysis::{
    faa_profile, faa_solution, phi_conjecture_scan, verify_lemma2, verify_lemma3, verify_theorem4,
};
use polarbool::boolfun::{univariate_degree, univariate_interpolate};
use polarbool::constructions::{closed_form_coeffs, construction2};
use polarbool::make_field;
use polarbool::spectra::{verify_lemma1, verify_prop3, WeightContext};
use serde_json::{json, Value};

use crate::analyze::{canonical, round_to};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Lemma1,
    Lemma2,
    Lemma3,
    Prop3,
    Thm3,
    Thm4,
    Phi,
    Faa,
}

impl Target {
    pub const ALL: [Target; 8] = [
        Target::Lemma1,
        Target::Lemma2,
        Target::Lemma3,
        Target::Prop3,
        Target::Thm3,
        Target::Thm4,
        Target::Phi,
        Target::Faa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Lemma1 => "lemma1",
            Target::Lemma2 => "lemma2",
            Target::Lemma3 => "lemma3",
            Target::Prop3 => "prop3",
            Target::Thm3 => "thm3",
            Target::Thm4 => "thm4",
            Target::Phi => "phi",
            Target::Faa => "faa",
        }
    }

    /// Largest `m` checked without `--cap-override`.
    pub fn max_m(self) -> u32 {
        match self {
            Target::Lemma1 | Target::Prop3 => 15,
            Target::Lemma2 | Target::Lemma3 | Target::Thm4 => 10,
            Target::Phi => 9,
            Target::Thm3 => 7,
            Target::Faa => 6,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown target {s:?}; expected one of lemma1, lemma2, lemma3, prop3, thm3, thm4, phi, faa"
                ))
            })
    }
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single `a`.
pub fn parse_m_range(s: &str) -> CliResult<RangeInclusive<u32>> {
    let bad = || CliError::Usage(format!("invalid m-range {s:?}; expected e.g. 2..8"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// Outcome for one `(target, m)`.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub m: u32,
    pub pass: bool,
    pub summary: String,
    pub detail: Value,
}

pub fn run_one(target: Target, m: u32) -> CliResult<Outcome> {
    let min_m = match target {
        Target::Lemma1 | Target::Prop3 => 1,
        _ => 2,
    };
    if m < min_m {
        return Err(CliError::Usage(format!(
            "{target} needs m >= {min_m}, got {m}"
        )));
    }
    let n = 2 * m;
    let outcome = match target {
        Target::Lemma1 => {
            let r = verify_lemma1(&WeightContext::new(m)?);
            Outcome {
                m,
                pass: r.holds,
                summary: format!(
                    "{} pairs checked, {} counterexamples",
                    r.checked,
                    r.counterexamples.len()
                ),
                detail: json!(r),
            }
        }
        Target::Prop3 => {
            let r = verify_prop3(&WeightContext::new(m)?);
            Outcome {
                m,
                pass: r.holds,
                summary: format!(
                    "max |S_k| = {} (bound {}), equality at k in {:?}, |S_0| = {} (closed form {})",
                    r.max_card, r.bound, r.equality_cases, r.cardinalities[0], r.s0_closed_form
                ),
                detail: json!(r),
            }
        }
        Target::Lemma2 => {
            let r = verify_lemma2(&make_field(n)?)?;
            Outcome {
                m,
                pass: r.holds,
                summary: format!(
                    "{} values of a checked, {} counterexamples",
                    r.checked,
                    r.counterexamples.len()
                ),
                detail: json!(r),
            }
        }
        Target::Lemma3 => {
            let r = verify_lemma3(&make_field(n)?)?;
            Outcome {
                m,
                pass: r.holds_with_m,
                summary: format!(
                    "max |sum| = {} at s = {}; with m: bound {:.3} {}; as printed (report only): bound {:.3} {}",
                    r.max_abs,
                    r.argmax_s,
                    r.bound_with_m,
                    holds_word(r.holds_with_m),
                    r.bound_as_printed,
                    holds_word(r.holds_as_printed)
                ),
                detail: json!({
                    "m": r.m,
                    "sums": r.sums,
                    "max_abs": r.max_abs,
                    "argmax_s": r.argmax_s,
                    "bound_as_printed": round_to(r.bound_as_printed, 6),
                    "bound_with_m": round_to(r.bound_with_m, 6),
                    "holds_as_printed": r.holds_as_printed,
                    "holds_with_m": r.holds_with_m,
                }),
            }
        }
        Target::Thm3 => {
            let spec = make_field(n)?;
            let interpolated = univariate_interpolate(&construction2(&spec)?, &spec)?;
            let closed = closed_form_coeffs(&spec)?;
            let mismatches: Vec<usize> = (0..interpolated.raw().len())
                .filter(|&i| interpolated.raw()[i] != closed.raw()[i])
                .collect();
            let deg = univariate_degree(&interpolated);
            let pass = mismatches.is_empty() && deg == n - 1;
            Outcome {
                m,
                pass,
                summary: format!(
                    "{} coefficients compared, {} mismatches, degree {}",
                    interpolated.raw().len(),
                    mismatches.len(),
                    deg
                ),
                detail: json!({
                    "m": m,
                    "coefficients": interpolated.raw().len(),
                    "mismatches": mismatches.iter().take(100).collect::<Vec<_>>(),
                    "degree": deg,
                }),
            }
        }
        Target::Thm4 => {
            let r = verify_theorem4(&make_field(n)?)?;
            Outcome {
                m,
                pass: r.holds,
                summary: format!(
                    "N_F = {} > bound {:.3}: {}",
                    r.nonlinearity, r.bound, r.holds
                ),
                detail: json!({
                    "m": r.m,
                    "nonlinearity": r.nonlinearity,
                    "bound": round_to(r.bound, 6),
                    "holds": r.holds,
                }),
            }
        }
        Target::Phi => {
            let r = phi_conjecture_scan(&make_field(n)?)?;
            Outcome {
                m,
                pass: true,
                summary: format!(
                    "max |Phi_s| = {}, ratio to 2^(m/2) = {:.4} (report only)",
                    r.max_abs, r.max_ratio
                ),
                detail: json!({
                    "m": r.m,
                    "max_abs": r.max_abs,
                    "max_ratio": round_to(r.max_ratio, 6),
                    "argmax": r.argmax,
                }),
            }
        }
        Target::Faa => {
            let f = construction2(&make_field(n)?)?;
            let profile = faa_profile(&f)?;
            let mut pass = true;
            let mut rows = Vec::new();
            for row in &profile.rows {
                let below = faa_solution(&f, row.e, n - 2 - row.e)?.is_some();
                let frontier = row.e + row.d >= n - 1;
                pass &= frontier && !below;
                rows.push(json!({
                    "e": row.e,
                    "d": row.d,
                    "witness": row.witness.to_hex(),
                    "solvable_below_frontier": below,
                }));
            }
            Outcome {
                m,
                pass,
                summary: format!(
                    "(e, d) = {:?}",
                    profile.rows.iter().map(|r| (r.e, r.d)).collect::<Vec<_>>()
                ),
                detail: json!({ "n": n, "rows": rows }),
            }
        }
    };
    Ok(outcome)
}

fn holds_word(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "violated"
    }
}

/// Runs a target over a range. Returns the JSON report and whether every
/// asserted check passed.
pub fn run(
    target: Target,
    range: RangeInclusive<u32>,
    cap_override: bool,
    mut log: impl FnMut(&str),
) -> CliResult<(Value, bool)> {
    if *range.end() > target.max_m() && !cap_override {
        return Err(CliError::Usage(format!(
            "{target} is capped at m <= {}; pass --cap-override to go further",
            target.max_m()
        )));
    }
    let mut results = Vec::new();
    let mut all = true;
    for m in range {
        let o = run_one(target, m)?;
        log(&format!(
            "{target} m={m}: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.summary
        ));
        all &= o.pass;
        results.push(json!({ "m": m, "pass": o.pass, "detail": o.detail }));
    }
    let report = json!({ "target": target.name(), "pass": all, "results": results });
    Ok((canonical(report), all))
}
