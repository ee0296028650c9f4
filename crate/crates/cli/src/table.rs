//! Nonlinearity comparison table for the balanced constructions.

use polarbool::analysis::{algebraic_immunity, nl_lower_bound, nonlinearity};
use polarbool::constructions::{carlet_feng, construction2};
use polarbool::make_field;

use crate::error::{CliError, CliResult};

/// Reference `(n, N_TCT, N_F, N_CF)`; N_TCT is only available as these
/// reference values.
pub const REFERENCE: [(u32, u64, u64, u64); 9] = [
    (4, 4, 4, 4),
    (6, 22, 22, 24),
    (8, 108, 108, 112),
    (10, 476, 474, 478),
    (12, 1982, 1976, 1970),
    (14, 8028, 8026, 8036),
    (16, 32508, 32498, 32530),
    (18, 130504, 130484, 130442),
    (20, 523144, 523122, 523154),
];

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub n: u32,
    pub n_cf: u64,
    pub n_tct: u64,
    pub n_f: u64,
    pub bent_bound: u64,
    pub n_f_reference: u64,
    pub n_cf_reference: u64,
    /// Lower bound on `N_F` from the Kloosterman estimate.
    pub n_f_lower_bound: f64,
    pub ai_f: Option<u32>,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.n_f == self.n_f_reference && self.n_cf == self.n_cf_reference
    }
}

/// Rows for `n = 4, 6, ..., n_max`; `with_ai` adds the AI of `F` for `n <= 14`.
pub fn reproduce(n_max: u32, with_ai: bool) -> CliResult<Vec<TableRow>> {
    if n_max % 2 == 1 || !(4..=20).contains(&n_max) {
        return Err(CliError::Usage(format!(
            "--n-max must be even and in 4..=20, got {n_max}"
        )));
    }
    REFERENCE
        .iter()
        .filter(|r| r.0 <= n_max)
        .map(|&(n, tct, f_pub, cf_pub)| {
            let spec = make_field(n)?;
            let f = construction2(&spec)?;
            let ai_f = if with_ai && n <= crate::analyze::AI_MAX_N {
                Some(algebraic_immunity(&f)?.ai)
            } else {
                None
            };
            Ok(TableRow {
                n,
                n_cf: nonlinearity(&carlet_feng(&spec)?),
                n_tct: tct,
                n_f: nonlinearity(&f),
                bent_bound: (1 << (n - 1)) - (1 << (n / 2 - 1)),
                n_f_reference: f_pub,
                n_cf_reference: cf_pub,
                n_f_lower_bound: nl_lower_bound(n / 2),
                ai_f,
            })
        })
        .collect()
}

pub fn to_csv(rows: &[TableRow], with_ai: bool) -> String {
    let mut out = String::from(
        "n,N_CF,N_TCT_reference,N_F,bent_bound,N_F_reference,N_CF_reference,N_F_lower_bound,match",
    );
    if with_ai {
        out.push_str(",AI_F");
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{:.4},{}",
            r.n,
            r.n_cf,
            r.n_tct,
            r.n_f,
            r.bent_bound,
            r.n_f_reference,
            r.n_cf_reference,
            r.n_f_lower_bound,
            r.matches()
        ));
        if with_ai {
            match r.ai_f {
                Some(ai) => out.push_str(&format!(",{ai}")),
                None => out.push_str(",skipped"),
            }
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rows() {
        let rows = reproduce(6, true).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(
            (rows[0].n_f, rows[0].bent_bound, rows[0].ai_f),
            (4, 6, Some(2))
        );
        assert!(rows[0].matches());
        assert_eq!((rows[1].n_f, rows[1].n_cf), (22, 24));
        let csv = to_csv(&rows, true);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(1).unwrap().starts_with("4,4,4,4,6,4,4,"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn n_max_validation() {
        assert!(reproduce(7, false).is_err());
        assert!(reproduce(2, false).is_err());
        assert!(reproduce(22, false).is_err());
    }

    #[test]
    fn bent_bound_column() {
        let rows = reproduce(12, false).unwrap();
        assert_eq!(rows.last().unwrap().bent_bound, 2016);
    }
}
