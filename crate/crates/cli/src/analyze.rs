//! Metric reports for a function file.

use std::str::FromStr;
use std::time::Instant;

use polarbool::analysis::{
    algebraic_immunity_capped, faa_profile, walsh_spectrum, DEFAULT_MONOMIAL_CAP,
};
use polarbool::boolfun::degree;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::file::FunctionFile;

pub const AI_MAX_N: u32 = 14;
pub const FAA_MAX_N: u32 = 12;
pub const NL_MAX_N: u32 = 20;
pub const SKIPPED: &str = "skipped: resource cap";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Metric {
    Weight,
    Balanced,
    Degree,
    Ai,
    Nonlinearity,
    WalshMax,
    Faa,
}

impl Metric {
    pub const ALL: [Metric; 7] = [
        Metric::Weight,
        Metric::Balanced,
        Metric::Degree,
        Metric::Ai,
        Metric::Nonlinearity,
        Metric::WalshMax,
        Metric::Faa,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Metric::Weight => "weight",
            Metric::Balanced => "balanced",
            Metric::Degree => "degree",
            Metric::Ai => "ai",
            Metric::Nonlinearity => "nonlinearity",
            Metric::WalshMax => "walsh_max",
            Metric::Faa => "faa_rows",
        }
    }

    fn cap(self) -> Option<u32> {
        match self {
            Metric::Ai => Some(AI_MAX_N),
            Metric::Faa => Some(FAA_MAX_N),
            Metric::Nonlinearity | Metric::WalshMax => Some(NL_MAX_N),
            _ => None,
        }
    }
}

impl FromStr for Metric {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "weight" => Metric::Weight,
            "balanced" => Metric::Balanced,
            "degree" => Metric::Degree,
            "ai" => Metric::Ai,
            "nl" | "nonlinearity" => Metric::Nonlinearity,
            "walsh" | "walsh_max" => Metric::WalshMax,
            "faa" | "faa_rows" => Metric::Faa,
            _ => return Err(CliError::Usage(format!("unknown metric {s:?}"))),
        })
    }
}

/// Parses `all` or a comma-separated list; the result is sorted and deduplicated.
pub fn parse_metrics(list: &str) -> Result<Vec<Metric>, CliError> {
    if list == "all" {
        return Ok(Metric::ALL.to_vec());
    }
    let mut out = list
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<Vec<Metric>, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub cap_override: bool,
    pub timings: bool,
}

fn compute(file: &FunctionFile, metric: Metric, opts: AnalyzeOptions) -> Result<Value, CliError> {
    let tt = &file.tt;
    if let Some(cap) = metric.cap() {
        if file.n > cap && !opts.cap_override {
            return Ok(Value::from(SKIPPED));
        }
    }
    Ok(match metric {
        Metric::Weight => json!(tt.weight()),
        Metric::Balanced => json!(tt.is_balanced()),
        Metric::Degree => json!(degree(tt)),
        Metric::Ai => {
            let cap = if opts.cap_override {
                usize::MAX
            } else {
                DEFAULT_MONOMIAL_CAP
            };
            match algebraic_immunity_capped(tt, cap) {
                Ok(c) => json!({
                    "value": c.ai,
                    "side": c.side,
                    "witness": c.witness.to_hex(),
                }),
                Err(polarbool::Error::ResourceLimit { .. }) => Value::from(SKIPPED),
                Err(e) => return Err(e.into()),
            }
        }
        Metric::Nonlinearity => {
            let w = walsh_spectrum(tt);
            json!((1u64 << (file.n - 1)) - w.max_abs() as u64 / 2)
        }
        Metric::WalshMax => json!(walsh_spectrum(tt).max_abs()),
        Metric::Faa => serde_json::to_value(faa_profile(tt)?.rows).expect("rows serialize"),
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Builds the report. `raw` is the file content the hash is taken over.
pub fn analyze(
    file: &FunctionFile,
    raw: &[u8],
    metrics: &[Metric],
    opts: AnalyzeOptions,
) -> Result<Value, CliError> {
    let mut values = Map::new();
    let mut timings = Map::new();
    for &metric in metrics {
        let start = Instant::now();
        values.insert(metric.key().into(), compute(file, metric, opts)?);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        timings.insert(metric.key().into(), json!(round_to(ms, 3)));
    }
    let mut report = json!({
        "file": {
            "sha256": sha256_hex(raw),
            "n": file.n,
            "family": file.family,
            "modulus": format!("{:b}", file.modulus),
            "generator": file.generator,
        },
        "metrics": values,
    });
    if opts.timings {
        report["timings_ms"] = Value::Object(timings);
    }
    Ok(canonical(report))
}

pub fn round_to(x: f64, digits: i32) -> f64 {
    let scale = 10f64.powi(digits);
    (x * scale).round() / scale
}

/// Recursively sorts object keys.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(
                entries
                    .into_iter()
                    .map(|(k, v)| (k, canonical(v)))
                    .collect(),
            )
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonical).collect()),
        other => other,
    }
}

/// `path,value` lines with dotted paths, in key order.
pub fn to_csv(report: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    walk(&join(prefix, k), v, out);
                }
            }
            Value::Array(items) => {
                for (i, v) in items.iter().enumerate() {
                    walk(&join(prefix, &i.to_string()), v, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix},{s}\n")),
            other => out.push_str(&format!("{prefix},{other}\n")),
        }
    }
    fn join(prefix: &str, k: &str) -> String {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    }
    let mut out = String::from("metric,value\n");
    walk("", report, &mut out);
    out
}
