use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use polarbool::constructions::sample_lambda_prime;
use polarbool::{make_field, Family, FamilySpec};
use polarbool_cli::analyze::{self, AnalyzeOptions};
use polarbool_cli::verify::{self, Target};
use polarbool_cli::{table, CliError, CliResult, FunctionFile};

#[derive(Parser)]
#[command(
    name = "polarbool",
    version,
    about = "Construct and analyze Boolean functions from the polar decomposition of GF(2^2m)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member and write it as a function file.
    Construct {
        /// c1, c1shift, c2, c2alt, c2general or carletfeng.
        #[arg(long)]
        family: String,
        #[arg(long)]
        m: u32,
        /// Window shift for c1shift.
        #[arg(long, default_value_t = 0)]
        shift: u32,
        /// Seed for a random lambda-prime subset (c2general).
        #[arg(long, conflicts_with = "lambda")]
        lambda_seed: Option<u64>,
        /// Explicit lambda-prime as comma-separated exponents k of xi^k (c2general).
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<u32>>,
        /// Output path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute metrics of a function file.
    Analyze {
        input: PathBuf,
        /// `all` or a comma-separated subset of weight, balanced, degree, ai, nl, walsh, faa.
        #[arg(long, default_value = "all")]
        metrics: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Lift the per-metric size caps.
        #[arg(long)]
        cap_override: bool,
        /// Include wall-clock time per metric (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Nonlinearity table of the balanced constructions against reference values.
    ReproduceTable {
        #[arg(long, default_value_t = 14)]
        n_max: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add the algebraic immunity of F for n <= 14.
        #[arg(long)]
        ai: bool,
    },
    /// Exhaustively check a statement over a range of m.
    Verify {
        /// lemma1, lemma2, lemma3, prop3, thm3, thm4, phi or faa.
        target: String,
        #[arg(long, default_value = "2..6")]
        m_range: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cap_override: bool,
    },
}

fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn warn_cap_override() {
    eprintln!("warning: resource caps lifted; this may take hours");
}

fn construct(
    family: &str,
    m: u32,
    shift: u32,
    lambda_seed: Option<u64>,
    lambda: Option<Vec<u32>>,
    out: Option<&Path>,
) -> CliResult<()> {
    let family: Family = family.parse()?;
    if m < 2 || 2 * m > polarbool::field::MAX_DEGREE {
        return Err(CliError::Usage(format!("--m must be in 2..=10, got {m}")));
    }
    let spec = make_field(2 * m)?;
    let mut fs = FamilySpec::new(family, m);
    fs.shift = shift;
    if family == Family::C2General {
        let elems = match (lambda, lambda_seed) {
            (Some(ks), _) => {
                let xi = spec.xi()?;
                ks.iter()
                    .map(|&k| spec.pow(xi, k as i64))
                    .collect::<Result<Vec<_>, _>>()?
            }
            (None, Some(seed)) => sample_lambda_prime(&spec, seed)?,
            (None, None) => {
                return Err(CliError::Usage(
                    "c2general needs --lambda or --lambda-seed".into(),
                ))
            }
        };
        fs.lambda_prime = Some(elems);
    } else if lambda.is_some() || lambda_seed.is_some() {
        return Err(CliError::Usage(format!(
            "--lambda/--lambda-seed only apply to c2general, not {family}"
        )));
    }
    if shift != 0 && family != Family::C1Shift {
        return Err(CliError::Usage(format!(
            "--shift only applies to c1shift, not {family}"
        )));
    }
    let tt = fs.build(&spec)?;
    let file = FunctionFile::new(&spec, fs.descriptor(), tt);
    write_output(out, &file.render())?;
    eprintln!(
        "{}: n={} weight={} support size={}",
        fs.descriptor(),
        file.n,
        file.tt.weight(),
        file.tt.ones().count()
    );
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Construct {
            family,
            m,
            shift,
            lambda_seed,
            lambda,
            out,
        } => construct(&family, m, shift, lambda_seed, lambda, out.as_deref()),
        Command::Analyze {
            input,
            metrics,
            format,
            out,
            cap_override,
            timings,
        } => {
            let metrics = analyze::parse_metrics(&metrics)?;
            let raw = fs::read(&input).map_err(|source| CliError::Io {
                path: input.clone(),
                source,
            })?;
            let text = String::from_utf8(raw.clone()).map_err(|e| CliError::Parse {
                path: input.display().to_string(),
                line: 1,
                column: e.utf8_error().valid_up_to() + 1,
                message: "file is not UTF-8".into(),
            })?;
            let file = FunctionFile::parse(&text, &input.display().to_string())?;
            if cap_override {
                warn_cap_override();
            }
            let opts = AnalyzeOptions {
                cap_override,
                timings,
            };
            let report = analyze::analyze(&file, &raw, &metrics, opts)?;
            let body = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Csv => analyze::to_csv(&report),
            };
            write_output(out.as_deref(), &body)
        }
        Command::ReproduceTable { n_max, out, ai } => {
            let rows = table::reproduce(n_max, ai)?;
            for r in rows.iter().filter(|r| !r.matches()) {
                eprintln!(
                    "warning: n={}: computed N_F={} N_CF={}, reference N_F={} N_CF={}",
                    r.n, r.n_f, r.n_cf, r.n_f_reference, r.n_cf_reference
                );
            }
            write_output(out.as_deref(), &table::to_csv(&rows, ai))
        }
        Command::Verify {
            target,
            m_range,
            out,
            cap_override,
        } => {
            let target: Target = target.parse()?;
            let range = verify::parse_m_range(&m_range)?;
            if cap_override {
                warn_cap_override();
            }
            let (report, pass) =
                verify::run(target, range, cap_override, |line| eprintln!("{line}"))?;
            let mut body = serde_json::to_string_pretty(&report).expect("report serializes");
            body.push('\n');
            write_output(out.as_deref(), &body)?;
            if pass {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "{target}: at least one m failed"
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
