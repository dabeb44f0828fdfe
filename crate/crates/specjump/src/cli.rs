//! Command-line front end: resolve → compute → verify.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input or limit errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use specjump_core::multiplier::{candidate_alphas, inner_jump_multiplicity, lct};
use specjump_core::rational::Rational;
use specjump_core::resolve::{resolve_germ, ResolveLimits};
use specjump_core::spectrum::{spectrum_table, verify_theorem_with};
use specjump_core::{ResolutionData, SparsePoly2};

use crate::output::{self, Format};
use crate::schema;

#[derive(Debug, Parser)]
#[command(
    name = "specjump",
    about = "Exact invariants of plane-curve singularities from embedded resolution data",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Resolve a germ and print the resolution data.
    Resolve(CommonArgs),
    /// Log canonical threshold.
    Lct(CommonArgs),
    /// Candidate exponents with their inner jump multiplicities.
    Jumps(CommonArgs),
    /// Spectrum multiplicities on (0, 1], computed by the stratified sum.
    Spectrum(CommonArgs),
    /// Cross-check both multiplicity formulas (and the oracle where it
    /// applies); exits nonzero on any mismatch.
    Verify(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Polynomial germ in x and y, e.g. "x^2 + y^3".
    #[arg(long, conflicts_with = "resdata")]
    poly: Option<String>,
    /// Path to resolution data JSON produced by `resolve --format json`.
    #[arg(long)]
    resdata: Option<PathBuf>,
    /// Output format.
    #[arg(long, default_value = "table", value_parser = ["table", "json"])]
    format: String,
    /// Safety cap on the number of point blow-ups.
    #[arg(long, default_value_t = 64)]
    max_blowups: u32,
    /// Degree cap for factoring residual polynomials.
    #[arg(long, default_value_t = 16)]
    max_factor_degree: u32,
    /// Starting truncation degree for oracle colengths (default: automatic).
    #[arg(long)]
    oracle_cutoff: Option<u32>,
    /// Skip the valuative oracle in `verify`.
    #[arg(long, default_value_t = false)]
    no_oracle: bool,
}

impl CommonArgs {
    fn format(&self) -> Format {
        if self.format == "json" {
            Format::Json
        } else {
            Format::Table
        }
    }

    fn limits(&self) -> ResolveLimits {
        ResolveLimits {
            max_blowups: self.max_blowups,
            max_factor_degree: self.max_factor_degree,
        }
    }

    /// Produce resolution data from whichever input source was given.
    fn load_data(&self) -> Result<ResolutionData, String> {
        match (&self.poly, &self.resdata) {
            (Some(text), None) => {
                let germ: SparsePoly2 = text
                    .parse()
                    .map_err(|e: specjump_core::poly::ParsePolyError| e.to_string())?;
                let resolution =
                    resolve_germ(&germ, self.limits()).map_err(|e| e.to_string())?;
                Ok(resolution.data)
            }
            (None, Some(path)) => schema::load(path, false).map_err(|e| e.to_string()),
            (None, None) => Err("one of --poly or --resdata is required".into()),
            (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
        }
    }
}

pub fn run(args: impl Iterator<Item = OsString>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; usage errors exit 2, --help 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Resolve(args) => simple_command(&args, |data, fmt| {
            Ok(output::render_resolution(data, fmt))
        }),
        Command::Lct(args) => simple_command(&args, |data, fmt| {
            let value = lct(data).map_err(|e| e.to_string())?;
            Ok(output::render_lct(&value, fmt))
        }),
        Command::Jumps(args) => simple_command(&args, |data, fmt| {
            let mut rows: Vec<(Rational, i64)> = Vec::new();
            for alpha in candidate_alphas(data) {
                let n = inner_jump_multiplicity(data, &alpha).map_err(|e| e.to_string())?;
                rows.push((alpha, n));
            }
            Ok(output::render_jumps(&rows, fmt))
        }),
        Command::Spectrum(args) => simple_command(&args, |data, fmt| {
            let table = spectrum_table(data).map_err(|e| e.to_string())?;
            Ok(output::render_spectrum(&table, fmt))
        }),
        Command::Verify(args) => {
            let fmt = args.format();
            let data = match args.load_data() {
                Ok(data) => data,
                Err(message) => {
                    eprint!("{}", output::render_error(&message, fmt));
                    return 2;
                }
            };
            match verify_theorem_with(&data, !args.no_oracle, args.oracle_cutoff) {
                Ok(report) => {
                    print!("{}", output::render_verify(&report, fmt));
                    if report.all_pass {
                        0
                    } else {
                        1
                    }
                }
                Err(e) => {
                    eprint!("{}", output::render_error(&e.to_string(), fmt));
                    2
                }
            }
        }
    }
}

fn simple_command(
    args: &CommonArgs,
    body: impl FnOnce(&ResolutionData, Format) -> Result<String, String>,
) -> i32 {
    let fmt = args.format();
    let data = match args.load_data() {
        Ok(data) => data,
        Err(message) => {
            eprint!("{}", output::render_error(&message, fmt));
            return 2;
        }
    };
    match body(&data, fmt) {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(message) => {
            eprint!("{}", output::render_error(&message, fmt));
            2
        }
    }
}
