//! Command-line front end: expansions, multiplicities, Bell numbers,
//! verification sweeps and cumulant conversions.
//!
//! Exit codes: 0 success, 2 input error, 3 enumeration limit exceeded,
//! 4 verification mismatch.

mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use faadibruno::collapse::{multiplicity, multiplicity_bruteforce_with_limit};
use faadibruno::cumulants::{
    collapse_cumulant_identity_check, cumulants_from_moments, moment_from_cumulants,
    CumulantAssignment,
};
use faadibruno::error::Error;
use faadibruno::expansion::{expand_composition_with_limit, CompositionExpansion};
use faadibruno::json::{
    AssignmentFileDoc, CollapseIdentityDoc, ExpansionDoc, ProductExpansionDoc, SweepDoc,
    TrialsDoc,
};
use faadibruno::multiset_partition::multiset_partitions_with_limit;
use faadibruno::oracle::{
    run_composition_trials, run_product_trials, sweep_multiplicity_agreement,
    DEFAULT_TRIAL_SEED,
};
use faadibruno::product::expand_product;
use faadibruno::render::{
    render_composition_latex, render_composition_text, render_product_latex,
    render_product_text,
};
use faadibruno::set_partition::bell;
use faadibruno::DEFAULT_ENUMERATION_LIMIT;
use num_rational::BigRational;

#[derive(Parser)]
#[command(
    name = "faadibruno",
    version,
    about = "Expand mixed partial derivatives of compositions and products, \
             with exact collapsed-term multiplicities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// d_tau f(y): inner derivatives weighted by outer f-derivatives
    Composition,
    /// d_tau e^y: the common factor e^y absorbs the outer derivatives
    Exponential,
    /// d_tau (uv): the two-sided generalized Leibniz rule
    Product,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    /// moment of the target from a cumulant assignment
    ToMoment,
    /// cumulant of the target from a moment assignment
    ToCumulant,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a derivative signature into its collected sum
    Expand {
        /// Derivative signature, e.g. "x1 x2^2"
        signature: String,
        #[arg(long, value_enum, default_value_t = Mode::Composition)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Multiplicity of one partition of a signature
    Multiplicity {
        /// Derivative signature, e.g. "x1^4 x5^2 x7 x8"
        signature: String,
        /// Partition as bracketed blocks, e.g. "[x1^2 x5][x1^2 x5][x7 x8]"
        partition: String,
        /// Re-count by brute-force enumeration and report agreement
        #[arg(long)]
        check: bool,
    },
    /// The Bell number B_n
    Bell { n: usize },
    /// Stream the partitions of a signature with their multiplicities
    Partitions { signature: String },
    /// Exhaustive and randomized self-checks
    Verify {
        /// Emit the report as JSON instead of text lines
        #[arg(long, global = true)]
        json: bool,
        #[command(subcommand)]
        kind: VerifyCommand,
    },
    /// Moment/cumulant conversion from a JSON assignment file
    Cumulants {
        #[arg(value_enum)]
        direction: Direction,
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Compare the multiplicity formula against brute-force counting for
    /// every signature shape and partition up to --max-size
    Multiplicity {
        #[arg(long, default_value_t = 8)]
        max_size: usize,
    },
    /// Randomized polynomial checks of the composition expansion
    Composition {
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Randomized polynomial checks of the product expansion
    Product {
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check that identifying random variables commutes with the moment
    /// identity, for all orders up to --max-n
    CumulantCollapse {
        #[arg(long, default_value_t = 5)]
        max_n: u32,
    },
}

/// A failed run, carrying its exit code.
enum Failure {
    Input(String),
    Limit(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Limit(_) => 3,
            Failure::Mismatch(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Limit(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::GuardExceeded { .. } => Failure::Limit(err.to_string()),
            _ => Failure::Input(err.to_string()),
        }
    }
}

impl From<parse::ParseError> for Failure {
    fn from(err: parse::ParseError) -> Self {
        Failure::Input(err.to_string())
    }
}

/// Enumeration limit, overridable through the environment.
fn enumeration_limit() -> usize {
    std::env::var("FAADIBRUNO_ENUM_LIMIT")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_LIMIT)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Expand {
            signature,
            mode,
            format,
        } => cmd_expand(&signature, mode, format),
        Command::Multiplicity {
            signature,
            partition,
            check,
        } => cmd_multiplicity(&signature, &partition, check),
        Command::Bell { n } => {
            println!("{}", bell(n));
            Ok(())
        }
        Command::Partitions { signature } => cmd_partitions(&signature),
        Command::Verify { json, kind } => cmd_verify(kind, json),
        Command::Cumulants { direction, file } => cmd_cumulants(direction, &file),
    }
}

fn cmd_expand(signature: &str, mode: Mode, format: Format) -> Result<(), Failure> {
    let tau = parse::parse_signature(signature)?;
    let limit = enumeration_limit();
    match mode {
        Mode::Composition | Mode::Exponential => {
            let e: CompositionExpansion = expand_composition_with_limit(&tau, limit)?;
            let exponential = matches!(mode, Mode::Exponential);
            let body = match format {
                Format::Text => render_composition_text(&e, exponential),
                Format::Latex => render_composition_latex(&e, exponential),
                Format::Json => to_json(&ExpansionDoc::from(&e))?,
            };
            println!("{body}");
        }
        Mode::Product => {
            let e = expand_product(&tau);
            let body = match format {
                Format::Text => render_product_text(&e),
                Format::Latex => render_product_latex(&e),
                Format::Json => to_json(&ProductExpansionDoc::from(&e))?,
            };
            println!("{body}");
        }
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(doc: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(doc).map_err(|e| Failure::Input(e.to_string()))
}

fn cmd_multiplicity(signature: &str, partition: &str, check: bool) -> Result<(), Failure> {
    let tau = parse::parse_signature(signature)?;
    let mp = parse::parse_partition(partition)?;
    let count = multiplicity(&tau, &mp)?;
    println!("{count}");
    if check {
        let brute = multiplicity_bruteforce_with_limit(&tau, &mp, enumeration_limit())?;
        if brute == count {
            println!("check: brute-force count {brute} (agree)");
        } else {
            println!("check: brute-force count {brute} (MISMATCH)");
            return Err(Failure::Mismatch(format!(
                "formula {count} disagrees with brute-force count {brute}"
            )));
        }
    }
    Ok(())
}

fn cmd_partitions(signature: &str) -> Result<(), Failure> {
    let tau = parse::parse_signature(signature)?;
    for mp in multiset_partitions_with_limit(&tau, enumeration_limit())? {
        let count = multiplicity(&tau, &mp)?;
        println!("{mp}\t{count}");
    }
    Ok(())
}

fn cmd_verify(kind: VerifyCommand, json: bool) -> Result<(), Failure> {
    match kind {
        VerifyCommand::Multiplicity { max_size } => {
            let report = sweep_multiplicity_agreement(max_size)?;
            if json {
                println!("{}", to_json(&SweepDoc::from(&report))?);
            } else {
                println!(
                    "multiplicity sweep: max size {}, {} signatures, {} pairs, {} mismatches, {} Bell mismatches",
                    report.max_size,
                    report.signatures,
                    report.pairs,
                    report.mismatches,
                    report.bell_mismatches
                );
            }
            if report.all_agree() {
                if !json {
                    println!("all agree");
                }
                Ok(())
            } else {
                Err(Failure::Mismatch(
                    "multiplicity sweep found disagreements".into(),
                ))
            }
        }
        VerifyCommand::Composition {
            max_size,
            trials,
            seed,
        } => {
            let report =
                run_composition_trials(trials, max_size, seed.unwrap_or(DEFAULT_TRIAL_SEED))?;
            print_trials(&report, json)?;
            if report.all_equal() {
                Ok(())
            } else {
                Err(Failure::Mismatch(
                    "composition verification mismatch".into(),
                ))
            }
        }
        VerifyCommand::Product {
            max_size,
            trials,
            seed,
        } => {
            let report = run_product_trials(trials, max_size, seed.unwrap_or(DEFAULT_TRIAL_SEED))?;
            print_trials(&report, json)?;
            if report.all_equal() {
                Ok(())
            } else {
                Err(Failure::Mismatch("product verification mismatch".into()))
            }
        }
        VerifyCommand::CumulantCollapse { max_n } => {
            // generic probe values: kappa_j = (2j + 1) / (j + 2)
            let mut kappa = CumulantAssignment::new();
            for j in 1..=max_n {
                kappa.set_univariate(
                    1,
                    j,
                    BigRational::new(BigInt::from(2 * j + 1), BigInt::from(j + 2)),
                );
            }
            let mut reports = Vec::with_capacity(max_n as usize);
            for n in 1..=max_n {
                reports.push(collapse_cumulant_identity_check(n, &kappa, 1)?);
            }
            let all_equal = reports.iter().all(|r| r.equal);
            if json {
                let docs: Vec<CollapseIdentityDoc> =
                    reports.iter().map(CollapseIdentityDoc::from).collect();
                println!("{}", to_json(&docs)?);
            } else {
                for report in &reports {
                    println!(
                        "collapse identity n={}: distinct {} vs collapsed {} ({})",
                        report.n,
                        report.distinct_path,
                        report.collapsed_path,
                        if report.equal { "equal" } else { "MISMATCH" }
                    );
                }
                if all_equal {
                    println!("all equal");
                }
            }
            if all_equal {
                Ok(())
            } else {
                Err(Failure::Mismatch("collapse identity mismatch".into()))
            }
        }
    }
}

fn print_trials(report: &faadibruno::oracle::TrialsReport, json: bool) -> Result<(), Failure> {
    if json {
        println!("{}", to_json(&TrialsDoc::from(report))?);
    } else {
        println!(
            "{} trials: {} trials, max size {}, seed {}, {} mismatches",
            report.kind.as_str(),
            report.trials,
            report.max_size,
            report.seed,
            report.mismatches
        );
        if report.all_equal() {
            println!("all equal");
        }
    }
    Ok(())
}

fn cmd_cumulants(direction: Direction, file: &PathBuf) -> Result<(), Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", file.display())))?;
    let doc: AssignmentFileDoc =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("bad JSON: {e}")))?;
    let target = doc.target_multiset()?;
    let value = match direction {
        Direction::ToMoment => moment_from_cumulants(&target, &doc.cumulant_assignment()?)?,
        Direction::ToCumulant => cumulants_from_moments(&target, &doc.moment_assignment()?)?,
    };
    println!("{value}");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_per_failure_kind() {
        assert_eq!(Failure::Input("x".into()).code(), 2);
        assert_eq!(Failure::Limit("x".into()).code(), 3);
        assert_eq!(Failure::Mismatch("x".into()).code(), 4);
    }

    #[test]
    fn core_errors_map_onto_codes() {
        let guard = Error::GuardExceeded { size: 20, limit: 15 };
        assert_eq!(Failure::from(guard).code(), 3);
        let invalid = Error::InvalidSignature { got: 6, expected: 3 };
        assert_eq!(Failure::from(invalid).code(), 2);
    }
}
