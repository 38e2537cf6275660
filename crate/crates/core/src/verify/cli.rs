//! Command-line front end. Exit codes: 0 when every check passes, 1 when
//! a completed run contains a failing check, 2 for usage errors, bad
//! input files, and typed refusals.

use super::algebra_spec::AlgebraSpecFile;
use super::{
    free_module, locally_finite, perfect_field, semiperfect_abelian, torus_chain,
    ScenarioReport, VerifyError,
};
use crate::envalg::EnvElement;
use crate::liealg::LieAlgebra;
use crate::radical::{self, NilpotencyResult, RadicalMethod};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "resenv",
    version,
    about = "Exact verification toolkit for restricted Lie algebras and their enveloping algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that an algebra file defines a valid restricted Lie algebra.
    Validate {
        /// Path to the algebra description (JSON).
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Run a verification scenario.
    Verify {
        #[command(subcommand)]
        scenario: Scenario,
    },
    /// Compute the Jacobson radical of u(L) with its certificate.
    Radical {
        /// Path to the algebra description (JSON).
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        output: ReportArgs,
    },
    /// Shorthand for `verify torus-chain`.
    TorusChain {
        #[command(flatten)]
        args: TorusChainArgs,
        #[command(flatten)]
        output: ReportArgs,
    },
}

#[derive(Subcommand)]
enum Scenario {
    /// Truncations of the rank-m family over F_2(t_1..t_m).
    PerfectField {
        /// Number of indeterminates (rank of the family).
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        /// Power depth: identities are checked at the 2^r-th power.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=3))]
        r: u32,
        /// Random trials per sampled check.
        #[arg(long, default_value_t = 10)]
        trials: u32,
        /// Random seed.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        output: ReportArgs,
    },
    /// Nil ideal and quotient structure for a p-nilpotent restricted ideal.
    LocallyFinite {
        /// Path to the algebra description (JSON).
        #[arg(long)]
        algebra: PathBuf,
        /// Ideal generators (semicolon-separated element expressions);
        /// defaults to the p-radical of the algebra.
        #[arg(long, value_delimiter = ';')]
        gens: Option<Vec<String>>,
        #[command(flatten)]
        output: ReportArgs,
    },
    /// Integral idempotents along a chain of split tori.
    TorusChain {
        #[command(flatten)]
        args: TorusChainArgs,
        #[command(flatten)]
        output: ReportArgs,
    },
    /// Free-module decomposition over a subalgebra and right-ideal
    /// nonmembership along a generator chain.
    FreeModule {
        /// Path to the algebra description (JSON).
        #[arg(long)]
        algebra: PathBuf,
        /// Subalgebra generators (semicolon-separated element
        /// expressions); defaults to the first basis element.
        #[arg(long, value_delimiter = ';')]
        subalgebra: Option<Vec<String>>,
        /// Chain elements (semicolon-separated element expressions);
        /// defaults to the first two basis elements.
        #[arg(long, value_delimiter = ';')]
        chain: Option<Vec<String>>,
        /// Random trials for the decomposition round-trip.
        #[arg(long, default_value_t = 10)]
        trials: u32,
        /// Random seed.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        output: ReportArgs,
    },
    /// Semiperfectness of u(L) for abelian L over a prime field.
    SemiperfectAbelian {
        /// Path to the algebra description (JSON).
        #[arg(long)]
        algebra: PathBuf,
        #[command(flatten)]
        output: ReportArgs,
    },
}

#[derive(Args, Clone, Copy)]
struct TorusChainArgs {
    /// Chain length.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=3))]
    k: u32,
    /// Characteristic of the base field.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=3))]
    p: u32,
}

#[derive(Args, Clone)]
struct ReportArgs {
    /// Report format.
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy)]
enum ReportFormat {
    Json,
    Text,
}

/// Entry point used by the binary: parses real process arguments.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Parse the supplied arguments and execute; returns the process exit
/// code instead of exiting, so tests can drive the CLI in-process.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn execute(command: Command) -> Result<i32, VerifyError> {
    match command {
        Command::Validate { algebra } => {
            let (alg, spec) = load_algebra(&algebra)?;
            let validation = alg.validate();
            println!(
                "algebra: {} (p = {}, dim = {})",
                spec.name,
                alg.p(),
                alg.dim()
            );
            for check in &validation.checks {
                println!(
                    "[{}] {}",
                    if check.pass { "PASS" } else { "FAIL" },
                    check.name
                );
            }
            Ok(if validation.pass() { 0 } else { 1 })
        }
        Command::Verify { scenario } => run_scenario(scenario),
        Command::Radical { algebra, output } => {
            let (alg, spec) = load_validated(&algebra)?;
            let report = radical_report(&alg, &spec.name)?;
            emit(&report, &output)
        }
        Command::TorusChain { args, output } => {
            let report = torus_chain::run(args.k as usize, args.p)?;
            emit(&report, &output)
        }
    }
}

fn run_scenario(scenario: Scenario) -> Result<i32, VerifyError> {
    match scenario {
        Scenario::PerfectField {
            m,
            r,
            trials,
            seed,
            output,
        } => {
            let params = perfect_field::PerfectFieldParams {
                m: m as usize,
                r,
                trials,
                seed,
            };
            let report = perfect_field::run(&params)?;
            emit(&report, &output)
        }
        Scenario::LocallyFinite {
            algebra,
            gens,
            output,
        } => {
            let (alg, spec) = load_validated(&algebra)?;
            let mut report = locally_finite::run(&alg, gens.as_deref())?;
            name_report(&mut report, &spec.name);
            emit(&report, &output)
        }
        Scenario::TorusChain { args, output } => {
            let report = torus_chain::run(args.k as usize, args.p)?;
            emit(&report, &output)
        }
        Scenario::FreeModule {
            algebra,
            subalgebra,
            chain,
            trials,
            seed,
            output,
        } => {
            let (alg, spec) = load_validated(&algebra)?;
            let labels = alg.labels().to_vec();
            let subalgebra = subalgebra.unwrap_or_else(|| labels[..1].to_vec());
            let chain = chain.unwrap_or_else(|| {
                labels.iter().take(2).cloned().collect::<Vec<_>>()
            });
            let mut report = free_module::run(&alg, &subalgebra, &chain, trials, seed)?;
            name_report(&mut report, &spec.name);
            emit(&report, &output)
        }
        Scenario::SemiperfectAbelian { algebra, output } => {
            let (alg, spec) = load_validated(&algebra)?;
            let mut report = semiperfect_abelian::run(&alg)?;
            name_report(&mut report, &spec.name);
            emit(&report, &output)
        }
    }
}

fn load_algebra(path: &Path) -> Result<(LieAlgebra, AlgebraSpecFile), VerifyError> {
    let spec = AlgebraSpecFile::load(path)?;
    let alg = spec.to_algebra()?;
    Ok((alg, spec))
}

/// Load an algebra file and insist that it passes validation before any
/// scenario consumes it.
fn load_validated(path: &Path) -> Result<(LieAlgebra, AlgebraSpecFile), VerifyError> {
    let (alg, spec) = load_algebra(path)?;
    let validation = alg.validate();
    if !validation.pass() {
        let failing: Vec<&str> = validation
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        return Err(VerifyError::Input(format!(
            "algebra `{}` fails validation: {}",
            spec.name,
            failing.join(", ")
        )));
    }
    Ok((alg, spec))
}

fn name_report(report: &mut ScenarioReport, name: &str) {
    report
        .parameters
        .insert("algebra".into(), json!(name));
}

/// Radical computation as a one-check report whose witness carries the
/// full certificate: generators, dimension, nilpotency index, and the
/// verification trail of the method used.
pub fn radical_report(alg: &LieAlgebra, name: &str) -> Result<ScenarioReport, VerifyError> {
    let start = std::time::Instant::now();
    let cert = radical::jacobson_radical(alg, None)?;
    let mut parameters = std::collections::BTreeMap::new();
    parameters.insert("algebra".into(), json!(name));
    parameters.insert("p".into(), json!(alg.p()));
    parameters.insert("dim".into(), json!(alg.dim()));
    let mut report = ScenarioReport::new("radical", parameters);

    let generators: Vec<String> = cert
        .radical
        .basis()
        .iter()
        .map(|row| {
            EnvElement::from_coords(alg, row).map(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    let trail = match &cert.method {
        RadicalMethod::CommutativeFrobeniusKernel { saturation_power } => json!({
            "method": "commutative-frobenius-kernel",
            "saturation_power": saturation_power,
        }),
        RadicalMethod::StructuralPNilIdeal {
            p_nil_dim,
            quotient_dim,
        } => json!({
            "method": "structural-p-nil-ideal",
            "p_nil_dim": p_nil_dim,
            "quotient_dim": quotient_dim,
        }),
    };
    // Re-certify nilpotency independently of the construction path.
    let recheck = matches!(
        radical::nilpotency_index(alg, &cert.radical)?,
        NilpotencyResult::Nilpotent { index } if index == cert.nil_index
    );
    report.push(
        "R1",
        "J(u(L)) is nil, with certified nilpotency index",
        recheck,
        json!({
            "generators": generators,
            "dimension": cert.radical.dim(),
            "nilpotency_index": cert.nil_index,
            "trail": trail,
        }),
    );
    report.finalize(super::elapsed_ms(start));
    Ok(report)
}

fn emit(report: &ScenarioReport, output: &ReportArgs) -> Result<i32, VerifyError> {
    let rendered = match output.report {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Text => report.to_text(),
    };
    match &output.out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(if report.passed() { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::fixtures;

    fn args(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn perfect_field_run_passes_in_process() {
        let code = run_from(args(&[
            "resenv",
            "verify",
            "perfect-field",
            "--m",
            "1",
            "--r",
            "1",
            "--trials",
            "3",
        ]));
        assert_eq!(code, 0);
    }

    #[test]
    fn zero_rank_is_a_usage_error() {
        let code = run_from(args(&["resenv", "verify", "perfect-field", "--m", "0"]));
        assert_eq!(code, 2);
    }

    #[test]
    fn torus_chain_shorthand_matches_verify() {
        let code = run_from(args(&["resenv", "torus-chain", "--k", "2", "--p", "2"]));
        assert_eq!(code, 0);
    }

    #[test]
    fn radical_reports_the_certificate() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("alg.json");
        AlgebraSpecFile::from_algebra("mixed-torus", &fixtures::mixed_torus())
            .save(&path)
            .unwrap();
        let out = dir.path().join("report.json");
        let code = run_from(args(&[
            "resenv",
            "radical",
            "--algebra",
            path.to_str().unwrap(),
            "--report",
            "json",
            "--out",
            out.to_str().unwrap(),
        ]));
        assert_eq!(code, 0);
        let body: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        let witness = &body["checks"][0]["witness"];
        assert_eq!(witness["dimension"], 2);
        assert_eq!(witness["nilpotency_index"], 2);
        assert!(witness["trail"]["method"]
            .as_str()
            .unwrap()
            .contains("commutative"));
    }

    #[test]
    fn missing_algebra_file_is_a_usage_error() {
        let code = run_from(args(&[
            "resenv",
            "verify",
            "semiperfect-abelian",
            "--algebra",
            "/nonexistent/alg.json",
        ]));
        assert_eq!(code, 2);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run_from(args(&["resenv", "--help"])), 0);
    }
}
