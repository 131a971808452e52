//! Command-line driver: count formulas, classify profiles, apply named
//! constructions, run verification suites, and emit reports.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3 parse
//! error.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use countlab::classes::{spec_by_name, spec_catalog, ClassKind, ClassSpec};
use countlab::counting::{count_bruteforce, count_dpll, CountProfile};
use countlab::formula::{emit_dimacs, parse_dimacs, CnfFormula};
use countlab::gadgets::{add_const, complement, multiply_mersenne, pad_pow2, GadgetResult};
use countlab::reductions::{cequal_to_mns, fewp_to_mnp, us_to_mns};
use countlab::verify::{run_suite, SuiteConfig, SuiteId};
use countlab::Execution;

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_PARSE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "countlab",
    about = "Exact model counting, count-based classification, and count-transforming constructions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Bruteforce,
    Dpll,
}

#[derive(Subcommand)]
enum Command {
    /// Count the models of a DIMACS CNF file.
    Count {
        path: PathBuf,
        /// Counting engine (the enumeration engine refuses formulas above
        /// its 26-variable cap).
        #[arg(long, value_enum, default_value_t = Engine::Dpll)]
        engine: Engine,
    },
    /// Classify a formula's count profile under a named class.
    Classify {
        path: PathBuf,
        /// Class name from `countlab catalog`.
        #[arg(long = "class")]
        class: String,
        /// Exact target: the count target for F=P, the gap target for WPP.
        #[arg(long)]
        target: Option<String>,
        /// Solution bound: q for FewP, the ambiguity bound k for UPk.
        #[arg(long = "q-bound")]
        q_bound: Option<u64>,
        #[arg(long, value_enum, default_value_t = Engine::Dpll)]
        engine: Engine,
    },
    /// Apply a named construction and write the result as DIMACS.
    Transform {
        path: PathBuf,
        /// One of: multiply_mersenne, add_const, complement, pad_pow2,
        /// us_to_mns, fewp_to_mnp, cequal_to_mns.
        construction: String,
        /// Comma-separated key=value parameters, e.g. --params c=3,width=4.
        #[arg(long, value_delimiter = ',')]
        params: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite (T2..T8, classes, engines, gadgets).
    Verify {
        suite: String,
        /// Sweep bound override (suite-specific default otherwise).
        #[arg(long = "n-max")]
        n_max: Option<u32>,
        /// Seed for corpus generation.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the structured report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List the built-in class specs.
    Catalog,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let kind = err.kind();
            let _ = err.print();
            return if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Count { path, engine } => cmd_count(&path, engine),
        Command::Classify {
            path,
            class,
            target,
            q_bound,
            engine,
        } => cmd_classify(&path, &class, target.as_deref(), q_bound, engine),
        Command::Transform {
            path,
            construction,
            params,
            out,
        } => cmd_transform(&path, &construction, &params, &out),
        Command::Verify {
            suite,
            n_max,
            seed,
            report,
        } => cmd_verify(&suite, n_max, seed, report.as_deref()),
        Command::Catalog => cmd_catalog(),
    }
}

fn load_formula(path: &Path) -> Result<CnfFormula, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    parse_dimacs(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn count_with_engine(formula: &CnfFormula, engine: Engine) -> Result<CountProfile, CliError> {
    match engine {
        Engine::Dpll => Ok(count_dpll(formula)),
        Engine::Bruteforce => count_bruteforce(formula).map_err(|e| CliError::usage(e.to_string())),
    }
}

fn cmd_count(path: &Path, engine: Engine) -> Result<ExitCode, CliError> {
    let formula = load_formula(path)?;
    let profile = count_with_engine(&formula, engine)?;
    println!("{profile}");
    Ok(ExitCode::SUCCESS)
}

fn catalog_names() -> String {
    spec_catalog()
        .iter()
        .map(|s| s.name())
        .collect::<Vec<_>>()
        .join(", ")
}

fn resolve_spec(
    class: &str,
    target: Option<&str>,
    q_bound: Option<u64>,
) -> Result<ClassSpec, CliError> {
    let mut spec = spec_by_name(class).ok_or_else(|| {
        CliError::usage(format!(
            "unknown class {class:?}; available classes: {}",
            catalog_names()
        ))
    })?;
    if let Some(raw) = target {
        let value = BigInt::from_str(raw)
            .map_err(|_| CliError::usage(format!("bad --target value {raw:?}")))?;
        spec = spec.with_gap_target(value.clone());
        if !value.is_negative() {
            spec = spec.with_count_target(value.to_biguint().unwrap());
        }
    }
    if let Some(q) = q_bound {
        spec = spec.with_few_bound(q).with_ambiguity_bound(q);
    }
    Ok(spec)
}

fn cmd_classify(
    path: &Path,
    class: &str,
    target: Option<&str>,
    q_bound: Option<u64>,
    engine: Engine,
) -> Result<ExitCode, CliError> {
    let formula = load_formula(path)?;
    let spec = resolve_spec(class, target, q_bound)?;
    let profile = count_with_engine(&formula, engine)?;
    let verdict = spec
        .classify(&profile)
        .map_err(|e| CliError::usage(e.to_string()))?;
    println!("{verdict}");
    Ok(ExitCode::SUCCESS)
}

fn parse_params(params: &[String]) -> Result<HashMap<String, String>, CliError> {
    let mut map = HashMap::new();
    for entry in params {
        let (key, value) = entry.split_once('=').ok_or_else(|| {
            CliError::usage(format!("bad parameter {entry:?}; expected key=value"))
        })?;
        map.insert(key.to_string(), value.to_string());
    }
    Ok(map)
}

fn required_u32(map: &HashMap<String, String>, key: &str) -> Result<u32, CliError> {
    map.get(key)
        .ok_or_else(|| CliError::usage(format!("construction needs --params {key}=<integer>")))?
        .parse()
        .map_err(|_| CliError::usage(format!("bad value for parameter {key}")))
}

fn required_biguint(map: &HashMap<String, String>, key: &str) -> Result<BigUint, CliError> {
    BigUint::from_str(
        map.get(key).ok_or_else(|| {
            CliError::usage(format!("construction needs --params {key}=<integer>"))
        })?,
    )
    .map_err(|_| CliError::usage(format!("bad value for parameter {key}")))
}

fn cmd_transform(
    path: &Path,
    construction: &str,
    params: &[String],
    out: &Path,
) -> Result<ExitCode, CliError> {
    let formula = load_formula(path)?;
    let params = parse_params(params)?;
    let result: GadgetResult = match construction {
        "multiply_mersenne" => multiply_mersenne(&formula, required_u32(&params, "t")?),
        "add_const" => add_const(
            &formula,
            &required_biguint(&params, "c")?,
            required_u32(&params, "width")?,
        )
        .map_err(|e| CliError::usage(e.to_string()))?,
        "complement" => complement(&formula),
        "pad_pow2" => pad_pow2(&formula, required_u32(&params, "k")?),
        "us_to_mns" => us_to_mns(&formula),
        "fewp_to_mnp" => fewp_to_mnp(&formula, required_u32(&params, "q")?),
        "cequal_to_mns" => cequal_to_mns(&formula).map_err(|e| CliError::usage(e.to_string()))?,
        other => {
            return Err(CliError::usage(format!(
                "unknown construction {other:?}; available: multiply_mersenne, add_const, \
                 complement, pad_pow2, us_to_mns, fewp_to_mnp, cequal_to_mns"
            )))
        }
    };
    std::fs::write(out, emit_dimacs(&result.formula))
        .map_err(|e| CliError::usage(format!("{}: {e}", out.display())))?;
    println!("construction={construction}");
    println!("machine_vars={}", result.machine_vars);
    println!(
        "count_expression={} (a = input model count)",
        result.count_expression
    );
    println!("wrote {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    suite: &str,
    n_max: Option<u32>,
    seed: u64,
    report_path: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let id = SuiteId::parse(suite).ok_or_else(|| {
        CliError::usage(format!(
            "unknown suite {suite:?}; available suites: {}",
            SuiteId::all()
                .iter()
                .map(|s| s.name())
                .collect::<Vec<_>>()
                .join(", ")
        ))
    })?;
    let config = SuiteConfig {
        n_max,
        seed,
        exec: Execution::default(),
    };
    let report = run_suite(id, &config);
    print!("{}", report.text());
    eprintln!("wall_time {:.3}s", report.wall_time.as_secs_f64());
    if let Some(path) = report_path {
        report
            .write_json(path)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION)
    })
}

fn cmd_catalog() -> Result<ExitCode, CliError> {
    for spec in spec_catalog() {
        let kind = match spec.kind() {
            ClassKind::Syntactic => "syntactic",
            ClassKind::Semantic => "semantic",
        };
        println!("{:8} {:10} {}", spec.name(), kind, spec.doc());
    }
    Ok(ExitCode::SUCCESS)
}
