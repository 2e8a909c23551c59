//! `wreath`: evaluate, decompose and check central states on `Γ ≀ S_∞`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use wreath_core::io::{self, GroupRef, IoError, Params};
use wreath_core::oracle::{oracle_eval_with, OracleConfig};
use wreath_core::verify::{self, ElementSampler, SuiteConfig};
use wreath_core::{CheckReport, GroupTable, WreathElement};

#[derive(Parser)]
#[command(name = "wreath", version, about = "Central states on wreath products Γ ≀ S_∞")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a state or character on elements.
    Eval {
        #[arg(long)]
        params: PathBuf,
        #[command(flatten)]
        elements: ElementArgs,
    },
    /// Split elements into generalized cycles and print each cycle's γ̃.
    Decompose {
        /// Builtin group name (`trivial`, `S3`, `cyclic:N`) or group file.
        #[arg(long, conflicts_with = "params")]
        group: Option<String>,
        /// Take the group from a parameter file.
        #[arg(long)]
        params: Option<PathBuf>,
        #[command(flatten)]
        elements: ElementArgs,
    },
    /// Gram matrix `φ(e_i⁻¹ e_j)` over a list of elements.
    Gram {
        #[arg(long)]
        params: PathBuf,
        #[command(flatten)]
        elements: ElementArgs,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run every applicable property check.
    Verify {
        /// One or more parameter files; files that fail to load become failed reports.
        #[arg(long, required = true, num_args = 1..)]
        params: Vec<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 8)]
        gram_size: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compare the closed form with the brute-force tensor trace.
    Oracle {
        #[arg(long)]
        params: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
        /// Node budget of the trace search per element.
        #[arg(long, default_value_t = OracleConfig::default().term_budget)]
        budget: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Decide the KMS condition.
    Kms {
        #[arg(long)]
        params: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ElementArgs {
    /// Element expression such as `(1 2 3)[a@1]`.
    #[arg(long)]
    element: Option<String>,
    /// File with one element per line (`#` comments) or a JSON array of strings.
    #[arg(long)]
    elements: Option<PathBuf>,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 5)]
    max_support: usize,
}

enum Failure {
    Check,
    Parse(String),
    Validation(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Parse(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

/// 12 significant digits, trailing zeros trimmed.
fn fmt_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&magnitude) {
        let s = format!("{x:.11e}");
        let (mantissa, exp) = s.split_once('e').expect("scientific format");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exp}");
    }
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// `re`, `re±im i`, or `im i`; parts below `1e-12` are dropped.
fn fmt_complex(z: Complex64) -> String {
    let tiny = |v: f64| v.abs() < 1e-12;
    match (tiny(z.re), tiny(z.im)) {
        (_, true) => fmt_real(if tiny(z.re) { 0.0 } else { z.re }),
        (true, false) => format!("{}i", fmt_real(z.im)),
        (false, false) => {
            let sign = if z.im < 0.0 { '-' } else { '+' };
            format!("{}{sign}{}i", fmt_real(z.re), fmt_real(z.im.abs()))
        }
    }
}

fn read_elements(args: &ElementArgs, group: &GroupTable) -> Result<Vec<WreathElement>, Failure> {
    if let Some(text) = &args.element {
        return WreathElement::parse(text, group)
            .map(|g| vec![g])
            .map_err(|e| Failure::Parse(format!("element: {e}")));
    }
    let path = args.elements.as_ref().expect("clap requires one element source");
    let text = fs::read_to_string(path).map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(io::parse_elements(&text, group)?)
}

fn write_reports(path: Option<&Path>, reports: &[CheckReport]) -> Outcome {
    if let Some(path) = path {
        let json = serde_json::to_string_pretty(reports).expect("reports serialize");
        fs::write(path, json + "\n").map_err(|e| Failure::Parse(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn all_passed(reports: &[CheckReport]) -> Outcome {
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cmd_eval(params: &Path, elements: &ElementArgs) -> Outcome {
    let params = io::load_params(params)?;
    let list = read_elements(elements, params.group())?;
    if list.len() == 1 {
        println!("{}", fmt_complex(params.eval(&list[0])));
    } else {
        for g in &list {
            println!("{}\t{}", g.format(params.group()), fmt_complex(params.eval(g)));
        }
    }
    Ok(())
}

fn cmd_decompose(group: Option<&str>, params: Option<&Path>, elements: &ElementArgs) -> Outcome {
    let table: Arc<GroupTable> = match (group, params) {
        (_, Some(p)) => io::load_params(p)?.group().clone(),
        (Some(name), None) => Arc::new(io::resolve_group(&GroupRef::Named(name.to_string()), None)?),
        (None, None) => Arc::new(GroupTable::trivial()),
    };
    for g in read_elements(elements, &table)? {
        println!("{}", g.format(&table));
        for c in g.generalized_cycles() {
            println!(
                "  {}\tlength {}\tγ̃ = {}",
                c.to_element().format(&table),
                c.len(),
                table.name(c.invariant(&table))
            );
        }
    }
    Ok(())
}

fn cmd_gram(params: &Path, elements: &ElementArgs, report: Option<&Path>) -> Outcome {
    let params = io::load_params(params)?;
    let group = params.group().clone();
    let list = read_elements(elements, &group)?;
    let inverses: Vec<WreathElement> = list.iter().map(|g| g.inverse(&group)).collect();
    for inv in &inverses {
        let row: Vec<String> = list.iter().map(|g| fmt_complex(params.eval(&inv.multiply(g, &group)))).collect();
        println!("{}", row.join("\t"));
    }
    let r = verify::gram_check(&params, &list, verify::PSD_TOL, 0);
    println!("{}", r.summary());
    write_reports(report, std::slice::from_ref(&r))?;
    all_passed(&[r])
}

fn cmd_verify(paths: &[PathBuf], sampling: &Sampling, gram_size: usize, report: Option<&Path>) -> Outcome {
    let config = SuiteConfig {
        seed: sampling.seed,
        trials: sampling.trials,
        max_support: sampling.max_support,
        gram_size,
        oracle: OracleConfig::default(),
    };
    let mut all = Vec::new();
    for path in paths {
        println!("{}", path.display());
        let reports = verify::suite_from_file(path, &config);
        for r in &reports {
            println!("  {}", r.summary());
            if let Some(note) = &r.note {
                println!("    {note}");
            }
            for d in r.details.iter().take(3) {
                println!("    {d}");
            }
        }
        all.extend(reports);
    }
    write_reports(report, &all)?;
    all_passed(&all)
}

fn cmd_oracle(params: &Path, sampling: &Sampling, budget: u64, report: Option<&Path>) -> Outcome {
    let Params::State(state) = io::load_params(params)? else {
        return Err(Failure::Parse("the oracle needs state parameters (\"kind\": \"state\")".into()));
    };
    let config = OracleConfig {
        term_budget: budget,
        ..OracleConfig::default()
    };
    let group = state.group().clone();
    let mut sampler = ElementSampler::new(group.clone(), sampling.max_support, sampling.seed);
    let mut r = CheckReport::new(
        "oracle",
        "closed-form value equals the tensor trace",
        verify::EVAL_TOL,
        sampling.seed,
    );
    let mut table = String::new();
    writeln!(table, "element\tclosed form\toracle\tresidual").unwrap();
    for _ in 0..sampling.trials {
        let g = sampler.element();
        let text = g.format(&group);
        let closed = state.eval(&g);
        match oracle_eval_with(&state, &g, g.max_point().max(1), &config) {
            Ok(v) => {
                let residual = (closed - v).norm();
                writeln!(table, "{text}\t{}\t{}\t{residual:.3e}", fmt_complex(closed), fmt_complex(v)).unwrap();
                r.record(residual, || text.clone());
            }
            Err(e) => {
                writeln!(table, "{text}\t{}\t-\t{e}", fmt_complex(closed)).unwrap();
                r.fail(format!("{text}: {e}"));
            }
        }
    }
    print!("{table}");
    println!("{}", r.summary());
    write_reports(report, std::slice::from_ref(&r))?;
    all_passed(&[r])
}

fn cmd_kms(params: &Path) -> Outcome {
    let Params::State(state) = io::load_params(params)? else {
        return Err(Failure::Parse("the KMS test needs state parameters (\"kind\": \"state\")".into()));
    };
    let kms = state.check_kms();
    println!("KMS: {}", kms.kms);
    println!("{}", kms.diagnosis);
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Eval { params, elements } => cmd_eval(&params, &elements),
        Command::Decompose { group, params, elements } => cmd_decompose(group.as_deref(), params.as_deref(), &elements),
        Command::Gram { params, elements, report } => cmd_gram(&params, &elements, report.as_deref()),
        Command::Verify {
            params,
            sampling,
            gram_size,
            report,
        } => cmd_verify(&params, &sampling, gram_size, report.as_deref()),
        Command::Oracle {
            params,
            sampling,
            budget,
            report,
        } => cmd_oracle(&params, &sampling, budget, report.as_deref()),
        Command::Kms { params } => cmd_kms(&params),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
