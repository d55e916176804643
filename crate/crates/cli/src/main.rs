//! `genosc`: classify, verify and close oscillator algebras from JSON spec
//! files.
//!
//! Exit codes: 0 success, 1 infinite/failing verdict (only with
//! `--verdict-exit`), 2 input error, 3 budget abort or internal disagreement.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use genosc_core::classify::{classification_report, classify, classify_prefix, difference_table};
use genosc_core::exec::Execution;
use genosc_core::liealg::{lie_closure, ClosureOptions, ClosureStatus};
use genosc_core::oscillator::verify_relations;
use genosc_core::recurrence::file::{parse_spec_str, SpecInput};
use genosc_core::recurrence::{moments_to_recurrence, RecurrenceSpec};
use genosc_core::{ClassifyError, ClosureError};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "genosc", version, about = "Generalized oscillator algebras from three-term recurrences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: RunOpts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Dimension verdict from the difference table of b_n².
    Classify,
    /// Check the oscillator relations on an M×M truncation.
    Verify,
    /// Lie closure of {I, N, a+, a-} under commutators.
    Closure,
    /// Recurrence coefficients derived from a moment sequence.
    Moments,
    /// Validation, verdicts, symmetrization and closure in one document.
    Report,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Debug, Clone)]
struct RunOpts {
    /// Spec file; repeat for several inputs.
    #[arg(long = "input", short = 'i', global = true)]
    inputs: Vec<PathBuf>,
    /// Truncation size for `verify`.
    #[arg(short = 'M', long = "truncation", global = true, default_value_t = 16)]
    m: usize,
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 24)]
    max_dim: usize,
    #[arg(long, global = true, default_value_t = 8)]
    max_depth: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Highest difference-table row reported.
    #[arg(long, global = true, default_value_t = 3)]
    j_max: usize,
    /// Exit 1 when any input yields an infinite or failing verdict.
    #[arg(long, global = true)]
    verdict_exit: bool,
    /// Process inputs and closure passes on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

impl RunOpts {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn closure_options(&self) -> ClosureOptions {
        ClosureOptions { execution: self.execution(), ..ClosureOptions::with_budget(self.max_dim, self.max_depth) }
    }
}

/// Completed run for one input.
struct Outcome {
    json: Value,
    text: String,
    /// Infinite verdict, failed relation, or closure that did not close.
    negative: bool,
    /// Set when the run finished but exposed an internal disagreement.
    abort: Option<String>,
}

enum Failure {
    Input(String),
    Abort(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Abort(_) => 3,
        }
    }
}

impl From<ClosureError> for Failure {
    fn from(e: ClosureError) -> Self {
        match e {
            ClosureError::BadBudget { .. } => Failure::Input(e.to_string()),
            _ => Failure::Abort(e.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::RouteMismatch(_) => Failure::Abort(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn load(path: &PathBuf) -> Result<SpecInput, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read: {e}")))?;
    parse_spec_str(&text).map_err(|e| Failure::Input(e.to_string()))
}

fn recurrence_only(input: SpecInput, cmd: &str) -> Result<RecurrenceSpec, Failure> {
    match input {
        SpecInput::Recurrence(s) => {
            s.ensure_valid().map_err(|e| Failure::Input(e.to_string()))?;
            Ok(s)
        }
        SpecInput::Moments { .. } => {
            Err(Failure::Input(format!("moments: `{cmd}` needs a symbolic b2, not a moment sequence")))
        }
    }
}

fn labeled(label: &str, mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("label".into(), Value::String(label.to_string()));
    }
    v
}

fn run_one(cmd: Command, path: &PathBuf, opts: &RunOpts) -> Result<Outcome, Failure> {
    let input = load(path)?;
    match cmd {
        Command::Classify => match input {
            SpecInput::Moments { label, moments, count } => {
                let r = moments_to_recurrence(&moments, count).map_err(|e| Failure::Input(e.to_string()))?;
                let v = classify_prefix(&r.b2, opts.j_max)?;
                let text = render::verdict(&label, &v, None);
                Ok(Outcome { negative: v.is_infinite(), json: labeled(&label, json!(v)), text, abort: None })
            }
            SpecInput::Recurrence(_) => {
                let s = recurrence_only(input, "classify")?;
                let v = classify(&s)?;
                let table = difference_table(&s, opts.j_max).map_err(|e| Failure::Input(e.to_string()))?;
                let mut json = labeled(&s.label, json!(v));
                json["difference_table"] = serde_json::to_value(&table).expect("serializable");
                let text = render::verdict(&s.label, &v, Some(&table));
                Ok(Outcome { negative: v.is_infinite(), json, text, abort: None })
            }
        },
        Command::Verify => {
            let s = recurrence_only(input, "verify")?;
            let reports = verify_relations(&s, opts.m, opts.tol).map_err(|e| Failure::Input(e.to_string()))?;
            let pass = reports.iter().all(|r| r.pass);
            let json = json!({"label": s.label, "M": opts.m, "tol": opts.tol, "pass": pass, "relations": reports});
            let text = render::relations(&s.label, opts.m, &reports);
            Ok(Outcome { negative: !pass, json, text, abort: None })
        }
        Command::Closure => {
            let s = recurrence_only(input, "closure")?;
            let r = lie_closure(&s, &opts.closure_options())?;
            let text = render::closure(&s.label, &r);
            Ok(Outcome {
                negative: r.status != ClosureStatus::Closed,
                json: labeled(&s.label, json!(r)),
                text,
                abort: None,
            })
        }
        Command::Moments => {
            let SpecInput::Moments { label, moments, count } = input else {
                return Err(Failure::Input("moments: field missing; `moments` needs a moment-sequence spec".into()));
            };
            let r = moments_to_recurrence(&moments, count).map_err(|e| Failure::Input(e.to_string()))?;
            let rows: Vec<Value> =
                (0..count).map(|n| json!({"n": n, "a": render::rat(&r.a[n]), "b2": render::rat(&r.b2[n])})).collect();
            let text = render::moments(&label, &r);
            Ok(Outcome {
                negative: false,
                json: json!({"label": label, "count": count, "coefficients": rows}),
                text,
                abort: None,
            })
        }
        Command::Report => {
            let s = recurrence_only(input, "report")?;
            let report = classification_report(&s, &opts.closure_options()).map_err(|e| match e {
                genosc_core::classify::report::ReportError::Classify(e) => Failure::from(e),
                genosc_core::classify::report::ReportError::Closure(e) => Failure::from(e),
            })?;
            let negative = report.verdict.as_ref().is_some_and(|v| v.is_infinite());
            let abort = (report.routes_agree == Some(false) || report.symmetrization_invariant == Some(false))
                .then(|| "classifier and closure verdicts disagree".to_string());
            let text = render::report(&report);
            let json = serde_json::to_value(&report).expect("serializable");
            Ok(Outcome { negative, json, text, abort })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = &cli.opts;
    if opts.inputs.is_empty() {
        eprintln!("error: input: at least one --input file is required");
        return ExitCode::from(2);
    }
    let results = opts.execution().map(&opts.inputs, |path| run_one(cli.command, path, opts));

    let mut code = 0u8;
    for (path, result) in opts.inputs.iter().zip(results) {
        match result {
            Ok(out) => {
                match opts.format {
                    Format::Json => println!("{}", out.json),
                    Format::Text => print!("{}", out.text),
                }
                if let Some(msg) = out.abort {
                    eprintln!("error: {}: {msg}", path.display());
                    code = code.max(3);
                } else if out.negative && opts.verdict_exit {
                    code = code.max(1);
                }
            }
            Err(f) => {
                let msg = match &f {
                    Failure::Input(m) | Failure::Abort(m) => m,
                };
                eprintln!("error: {}: {msg}", path.display());
                code = code.max(f.code());
            }
        }
    }
    ExitCode::from(code)
}
