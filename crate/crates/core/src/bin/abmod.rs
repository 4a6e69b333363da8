use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use abmod::cli::{error_report, parse_spec, report_status, run_job, Command};
use abmod::AbError;
use clap::Parser;
use serde_json::Value;

/// Exact computations with (a,b)-modules and frescos.
///
/// Reads a JSON job (or a bare presentation/module) from --in or stdin and
/// writes a JSON report. Exit status: 0 ok, 1 mathematical error or failed
/// verification, 2 usage error.
#[derive(Parser)]
#[command(name = "abmod", version)]
struct Args {
    /// invariants, bernstein, jh, pushforward, classify or verify
    command: String,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long = "out")]
    output: Option<PathBuf>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    guard: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    suite: Option<String>,
    /// add float renderings of every rational
    #[arg(long)]
    decimal: bool,
}

fn read_input(args: &Args, command: Command) -> Result<Value, AbError> {
    let text = match &args.input {
        Some(path) => std::fs::read(path).map_err(|e| AbError::Parse(format!("{}: {e}", path.display())))?,
        None if command == Command::Verify => return Ok(serde_json::json!({})),
        None => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| AbError::Parse(format!("stdin: {e}")))?;
            buf
        }
    };
    let v: Value = serde_json::from_slice(&text).map_err(|e| AbError::Parse(e.to_string()))?;
    if v.get("lambda1").is_some() || v.get("action").is_some() {
        return Ok(serde_json::json!({ "input": v }));
    }
    Ok(v)
}

fn run(args: &Args) -> Result<Value, AbError> {
    let command: Command = args.command.parse()?;
    let mut v = read_input(args, command)?;
    let obj = v
        .as_object_mut()
        .ok_or_else(|| AbError::Parse("job must be a JSON object".into()))?;
    match obj.get("command").and_then(Value::as_str) {
        Some(c) if c != args.command => {
            return Err(AbError::Validation(format!(
                "job says {c:?} but the command line says {:?}",
                args.command
            )))
        }
        _ => {
            obj.insert("command".into(), Value::String(args.command.clone()));
        }
    }
    let mut job = parse_spec(serde_json::to_string(&v).expect("valid json").as_bytes())?;
    if args.order.is_some() {
        job.order = args.order;
    }
    if args.guard.is_some() {
        job.guard = args.guard;
    }
    if let Some(s) = args.seed {
        job.seed = s;
    }
    if args.suite.is_some() {
        job.suite = args.suite.clone();
    }
    job.decimal |= args.decimal;
    run_job(&job)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(report) => {
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            let written = match &args.output {
                Some(path) => std::fs::write(path, text),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("{}", error_report(&AbError::Invalid(e.to_string())));
                return ExitCode::from(2);
            }
            ExitCode::from(report_status(&report) as u8)
        }
        Err(e) => {
            eprintln!("{}", error_report(&e));
            ExitCode::from(e.exit_status() as u8)
        }
    }
}
