//! `ltk`: JSON front end to the kernel.
//!
//! Reads one JSON input (file, `-` for stdin, or `--json`), runs a
//! subcommand and prints a versioned report. Exit status: 0 when every check
//! holds, 3 when a check fails or the kernel hits an internal inconsistency,
//! 2 on malformed or out-of-domain input.

mod commands;
mod error;
mod report;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use commands::{Config, Mode};
use error::{CliError, Result};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Rational,
    #[value(alias = "fixed")]
    Padic,
}

#[derive(Debug, Parser)]
#[command(name = "ltk", version, about = "Lubin-Tate, Mellin and local-period computations")]
struct Args {
    /// One of lt, mellin, factors, zeta, period, ratio, coleman, selftest.
    command: String,
    /// Input JSON file; `-` reads stdin. Omitted means `{}`.
    input: Option<PathBuf>,
    /// Inline input JSON instead of a file.
    #[arg(long, conflicts_with = "input")]
    json: Option<String>,
    #[arg(long, value_enum, default_value = "rational")]
    mode: ModeArg,
    /// `N` of the coefficient ring `Z/p^N` in p-adic mode.
    #[arg(long, default_value_t = 30)]
    precision: u32,
    /// Series truncation, overriding the input.
    #[arg(long)]
    trunc: Option<usize>,
    /// Worker threads for parallel commands.
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_input(args: &Args) -> Result<Value> {
    let text = match (&args.json, &args.input) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) if p.as_os_str() == "-" => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
        (None, Some(p)) => std::fs::read_to_string(p)?,
        (None, None) => return Ok(json!({})),
    };
    Ok(serde_json::from_str(&text)?)
}

fn execute(args: &Args, cfg: &Config) -> Result<(Value, bool)> {
    let input = read_input(args)?;
    let report = match args.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Input(format!("--jobs: {e}")))?
            .install(|| commands::run(&args.command, &input, cfg))?,
        None => commands::run(&args.command, &input, cfg)?,
    };
    Ok((report.to_json(&args.command, cfg.mode.name(), &input), report.all_pass()))
}

fn emit(args: &Args, v: &Value) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(v).expect("reports serialize");
    text.push('\n');
    match &args.out {
        Some(p) => std::fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = Config {
        mode: match args.mode {
            ModeArg::Rational => Mode::Rational,
            ModeArg::Padic => Mode::Padic,
        },
        precision: args.precision,
        trunc: args.trunc,
    };
    let (value, code) = match execute(&args, &cfg) {
        Ok((v, pass)) => (v, if pass { 0 } else { 3 }),
        Err(e) => (
            json!({
                "schema": report::SCHEMA,
                "command": args.command,
                "error": {"kind": e.kind(), "message": e.to_string()},
            }),
            e.exit_code(),
        ),
    };
    if let Err(e) = emit(&args, &value) {
        eprintln!("ltk: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
