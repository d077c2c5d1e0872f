//! Command-line front end: runs verification suites and writes reports.

pub mod args;
pub mod commands;
pub mod golden;
pub mod render;

use std::ffi::OsString;
use std::fs;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Format};
use commands::{CliError, Outcome};
use golden::GoldenOutcome;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses `argv` and runs the command; the return value is the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run_cli(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Internal(_) => EXIT_FAIL,
            }
        }
    }
}

/// Runs a command and returns its rendered output without writing anything.
pub fn run_capture<I, T>(argv: I) -> Result<(Outcome, String), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    let outcome = commands::execute(&cli.command)?;
    let text = render_as(&outcome, cli.output.format)?;
    Ok((outcome, text))
}

fn render_as(outcome: &Outcome, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(render::to_json(&render::document(outcome))),
        Format::Csv => render::to_csv(outcome),
    }
}

fn run_cli(cli: &Cli) -> Result<i32, CliError> {
    let start = Instant::now();
    let outcome = commands::execute(&cli.command)?;
    let elapsed = start.elapsed();
    let text = render_as(&outcome, cli.output.format)?;
    match &cli.output.out {
        Some(path) => fs::write(path, &text).map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    // timing stays out of the report so reruns are byte-identical
    eprintln!("{}: {:.3}s", outcome.command, elapsed.as_secs_f64());

    let mut code = if outcome.has_failures() { EXIT_FAIL } else { EXIT_OK };
    for r in &outcome.reports {
        for f in r.failures() {
            eprintln!("FAIL {}: {}", r.suite, f.label);
        }
    }
    if let Some(dir) = &cli.output.golden {
        let doc = render::document(&outcome);
        match golden::compare_or_bless(dir, &doc, &render::to_json(&doc), cli.output.bless)? {
            GoldenOutcome::Match => eprintln!("golden: match"),
            GoldenOutcome::Blessed(p) => eprintln!("golden: wrote {}", p.display()),
            GoldenOutcome::Mismatch(lines) => {
                eprintln!("golden: mismatch");
                for l in lines {
                    eprintln!("  {l}");
                }
                code = EXIT_FAIL;
            }
        }
    }
    Ok(code)
}
