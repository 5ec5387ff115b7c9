use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ialg::{execute, parse_inline, parse_script, Options, DEFAULT_MAX_ORDER};

/// Define finite interval structures and query them from a script.
#[derive(Parser)]
#[command(name = "ialg", version, args_conflicts_with_subcommands = true)]
struct Cli {
    /// Run statements given inline, separated by `;`.
    #[arg(short = 'e', value_name = "STATEMENTS")]
    expr: Option<String>,

    /// Print one JSON array instead of newline-delimited objects.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a script file.
    Run { script: PathBuf },
}

fn max_order() -> Result<u128, String> {
    match std::env::var("IALG_MAX_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("IALG_MAX_ORDER must be a positive integer, got '{v}'")),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let parsed = match (&cli.expr, &cli.command) {
        (Some(e), _) => parse_inline(e),
        (None, Some(Cmd::Run { script })) => match std::fs::read_to_string(script) {
            Ok(text) => parse_script(&text),
            Err(e) => {
                eprintln!("ialg: cannot read {}: {e}", script.display());
                return ExitCode::from(2);
            }
        },
        (None, None) => {
            eprintln!("ialg: expected `run SCRIPT` or `-e STATEMENTS`");
            return ExitCode::from(2);
        }
    };
    let script = match parsed {
        Ok(s) => s,
        Err(e) => {
            eprintln!("ialg: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = match max_order() {
        Ok(max_order) => Options { max_order },
        Err(e) => {
            eprintln!("ialg: {e}");
            return ExitCode::from(2);
        }
    };

    let result = execute(&script, &opts);
    let mut out = std::io::stdout().lock();
    if out.write_all(result.render(cli.pretty).as_bytes()).and_then(|()| out.flush()).is_err() {
        return ExitCode::from(1);
    }
    for d in &result.diagnostics {
        eprintln!("ialg: line {}: {}", d.line, d.message);
    }
    ExitCode::from(result.status() as u8)
}
