use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fincat::Error;
use fincat_cli::commands::{caps, run_command, Command, Options};
use fincat_cli::corpus::bundled_texts;
use fincat_cli::workspace::{load_str, load_workspace};

/// Exact computations with finite categories enriched in finite sets.
///
/// Without `-w` the bundled fixture corpus is loaded.
#[derive(Debug, Parser)]
#[command(name = "fincat", version)]
struct Cli {
    /// Workspace description files; may be repeated.
    #[arg(short, long = "workspace", global = true)]
    workspace: Vec<PathBuf>,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    cap_rounds: Option<usize>,
    #[arg(long, global = true)]
    cap_members: Option<usize>,
    /// Node budget for functor and equivalence searches.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let workspace = if cli.workspace.is_empty() {
        load_str(&bundled_texts())
    } else {
        load_workspace(&cli.workspace)
    };
    let opts = Options {
        caps: caps(cli.cap_rounds, cli.cap_members, cli.budget),
        seed: cli.seed,
    };
    let result = workspace.and_then(|ws| run_command(&ws, &cli.command, &opts));
    match result {
        Ok(report) => {
            let text = if cli.json {
                let mut s = serde_json::to_string_pretty(&report.json).expect("reports serialize");
                s.push('\n');
                s
            } else {
                report.text()
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            report_error(&e, cli.json);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn report_error(e: &Error, json: bool) {
    if json {
        let v = serde_json::json!({"error": e.to_string(), "exit_code": e.exit_code()});
        eprintln!("{v}");
    } else {
        eprintln!("error: {e}");
    }
}
