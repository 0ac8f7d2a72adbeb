//! The `benford` command-line tool: subcommand parsing, execution, and
//! deterministic rendering. The binary in `main.rs` is a thin wrapper so
//! integration tests can reach the pieces.

pub mod args;
pub mod commands;
pub mod output;

use clap::Parser;

/// Parses the process arguments, runs the subcommand, and returns the
/// process exit code. Data goes to standard output, diagnostics to
/// standard error.
///
/// Exit codes: 0 success, 1 usage error, 2 I/O error, 3 domain error.
pub fn run() -> i32 {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    let invocation = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match commands::execute(cli.command, &invocation) {
        Ok(output) => {
            use std::io::Write;
            if let Err(e) = std::io::stdout().write_all(output.as_bytes()) {
                eprintln!("benford: {e}");
                return 2;
            }
            0
        }
        Err(e) => {
            eprintln!("benford: {}", e.message);
            e.code
        }
    }
}
