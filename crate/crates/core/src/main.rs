use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use quasi_loops::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    // a closed pipe on stdout is not an error of ours
    let _ = writeln!(std::io::stdout(), "{}", out.stdout);
    ExitCode::from(out.code as u8)
}
