use std::io::Write;

use atlas_cli::lint::{run, LintArgs};
use clap::Parser;

fn main() {
    let args = LintArgs::parse();
    let outcome = run(&args);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
