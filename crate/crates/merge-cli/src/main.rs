//! Process shell for the `merge-opt` command-line tool: parse, execute,
//! print, exit. All behavior lives in the library so tests can call it.

use clap::Parser;
use merge_cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = execute(cli);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.exit_code);
}
