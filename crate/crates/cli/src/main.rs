use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use torica_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stdout, code) = match run(&cli) {
        Ok(out) => (out.render(cli.json), out.exit),
        Err(e) if cli.json => (format!("{}\n", e.to_json()), e.exit_code()),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            (String::new(), e.exit_code())
        }
    };
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(stdout.as_bytes());
    ExitCode::from(code as u8)
}
