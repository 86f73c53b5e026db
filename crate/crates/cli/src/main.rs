use clap::Parser;
use satcurve_cli::{run, Cli};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    if let Some(msg) = out.stderr {
        eprintln!("{msg}");
    }
    ExitCode::from(out.code as u8)
}
