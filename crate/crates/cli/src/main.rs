use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use seqrule_cli::{output_path, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        match output_path(&cli) {
            Some(path) => std::fs::write(path, &out.text)?,
            None => std::io::stdout().write_all(out.text.as_bytes())?,
        }
        if let Some(stats) = out.stats {
            std::io::stderr().write_all(stats.as_bytes())?;
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
