use std::process::ExitCode;

use clap::Parser;

use graphtopo::commands::{run, Cli, Command};

fn output_path(cli: &Cli) -> Option<&std::path::Path> {
    match &cli.command {
        Command::Ph(a) => a.common.out.as_deref(),
        Command::Betti(a) => a.common.out.as_deref(),
        Command::Wl(a) => a.common.out.as_deref(),
        Command::Regular(a) => a.out.as_deref(),
        Command::Gradcheck(a) => a.out.as_deref(),
        // `gen` writes the dataset to --out and its summary to stdout.
        Command::Gen(_) => None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            match output_path(&cli) {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &out.text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
