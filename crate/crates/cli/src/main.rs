mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use blockwise_core::Error;
use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{Failure, Outcome};

const EXIT_USAGE: u8 = 1;
const EXIT_MISMATCH: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };

    let (format, workers) = match &cli.command {
        Command::Classify(o) => (o.format, None),
        Command::Count(o)
        | Command::Posets(o)
        | Command::Polygon(o)
        | Command::Gamma(o)
        | Command::Ratio(o) => (o.format, o.workers),
    };

    let outcome = match workers {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| run(&cli.command)),
            Err(e) => Err(Failure::Core(Error::Unsupported(e.to_string()))),
        },
        None => run(&cli.command),
    };

    match outcome {
        Ok(out) => {
            let agree = out.check.as_ref().is_none_or(|c| c.agree);
            let (stdout, stderr) = out.render(format);
            print!("{stdout}");
            let _ = std::io::stdout().flush();
            if let Some(s) = stderr {
                eprint!("{s}");
            }
            if agree {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Internal(_)) {
                ExitCode::from(EXIT_INTERNAL)
            } else {
                ExitCode::from(EXIT_USAGE)
            }
        }
    }
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::Count(o) => commands::count(o),
        Command::Posets(o) => commands::posets(o),
        Command::Polygon(o) => commands::polygon(o),
        Command::Gamma(o) => commands::gamma(o),
        Command::Ratio(o) => commands::ratio(o),
        Command::Classify(o) => commands::classify(o),
    }
}
