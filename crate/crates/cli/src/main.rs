use std::process::ExitCode;

use hspec_cli::{CliError, parse_args, run};

fn main() -> ExitCode {
    let code = match parse_args(std::env::args()) {
        Ok(config) => match run(&config) {
            Ok(code) => code,
            Err(err) => {
                eprintln!("{err}");
                err.exit_code()
            }
        },
        Err(CliError::Clap(e)) => {
            // clap renders help/version on stdout and errors on stderr.
            let _ = e.print();
            CliError::Clap(e).exit_code()
        }
        Err(err) => {
            eprintln!("{err}");
            err.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
