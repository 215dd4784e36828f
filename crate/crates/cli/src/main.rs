use agentroof_cli::args::Cli;
use agentroof_cli::{run, EXIT_OK};
use clap::Parser;

fn main() {
    let request = Cli::parse().into_request();
    match run(&request) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            for path in &outcome.written {
                eprintln!("wrote {}", path.display());
            }
            std::process::exit(EXIT_OK);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
