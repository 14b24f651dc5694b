use clap::error::ErrorKind;
use clap::Parser;

use cs_sharp::cli::{execute, Cli, Outcome};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match execute(&cli.command) {
        Outcome::Success(report) => println!("{}", report.render(cli.pretty)),
        Outcome::Failure { report, error } => {
            if let Some(report) = report {
                println!("{}", report.render(cli.pretty));
            }
            eprintln!("error: {error}");
            std::process::exit(error.exit_code());
        }
    }
}
