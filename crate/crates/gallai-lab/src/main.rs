use clap::Parser;

use gallai_lab::cli::{run, Cli};

fn main() {
    // clap exits with 2 on its own for usage errors.
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
