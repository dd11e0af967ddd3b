use clap::Parser;

use arctic_cli::{run, Cli};

fn main() {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = run(cli, &mut stdout) {
        eprintln!("{e}");
        std::process::exit(e.code());
    }
}
