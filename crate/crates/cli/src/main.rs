use clap::Parser;
use galosc_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    std::process::exit(galosc_cli::execute(&cli));
}
