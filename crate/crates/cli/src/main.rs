use clap::Parser;

fn main() {
    std::process::exit(quadcurve_cli::main_with(quadcurve_cli::Cli::parse()));
}
