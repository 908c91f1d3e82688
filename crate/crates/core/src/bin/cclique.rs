use clap::Parser;

fn main() {
    let cli = cclique::cli::Cli::parse();
    std::process::exit(cclique::cli::main_with(cli));
}
