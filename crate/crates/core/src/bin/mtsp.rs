use clap::Parser;

fn main() {
    let cli = mtsp::cli::Cli::parse();
    std::process::exit(mtsp::cli::execute(cli));
}
