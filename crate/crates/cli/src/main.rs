use clap::Parser;

fn main() {
    let cli = lefdisc::Cli::parse();
    std::process::exit(lefdisc::run(&cli));
}
