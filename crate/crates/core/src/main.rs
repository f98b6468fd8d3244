use clap::Parser;

fn main() {
    let cli = ctxalg::cli::Cli::parse();
    let code = ctxalg::cli::run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
