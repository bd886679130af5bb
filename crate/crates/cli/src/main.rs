use clap::Parser;

fn main() {
    let cli = chemotaxis_cli::Cli::parse();
    let code = match chemotaxis_cli::execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    };
    std::process::exit(code);
}
