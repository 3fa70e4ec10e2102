use clap::Parser;

fn main() {
    let args = locre::cli::Args::parse();
    let code = locre::cli::run(&args, &mut std::io::stdin().lock(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
