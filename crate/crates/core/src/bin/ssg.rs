use std::io::Write;

fn main() {
    let exit = ssgraph::cli::run(std::env::args_os());
    print!("{}", exit.stdout);
    eprint!("{}", exit.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(exit.code);
}
