use std::io;

fn main() {
    let stdin = io::stdin();
    let code = clmat::io_cli::cli::run(std::env::args_os(), stdin.lock(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
