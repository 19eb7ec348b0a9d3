use std::io::{self, Write};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = proofbench::cli::run(&args, &mut input, &mut out);
    let _ = out.flush();
    std::process::exit(code);
}
