use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let result = pderiv::cli::run(&args);
    let mut out = std::io::stdout().lock();
    if !result.stdout.is_empty() {
        let _ = writeln!(out, "{}", result.stdout);
    }
    if !result.stderr.is_empty() {
        eprintln!("{}", result.stderr);
    }
    let _ = out.flush();
    std::process::exit(result.exit_code);
}
