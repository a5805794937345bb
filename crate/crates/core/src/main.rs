use std::io::Write;

fn main() {
    let (code, report) = sol_bes::cli::run(std::env::args_os());
    let out = if code == 0 || code == 1 { std::io::stdout().write_all(report.as_bytes()) } else { std::io::stderr().write_all(report.as_bytes()) };
    if out.is_err() {
        std::process::exit(3);
    }
    std::process::exit(code);
}
