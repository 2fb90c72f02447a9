use std::io::Write;

fn main() {
    let (output, code) = mzlab::cli::execute(std::env::args_os());
    let mut stdout = std::io::stdout();
    let _ = stdout.write_all(output.as_bytes());
    let _ = stdout.flush();
    std::process::exit(code);
}
