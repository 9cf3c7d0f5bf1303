use std::io::Write;

fn main() {
    let out = merge_forge::cli::run(std::env::args_os());
    let stream = if out.code >= merge_forge::cli::EXIT_USAGE { 2 } else { 1 };
    if stream == 2 {
        let _ = std::io::stderr().write_all(out.output.as_bytes());
    } else {
        let _ = std::io::stdout().write_all(out.output.as_bytes());
    }
    std::process::exit(out.code);
}
