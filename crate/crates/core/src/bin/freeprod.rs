use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = freeprod::cli::run(std::env::args_os());
    if code == 2 {
        let _ = std::io::stderr().write_all(out.as_bytes());
    } else {
        let _ = std::io::stdout().write_all(out.as_bytes());
    }
    ExitCode::from(code as u8)
}
