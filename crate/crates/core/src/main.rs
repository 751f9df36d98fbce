use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = topo_invariants::cli::run(std::env::args_os());
    let mut stream: Box<dyn Write> = if code == 1 {
        Box::new(std::io::stderr())
    } else {
        Box::new(std::io::stdout())
    };
    let _ = stream.write_all(out.as_bytes());
    ExitCode::from(code as u8)
}
