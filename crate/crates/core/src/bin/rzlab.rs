use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = rzlab::cli::run(std::env::args_os());
    if !outcome.stdout.is_empty() {
        let mut out = std::io::stdout().lock();
        // A closed pipe is not worth a panic.
        let _ = out.write_all(outcome.stdout.as_bytes()).and_then(|_| out.flush());
    }
    if !outcome.stderr.is_empty() {
        eprint!("{}", outcome.stderr);
    }
    ExitCode::from(outcome.exit_code)
}
