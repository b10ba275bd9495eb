use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = lps_cli::run(std::env::args_os());
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(result.exit_code as u8)
}
