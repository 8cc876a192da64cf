use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = std::io::stdout();
    match meadowlab::cli::run(std::env::args_os(), &mut stdout.lock()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(meadowlab::cli::CliError::Usage(msg)) => {
            eprint!("{msg}");
            if !msg.ends_with('\n') {
                eprintln!();
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
