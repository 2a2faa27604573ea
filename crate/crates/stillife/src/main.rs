use std::process::ExitCode;

use stillife::cli::{run, Context, EXIT_USAGE};

fn main() -> ExitCode {
    let ctx = match Context::from_env() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let code = run(
        std::env::args_os(),
        ctx,
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    ExitCode::from(code as u8)
}
