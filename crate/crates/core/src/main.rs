use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter_or("GOCED_LOG", "warn"))
        .target(env_logger::Target::Stderr)
        .try_init();
    let code = goced::cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
