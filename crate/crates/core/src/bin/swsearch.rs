use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = swsearch::cli::main_with_args(std::env::args_os().skip(1), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code as u8)
}
