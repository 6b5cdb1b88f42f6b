use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, output) = tubedef::run(std::env::args_os());
    print!("{output}");
    ExitCode::from(code)
}
