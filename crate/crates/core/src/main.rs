use std::process::ExitCode;

fn main() -> ExitCode {
    expfun::cli::main_exit()
}
