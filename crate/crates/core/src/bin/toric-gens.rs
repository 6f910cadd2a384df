use std::process::ExitCode;

use toric_gens::cli::{parse_args, run, EXIT_FAILURE};

fn main() -> ExitCode {
    let req = match parse_args(std::env::args_os().skip(1)) {
        Ok(req) => req,
        Err(e) => {
            if e.exit_code == 0 {
                print!("{}", e.message);
            } else {
                eprint!("{}", e.message);
                if !e.message.ends_with('\n') {
                    eprintln!();
                }
            }
            return ExitCode::from(e.exit_code as u8);
        }
    };
    let (out, mut code) = run(&req);
    print!("{out}");
    if let Some(path) = &req.out {
        if let Err(e) = std::fs::write(path, &out) {
            eprintln!("cannot write {}: {e}", path.display());
            code = EXIT_FAILURE;
        }
    }
    ExitCode::from(code as u8)
}
