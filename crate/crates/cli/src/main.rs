use std::io::{self, BufWriter};
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut out = BufWriter::new(io::stdout());
    let mut err = io::stderr();
    let status = perm321_cli::run(std::env::args_os(), &mut out, &mut err);
    drop(out);
    ExitCode::from(status as u8)
}
