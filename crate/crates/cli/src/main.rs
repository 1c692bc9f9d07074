mod args;
mod bench;
mod commands;
mod error;
mod render;

#[cfg(test)]
mod e2e;

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

/// What a run prints and how it exits.
pub struct Exit {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first), runs the command and writes `--output` if given.
pub fn dispatch<I, T>(args: I) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let fail = |code: u8, stderr: String| Exit {
        code,
        stdout: String::new(),
        stderr,
    };
    let cli = match args::Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            // --help and --version land here with exit code 0
            return if e.use_stderr() {
                fail(2, text)
            } else {
                Exit {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let outcome = match commands::run(&cli) {
        Ok(o) => o,
        Err(e) => return fail(e.exit_code(), format!("error: {e}\n")),
    };
    let mut stdout = outcome.text;
    if let Some(path) = &cli.global.output {
        if let Err(e) = std::fs::write(path, &stdout) {
            return fail(1, format!("error: cannot write report: {e}\n"));
        }
        stdout.clear();
    }
    let (code, stderr) = if outcome.verified {
        (0, String::new())
    } else {
        (1, "verification failed\n".to_string())
    };
    Exit {
        code,
        stdout,
        stderr,
    }
}

fn main() -> ExitCode {
    let exit = dispatch(std::env::args_os());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().lock().write_all(exit.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(exit.stderr.as_bytes());
    ExitCode::from(exit.code)
}
