use std::io::{self, Write};
use std::process::ExitCode;
use std::thread;

use clap::Parser;

use rcic_core::cli::{run, Cli, RunConfig};

const STACK_SIZE: usize = 256 * 1024 * 1024;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let config = RunConfig::from(Cli::parse());
    let worker = thread::Builder::new()
        .stack_size(STACK_SIZE)
        .spawn(move || {
            let stdout = io::stdout();
            let stderr = io::stderr();
            let mut out = stdout.lock();
            let mut err = stderr.lock();
            let code = run(&config, &mut out, &mut err);
            let _ = out.flush();
            code
        })
        .expect("failed to spawn checker thread");
    match worker.join() {
        Ok(code) => ExitCode::from(code as u8),
        Err(_) => {
            eprintln!("rcic: internal error");
            ExitCode::from(101)
        }
    }
}
