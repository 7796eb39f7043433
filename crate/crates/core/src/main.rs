use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use bsdefect::cli::{self, Cli, RunConfig};

fn fail(value: serde_json::Value, code: u8) -> ExitCode {
    println!("{value}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return fail(json!({ "error": "Usage", "message": e.to_string().trim() }), 1);
        }
    };
    let config = match RunConfig::from_cli(&parsed) {
        Ok(c) => c,
        Err(e) => return fail(cli::error_json(&e), 1),
    };
    if let Some(t) = config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            return fail(json!({ "error": "Usage", "message": e.to_string() }), 1);
        }
    }
    match cli::execute(&config) {
        Ok(value) => {
            if value.get("experimental") == Some(&json!(true)) {
                eprintln!("warning: decomposition of a non-reduced word is experimental");
            }
            println!("{}", cli::render(&value, config.pretty));
            ExitCode::SUCCESS
        }
        Err(e) => fail(cli::error_json(&e), cli::exit_code(&e) as u8),
    }
}
