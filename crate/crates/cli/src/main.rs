mod args;
mod commands;
mod render;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Format};
use commands::{Failure, Outcome};

fn document(command: &str, outcome: &Outcome, total_ms: f64) -> Value {
    json!({
        "command": command,
        "inputs": outcome.inputs,
        "result": outcome.result,
        "citations": outcome.citations,
        "timings": { "total_ms": total_ms },
        "exit_code": outcome.status as u8,
    })
}

fn emit(cli: &Cli, doc: &Value) -> Result<(), String> {
    let text = match cli.format() {
        Format::Json => serde_json::to_string_pretty(doc).expect("json") + "\n",
        Format::Human => render::human(doc),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = cli.command.name();
    let start = Instant::now();
    let (doc, code) = match commands::run(&cli.command, &cli.limits) {
        Ok(outcome) => {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            (document(name, &outcome, ms), outcome.status as u8)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(1);
        }
        Err(Failure::Budget { inputs, message }) => {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let doc = json!({
                "command": name,
                "inputs": inputs,
                "result": { "error": message },
                "citations": [],
                "timings": { "total_ms": ms },
                "exit_code": 3,
            });
            (doc, 3)
        }
    };
    if let Err(e) = emit(&cli, &doc) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
