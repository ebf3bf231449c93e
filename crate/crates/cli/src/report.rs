use std::fmt::Display;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    Ok = 0,
    Usage = 1,
    Timeout = 2,
    Failed = 3,
}

impl Exit {
    fn label(self) -> &'static str {
        match self {
            Exit::Ok => "ok",
            Exit::Usage => "usage_error",
            Exit::Timeout => "timeout",
            Exit::Failed => "verification_failed",
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    schema_version: &'static str,
    command: &'a str,
    parameters: Value,
    status: &'static str,
    exit_code: u8,
    elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    result: Value,
}

/// Collects one report and prints it once, as the last thing on stdout.
pub struct Reporter {
    command: &'static str,
    parameters: Value,
    start: Instant,
}

impl Reporter {
    pub fn new(command: &'static str, parameters: Value) -> Self {
        Reporter {
            command,
            parameters,
            start: Instant::now(),
        }
    }

    pub fn finish(self, exit: Exit, result: impl Serialize) -> Exit {
        self.emit(
            exit,
            None,
            serde_json::to_value(result).expect("report serializes"),
        )
    }

    pub fn fail(self, exit: Exit, err: impl Display) -> Exit {
        let msg = err.to_string();
        eprintln!("error: {msg}");
        self.emit(exit, Some(msg), Value::Null)
    }

    fn emit(self, exit: Exit, error: Option<String>, result: Value) -> Exit {
        let report = Report {
            schema_version: SCHEMA_VERSION,
            command: self.command,
            parameters: self.parameters,
            status: exit.label(),
            exit_code: exit as u8,
            elapsed_ms: self.start.elapsed().as_millis(),
            error,
            result,
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
        exit
    }
}

pub fn path_json(p: &Path) -> Value {
    json!(p.display().to_string())
}
