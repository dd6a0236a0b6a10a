use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Duration;

use semistrong_core::coloring::{parse_coloring, EdgeColoring};
use semistrong_core::graph::{parse_graph, Graph};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_FAILED: u8 = 3;
pub const EXIT_UNKNOWN: u8 = 4;

/// An error that ends the command before it produced an outcome.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FAILED,
            message: message.into(),
        }
    }
}

/// What a command produced: an exit code, a JSON payload and its
/// human-readable rendering.
pub struct Outcome {
    pub code: u8,
    pub payload: Value,
    pub text: String,
}

impl Outcome {
    pub fn new(code: u8, payload: impl Serialize, text: impl Into<String>) -> Self {
        Outcome {
            code,
            payload: serde_json::to_value(payload).expect("payload serializes"),
            text: text.into(),
        }
    }
}

/// Digests of every file a command read, keyed by role.
#[derive(Default)]
pub struct Inputs {
    digests: BTreeMap<&'static str, String>,
}

impl Inputs {
    pub fn read(&mut self, role: &'static str, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let mut hex = String::with_capacity(64);
        for b in Sha256::digest(&bytes) {
            let _ = write!(hex, "{b:02x}");
        }
        self.digests.insert(role, hex);
        String::from_utf8(bytes).map_err(|_| Failure::usage(format!("{} is not UTF-8 text", path.display())))
    }

    pub fn graph(&mut self, role: &'static str, path: &Path) -> Result<Graph, Failure> {
        let text = self.read(role, path)?;
        parse_graph(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }

    pub fn coloring(&mut self, role: &'static str, path: &Path, g: &Graph) -> Result<EdgeColoring, Failure> {
        let text = self.read(role, path)?;
        parse_coloring(&text, g.edge_count()).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

#[derive(Serialize)]
struct RunResult<'a> {
    command: &'a [String],
    inputs: &'a BTreeMap<&'static str, String>,
    exit_code: u8,
    outcome: &'a Value,
    wall_ms: Option<f64>,
}

/// Prints the outcome. Wall time appears only when requested so that JSON
/// output is byte-identical across runs.
pub fn emit(command: &[String], inputs: &Inputs, outcome: &Outcome, json: bool, wall: Option<Duration>) {
    let wall_ms = wall.map(|d| (d.as_secs_f64() * 1e6).round() / 1e3);
    if json {
        let run = RunResult {
            command,
            inputs: &inputs.digests,
            exit_code: outcome.code,
            outcome: &outcome.payload,
            wall_ms,
        };
        println!("{}", serde_json::to_string_pretty(&run).expect("run result serializes"));
    } else {
        print!("{}", outcome.text);
        if !outcome.text.ends_with('\n') {
            println!();
        }
        if let Some(ms) = wall_ms {
            println!("wall time {ms} ms");
        }
    }
}
