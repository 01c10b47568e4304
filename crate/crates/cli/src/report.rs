use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use torsorlab::FGAbelianGroup;

/// What a command produced, before it is wrapped into a report.
pub struct Output {
    pub result: Value,
    pub text: String,
}

pub struct Report {
    pub command: String,
    pub arguments: Value,
    pub input_digest: String,
    pub output: Output,
    pub wall_time_ms: f64,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "arguments": self.arguments,
            "input_digest": self.input_digest,
            "result": self.output.result,
            "wall_time_ms": self.wall_time_ms,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "command: {}", self.command).unwrap();
        writeln!(s, "input sha256: {}", self.input_digest).unwrap();
        s.push_str(&self.output.text);
        writeln!(s, "wall time: {:.3} ms", self.wall_time_ms).unwrap();
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Integers as JSON numbers when they fit, decimal strings otherwise.
pub fn int(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

pub fn group(g: &FGAbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "invariant_factors": g.invariant_factors().iter().map(int).collect::<Vec<_>>(),
        "display": g.to_string(),
    })
}

pub fn matrix_rows(m: &torsorlab::IntegerMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(int).collect())).collect())
}
