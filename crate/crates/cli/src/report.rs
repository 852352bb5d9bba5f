use std::time::Duration;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "unimod/1";

/// Where an input came from, with a fingerprint of its content.
#[derive(Clone, Debug)]
pub struct Input {
    pub source: String,
    pub sha256: String,
}

impl Input {
    pub fn new(source: &str, content: &[u8]) -> Self {
        let digest = Sha256::digest(content);
        Input {
            source: source.to_string(),
            sha256: digest.iter().map(|b| format!("{:02x}", b)).collect(),
        }
    }
}

/// What a subcommand produced: a text body, the same payload as JSON, and
/// whether it represents a failed verification.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub failed: bool,
}

impl Outcome {
    pub fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            failed: false,
        }
    }
}

pub struct Report<'a> {
    pub command: &'a str,
    pub inputs: &'a [Input],
    pub elapsed: Duration,
}

impl Report<'_> {
    pub fn render_text(&self, body: &str) -> String {
        let mut out = String::from(body);
        if !out.is_empty() && !out.ends_with('\n') {
            out.push('\n');
        }
        out.push_str(&format!("# command: {}\n", self.command));
        for input in self.inputs {
            out.push_str(&format!(
                "# input: {} sha256:{}\n",
                input.source, input.sha256
            ));
        }
        out.push_str(&format!("# time: {:.3} ms\n", self.millis()));
        out
    }

    pub fn render_json(&self, key: &str, payload: Value) -> String {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(SCHEMA));
        doc.insert("command".into(), json!(self.command));
        doc.insert(
            "inputs".into(),
            Value::Array(
                self.inputs
                    .iter()
                    .map(|i| json!({"source": i.source, "sha256": i.sha256}))
                    .collect(),
            ),
        );
        doc.insert(key.into(), payload);
        doc.insert("timing_ms".into(), json!(self.millis()));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
        s.push('\n');
        s
    }

    fn millis(&self) -> f64 {
        self.elapsed.as_secs_f64() * 1000.0
    }
}

/// A JSON number when it fits in an `i64`, otherwise a decimal string.
pub fn big(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

pub fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
