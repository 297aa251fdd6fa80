use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use fusionkit::{Error, Status, Tolerances, Verdict};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &Path, bytes: &[u8]) -> Self {
        InputDigest {
            path: display_path(path),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

pub fn display_path(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct DataRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    pub name: String,
    pub value: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorClass {
    Input,
    Numeric,
    Check,
}

impl ErrorClass {
    pub fn of(e: &Error) -> Self {
        match e {
            Error::Parse(_) | Error::Io(_) | Error::Structure(_) | Error::Domain(_) => ErrorClass::Input,
            Error::Numeric { .. } => ErrorClass::Numeric,
            _ => ErrorClass::Check,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    pub class: ErrorClass,
    pub message: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub expected_fail: usize,
    pub errors: usize,
}

/// Everything one invocation produced.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub inputs: Vec<InputDigest>,
    pub verdicts: Vec<Record>,
    pub data: Vec<DataRecord>,
    pub errors: Vec<ErrorRecord>,
    pub warnings: Vec<String>,
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64, tolerances: Tolerances) -> Self {
        RunReport {
            command: command.to_string(),
            seed,
            tolerances,
            inputs: Vec::new(),
            verdicts: Vec::new(),
            data: Vec::new(),
            errors: Vec::new(),
            warnings: Vec::new(),
            elapsed: None,
        }
    }

    pub fn verdict(&mut self, file: Option<&str>, verdict: Verdict) {
        self.verdicts.push(Record {
            file: file.map(str::to_string),
            verdict,
        });
    }

    pub fn data(&mut self, file: Option<&str>, name: &str, value: impl Serialize) {
        self.data.push(DataRecord {
            file: file.map(str::to_string),
            name: name.to_string(),
            value: serde_json::to_value(value).unwrap_or(Value::Null),
        });
    }

    pub fn error(&mut self, file: Option<&str>, e: &Error) {
        self.errors.push(ErrorRecord {
            file: file.map(str::to_string),
            class: ErrorClass::of(e),
            message: e.to_string(),
        });
    }

    /// Appends another report's records, keeping their file tags.
    pub fn absorb(&mut self, other: RunReport) {
        self.inputs.extend(other.inputs);
        self.verdicts.extend(other.verdicts);
        self.data.extend(other.data);
        self.errors.extend(other.errors);
        self.warnings.extend(other.warnings);
    }

    pub fn counts(&self) -> Counts {
        let mut c = Counts {
            errors: self.errors.len(),
            ..Counts::default()
        };
        for r in &self.verdicts {
            match r.verdict.status {
                Status::Pass => c.pass += 1,
                Status::Fail => c.fail += 1,
                Status::NotApplicable => c.not_applicable += 1,
                Status::ExpectedFail => c.expected_fail += 1,
            }
        }
        c
    }

    pub fn exit_code(&self) -> i32 {
        let class = |k| self.errors.iter().any(|e| e.class == k);
        if class(ErrorClass::Input) {
            EXIT_INPUT
        } else if class(ErrorClass::Numeric) {
            EXIT_NUMERIC
        } else if class(ErrorClass::Check) || self.verdicts.iter().any(|r| r.verdict.failed()) {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }

    fn header(&self) -> Value {
        json!({
            "record": "header",
            "command": self.command,
            "seed": self.seed,
            "tolerances": self.tolerances,
            "inputs": self.inputs,
        })
    }

    fn summary(&self) -> Value {
        let mut s = json!({
            "record": "summary",
            "counts": self.counts(),
            "exit_code": self.exit_code(),
        });
        if let Some(t) = self.elapsed {
            s["elapsed_ms"] = json!(t.as_secs_f64() * 1e3);
        }
        s
    }

    /// One JSON object per line: header, verdicts, data, errors, warnings,
    /// summary.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        let mut line = |v: Value| {
            let _ = writeln!(out, "{v}");
        };
        line(self.header());
        for r in &self.verdicts {
            line(tagged("verdict", r));
        }
        for d in &self.data {
            line(tagged("data", d));
        }
        for e in &self.errors {
            line(tagged("error", e));
        }
        for w in &self.warnings {
            line(json!({ "record": "warning", "message": w }));
        }
        line(self.summary());
        out
    }

    pub fn to_json(&self) -> String {
        let mut doc = serde_json::to_value(self).unwrap_or(Value::Null);
        doc["summary"] = self.summary();
        serde_json::to_string_pretty(&doc).unwrap_or_default() + "\n"
    }
}

fn tagged(kind: &str, value: impl Serialize) -> Value {
    let mut v = serde_json::to_value(value).unwrap_or(Value::Null);
    if let Value::Object(map) = &mut v {
        map.insert("record".into(), Value::from(kind));
    }
    v
}
