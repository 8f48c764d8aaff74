//! Machine-readable command reports.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub findings: Vec<Value>,
    pub seed: u64,
    /// Excluded from the determinism contract.
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report { command: command.to_string(), status: Status::Ok, findings: Vec::new(), seed, timing_ms: 0.0 }
    }

    pub fn push(&mut self, finding: Value) {
        self.findings.push(finding);
    }

    pub fn violation(&mut self, finding: Value) {
        self.status = Status::Violation;
        self.findings.push(finding);
    }

    pub fn error(&mut self, message: String) {
        self.status = Status::Error;
        self.findings.push(serde_json::json!({ "kind": "error", "message": message }));
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Violation | Status::Error => 1,
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self).expect("reports serialize"),
            OutputFormat::Text => {
                let mut out = format!("{}: {:?}\n", self.command, self.status);
                for f in &self.findings {
                    out.push_str(&render_finding(f));
                    out.push('\n');
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

fn render_finding(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut parts = Vec::new();
            for (k, val) in map {
                parts.push(format!("{}={}", k, val));
            }
            format!("  {}", parts.join(" "))
        }
        other => format!("  {}", other),
    }
}
