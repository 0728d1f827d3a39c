use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    /// The mathematical statement this check tests, when there is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
    pub detail: String,
}

/// Everything a command prints. No timestamps, so identical inputs give
/// byte-identical output.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub checks: Vec<Check>,
    pub payload: Value,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            checks: Vec::new(),
            payload: Value::Null,
        }
    }

    pub fn check(&mut self, name: &str, verdict: Verdict, claim: Option<&str>, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            verdict,
            claim: claim.map(str::to_string),
            detail: detail.into(),
        });
    }

    pub fn pass_if(&mut self, name: &str, ok: bool, claim: Option<&str>, detail: impl Into<String>) {
        let v = if ok { Verdict::Pass } else { Verdict::Fail };
        self.check(name, v, claim, detail);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
