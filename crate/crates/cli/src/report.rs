//! Text report plus its JSON mirror. Every command fills the same top-level keys.

use serde_json::{json, Value};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    /// Unreadable, malformed or invalid input.
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Internal(m) => m,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(_) => "input",
            CliError::Internal(_) => "internal",
        }
    }
}

impl From<twostep::Error> for CliError {
    fn from(e: twostep::Error) -> Self {
        use twostep::Error::*;
        match e {
            Format(_) | Malformed(_) | ZeroRelation(_) | NonProperIdeal { .. } | SkewViolation { .. }
            | DerivedDimDeficit { .. } | InvalidDimensions(_) | IndexOutOfRange(_) | UnknownId(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub lines: Vec<String>,
    pub subject: Value,
    pub fingerprint: Value,
    pub verdict: Value,
    pub catalog_matches: Value,
    pub caveats: Vec<String>,
    pub data: Value,
    error: Option<CliError>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            lines: Vec::new(),
            subject: Value::Null,
            fingerprint: Value::Null,
            verdict: Value::Null,
            catalog_matches: Value::Null,
            caveats: Vec::new(),
            data: Value::Null,
            error: None,
        }
    }

    pub fn failure(command: &'static str, e: CliError) -> Self {
        let mut r = Report::new(command);
        r.error = Some(e);
        r
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn caveat(&mut self, s: impl Into<String>) {
        self.caveats.push(s.into());
    }

    pub fn to_json(&self) -> String {
        let error = self
            .error
            .as_ref()
            .map(|e| json!({ "kind": e.kind(), "message": e.message(), "exit_code": e.exit_code() }));
        let v = json!({
            "command": self.command,
            "ok": self.error.is_none(),
            "subject": self.subject,
            "fingerprint": self.fingerprint,
            "verdict": self.verdict,
            "catalog_matches": self.catalog_matches,
            "caveats": self.caveats,
            "data": self.data,
            "error": error,
        });
        serde_json::to_string_pretty(&v).expect("json values serialize")
    }

    pub fn print_text(&self) {
        if let Some(e) = &self.error {
            eprintln!("error: {}", e.message());
            return;
        }
        for l in &self.lines {
            println!("{l}");
        }
        for c in &self.caveats {
            println!("caveat: {c}");
        }
    }
}

pub fn seq(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}
