use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// What a subcommand produced: the JSON object and its plain-text rendering.
pub struct Report {
    pub json: Value,
    pub plain: String,
    /// A verification that ran to completion but found counterexamples.
    pub failed: bool,
}

impl Report {
    pub fn new(command: &str, body: &impl Serialize, plain: String) -> Report {
        let mut json = serde_json::to_value(body).expect("results serialize");
        let obj = match json {
            Value::Object(ref mut m) => m,
            _ => unreachable!("results are objects"),
        };
        obj.insert("schema_version".into(), SCHEMA_VERSION.into());
        obj.insert("command".into(), command.into());
        Report {
            json,
            plain,
            failed: false,
        }
    }

    pub fn failing(mut self, failed: bool) -> Report {
        self.failed = failed;
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(&self.json).expect("valid JSON")
        } else {
            self.plain.trim_end().to_string()
        }
    }
}

/// `ε` for the empty word.
pub fn show(s: impl ToString) -> String {
    let s = s.to_string();
    if s.is_empty() { "ε".into() } else { s }
}
