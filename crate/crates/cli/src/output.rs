use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Fail,
    Unsupported,
    BudgetExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Unsupported => 2,
            Status::BudgetExceeded => 3,
        }
    }
}

/// What every subcommand returns. `text` is the human-readable rendering.
#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    pub text: String,
}

impl CommandResult {
    pub fn new(status: Status, payload: Value, text: String) -> Self {
        CommandResult { status, payload, diagnostics: Vec::new(), text }
    }

    pub fn error(status: Status, message: impl Into<String>) -> Self {
        let message = message.into();
        CommandResult { status, payload: Value::Null, diagnostics: vec![message.clone()], text: message }
    }

    pub fn with_diagnostic(mut self, d: impl Into<String>) -> Self {
        self.diagnostics.push(d.into());
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(self).expect("result serializes")
        } else {
            let mut out = self.text.trim_end().to_string();
            for d in &self.diagnostics {
                if !self.text.contains(d.as_str()) {
                    out.push_str(&format!("\nnote: {d}"));
                }
            }
            out
        }
    }
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
