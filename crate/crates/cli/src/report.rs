use serde_json::{json, Map, Value};

use crate::Config;

/// The canonical report body. Keys come out sorted because serde_json's
/// default map is ordered; big integers are already decimal strings.
pub struct Report {
    pub command: String,
    pub args: Map<String, Value>,
    pub config: Config,
    pub result: Value,
    pub assumptions: Vec<Value>,
    /// Human-readable summary lines for text mode.
    pub summary: Vec<String>,
    pub exit_status: u8,
}

impl Report {
    pub fn new(command: &str, config: &Config) -> Self {
        Report {
            command: command.to_string(),
            args: Map::new(),
            config: config.clone(),
            result: Value::Null,
            assumptions: Vec::new(),
            summary: Vec::new(),
            exit_status: 0,
        }
    }

    pub fn arg(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.args.insert(key.to_string(), value.into());
        self
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    pub fn body(&self) -> Value {
        let c = &self.config;
        json!({
            "command": self.command,
            "args": self.args,
            "config": {
                "caps": {
                    "enumeration": c.cap_enum,
                    "lattice": c.cap_lattice,
                    "coset": c.cap_coset,
                    "spin": c.cap_spin,
                },
                "jobs": c.jobs,
                "seed": c.seed,
            },
            "result": self.result,
            "assumptions_checked": self.assumptions,
        })
    }

    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(&self.body()).expect("report serializes")
    }

    pub fn text(&self) -> String {
        let mut s = format!("{}\n", self.command);
        for l in &self.summary {
            s.push_str("  ");
            s.push_str(l);
            s.push('\n');
        }
        for a in &self.assumptions {
            s.push_str(&format!(
                "  check {}: {}\n",
                a["name"].as_str().unwrap_or("?"),
                if a["holds"].as_bool() == Some(true) { "ok" } else { "FAILED" }
            ));
        }
        s
    }
}
