use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

/// The `{schema_version, status, payload, diagnostics}` document printed on stdout.
#[derive(Serialize)]
pub struct Envelope {
    schema_version: u32,
    status: &'static str,
    payload: Value,
    diagnostics: Vec<String>,
    #[serde(skip)]
    table: String,
}

impl Envelope {
    pub fn ok(payload: Value, diagnostics: Vec<String>, table: String) -> Self {
        Envelope { schema_version: SCHEMA_VERSION, status: "ok", payload, diagnostics, table }
    }

    pub fn error(e: &anyhow::Error) -> Self {
        let diagnostics = e.chain().map(|c| c.to_string()).collect();
        Envelope {
            schema_version: SCHEMA_VERSION,
            status: "error",
            payload: Value::Null,
            diagnostics,
            table: String::new(),
        }
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Json => {
                println!("{}", serde_json::to_string_pretty(self).expect("envelope serializes"));
            }
            Format::Table => {
                if self.status == "ok" {
                    print!("{}", self.table);
                }
                for d in &self.diagnostics {
                    eprintln!("{}: {d}", if self.status == "ok" { "note" } else { "error" });
                }
            }
        }
    }
}

/// Progress lines on stderr, so stdout stays machine readable.
pub struct Progress {
    enabled: bool,
}

impl Progress {
    pub fn new(enabled: bool) -> Self {
        Progress { enabled }
    }

    pub fn note(&self, msg: impl AsRef<str>) {
        if self.enabled {
            eprintln!("{}", msg.as_ref());
        }
    }
}
