//! Report emission: every run echoes its resolved config, TSV for tables
//! and JSON for everything else.

use std::io::Write;
use std::path::Path;

use gradedgrowth::{Error, Result};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

/// A finished report plus the exit status it implies.
pub struct Report {
    pub body: String,
    pub code: i32,
}

impl Report {
    pub fn ok(body: String) -> Self {
        Report { body, code: 0 }
    }
}

/// `{"config": …}` merged into a JSON object body.
pub fn json_report(config: &Value, mut body: Value) -> String {
    if let Value::Object(map) = &mut body {
        map.insert("config".into(), config.clone());
    }
    let mut s = serde_json::to_string_pretty(&body).expect("JSON values serialize");
    s.push('\n');
    s
}

/// A TSV table headed by `# config {json}` and the column names.
pub fn tsv_report(config: &Value, header: &[&str], rows: &[Vec<String>], trailer: &[String]) -> String {
    let mut s = format!("# config {}\n{}\n", serde_json::to_string(config).expect("JSON values serialize"), header.join("\t"));
    for r in rows {
        s.push_str(&r.join("\t"));
        s.push('\n');
    }
    for t in trailer {
        s.push_str("# ");
        s.push_str(t);
        s.push('\n');
    }
    s
}

pub fn write(body: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| Error::Resource(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).and_then(|_| out.flush()).map_err(|e| Error::Resource(format!("stdout: {e}")))
        }
    }
}
