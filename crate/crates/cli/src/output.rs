use std::io::Write;
use std::path::PathBuf;

use serde_json::Value;

pub enum Format {
    Text,
    Json(Option<PathBuf>),
    Csv(Option<PathBuf>),
}

/// A rendered result. `pass` is false when a comparison in it failed.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub csv: String,
    pub pass: bool,
}

pub fn emit(r: &Report, format: &Format) -> std::io::Result<()> {
    let (body, path) = match format {
        Format::Text => (r.text.clone(), None),
        Format::Json(p) => (format!("{}\n", serde_json::to_string_pretty(&r.json).expect("serializable")), p.as_ref()),
        Format::Csv(p) => (r.csv.clone(), p.as_ref()),
    };
    match path {
        Some(p) => std::fs::write(p, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}
