use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::ValueEnum;
use serde::Serialize;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    pub fn ext(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CliError {
    pub error: &'static str,
    pub message: String,
    #[serde(skip)]
    code: u8,
}

impl CliError {
    pub fn usage(m: impl Into<String>) -> Self {
        CliError { error: "usage", message: m.into(), code: 2 }
    }

    pub fn io(m: impl Into<String>) -> Self {
        CliError { error: "io", message: m.into(), code: 3 }
    }

    pub fn internal(m: impl Into<String>) -> Self {
        CliError { error: "internal", message: m.into(), code: 4 }
    }
}

impl From<qdouble_core::Error> for CliError {
    fn from(e: qdouble_core::Error) -> Self {
        match e {
            qdouble_core::Error::UnknownPairing(_)
            | qdouble_core::Error::InvalidParameter(_)
            | qdouble_core::Error::WordSyntax(_)
            | qdouble_core::Error::UnknownGenerator { .. } => CliError::usage(e.to_string()),
            _ => CliError::internal(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::internal(e.to_string())
    }
}

/// Print the error object to stderr and return its exit code.
pub fn fail(e: &CliError) -> ExitCode {
    let body = serde_json::to_string(e).unwrap_or_else(|_| format!("{{\"error\":\"{}\"}}", e.error));
    eprintln!("{body}");
    ExitCode::from(e.code)
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn csv_string<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::internal(e.to_string()))
}

/// Write to `output` (relative to `dir` if both given), to `dir/default_name`,
/// or to stdout.
pub fn emit(body: &str, output: Option<PathBuf>, dir: Option<PathBuf>, default_name: &str) -> Result<(), CliError> {
    let path = match (output, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p),
        (None, Some(d)) => Some(d.join(default_name)),
        (None, None) => None,
    };
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|x| !x.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(|e| CliError::io(format!("{}: {e}", parent.display())))?;
            }
            fs::write(&p, body).map_err(|e| CliError::io(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).map_err(|e| CliError::io(e.to_string()))
        }
    }
}
