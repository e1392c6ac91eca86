use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use qdd::payoff::PayoffVector;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A command result that can be printed in every output format.
pub trait Render {
    fn text(&self) -> String;
    fn json(&self) -> Result<String, CliError>;
    fn csv(&self) -> Result<String, CliError>;
}

/// Human-readable number: four decimals, never `-0.0000`.
pub fn fixed(x: f64) -> String {
    let s = format!("{x:.4}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

/// Four per-player values serialized as a name-keyed object in seat order.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ByPlayer {
    #[serde(rename = "Alice")]
    pub alice: f64,
    #[serde(rename = "Bob")]
    pub bob: f64,
    #[serde(rename = "Colin")]
    pub colin: f64,
    #[serde(rename = "Doug")]
    pub doug: f64,
}

impl From<&PayoffVector> for ByPlayer {
    fn from(v: &PayoffVector) -> Self {
        let [alice, bob, colin, doug] = *v.values();
        ByPlayer { alice, bob, colin, doug }
    }
}

impl ByPlayer {
    pub fn values(&self) -> [f64; 4] {
        [self.alice, self.bob, self.colin, self.doug]
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Serializes `rows` under `header` with the `csv` crate.
pub fn to_csv<R: Serialize>(header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Stdout(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn emit<R: Render>(value: &R, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let text = match format {
        Format::Text => value.text(),
        Format::Json => value.json()?,
        Format::Csv => value.csv()?,
    };
    write_text(&text, out)
}

pub fn write_text(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(CliError::Stdout)
        }
    }
}
