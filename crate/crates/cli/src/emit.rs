//! Output helpers: formats, CSV rows and atomic file writes.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
    Csv,
}

impl Format {
    pub fn unsupported(self, command: &str) -> anyhow::Error {
        CliError::Usage(format!("--format {self:?} is not supported by `{command}`").to_lowercase()).into()
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_row(values: impl IntoIterator<Item = f64>) -> String {
    values.into_iter().map(num).collect::<Vec<_>>().join(",")
}

pub fn csv(header: &[String], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}

/// Adds the schema tag and pretty-prints with a trailing newline.
pub fn json_doc(mut body: Value) -> String {
    if let Value::Object(map) = &mut body {
        map.insert("schema".into(), Value::from(soliton_forge::SCHEMA));
    }
    let mut out = serde_json::to_string_pretty(&body).expect("serializable json");
    out.push('\n');
    out
}

/// Writes through a temporary sibling and renames, so readers never see a partial file.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let tmp = dir.join(format!(".{name}.tmp"));
    let dest = dir.join(name);
    let mut f = fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
    f.write_all(contents.as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, &dest).with_context(|| format!("writing {}", dest.display()))?;
    Ok(())
}
