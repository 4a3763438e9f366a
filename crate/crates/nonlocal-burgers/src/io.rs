//! Deterministic text I/O: 17-significant-digit float formatting, atomic file
//! writes, and a reader for two-column `x,value` CSV tables.
//!
//! Everything this crate writes to disk goes through [`atomic_write`]: the
//! payload is first written to a `<name>.tmp` sibling and then renamed into
//! place, so an interrupted run never leaves a truncated file at the final
//! path.  Floats are rendered by [`fmt_f64`] with 17 significant digits, the
//! smallest count that round-trips every finite `f64` bit-exactly; files
//! written and re-read therefore reproduce identical numbers, and repeated
//! runs produce byte-identical output.

use std::fs;
use std::path::Path;

use crate::{Error, Result};

/// Format a float with 17 significant digits in scientific notation.
///
/// `f64` needs at most 17 significant decimal digits for the decimal → binary
/// → decimal round trip to be the identity, so this formatter is used for
/// every numeric cell this crate writes.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write `contents` to `path` atomically.
///
/// The payload goes to `<file name>.tmp` in the destination directory first
/// and is renamed over the final path afterwards, so the rename never crosses
/// a filesystem boundary and readers observe either the old file or the
/// complete new one.  Missing parent directories are created.
pub fn atomic_write(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut tmp_name = path
        .file_name()
        .ok_or_else(|| Error::InvalidParameter(format!("not a file path: {}", path.display())))?
        .to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// A parsed two-column table: abscissae, values, and the `key=value` pairs
/// collected from `#` comment lines.
#[derive(Clone, Debug)]
pub struct XyTable {
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: Vec<(String, String)>,
}

impl XyTable {
    /// Look up a metadata key collected from the `#` header lines.
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// Read a two-column CSV file of `x,value` rows.
///
/// Accepted line forms, in any order:
///
/// * `# key=value key=value …` — comment; the whitespace-separated
///   `key=value` tokens are collected into [`XyTable::meta`],
/// * a single non-numeric header row such as `x,value` (skipped),
/// * `<float>,<float>` data rows,
/// * blank lines (skipped).
///
/// Anything else is rejected with the 1-based line number.
pub fn read_xy_csv(path: &Path) -> Result<XyTable> {
    let text = fs::read_to_string(path)?;
    parse_xy_csv(&text)
}

/// Parse the contents of a two-column CSV table; see [`read_xy_csv`].
pub fn parse_xy_csv(text: &str) -> Result<XyTable> {
    let mut table = XyTable {
        xs: Vec::new(),
        values: Vec::new(),
        meta: Vec::new(),
    };
    let mut header_allowed = true;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            for token in comment.split_whitespace() {
                if let Some((key, value)) = token.split_once('=') {
                    table.meta.push((key.to_string(), value.to_string()));
                }
            }
            continue;
        }
        let mut fields = trimmed.split(',');
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::ConfigParse {
                line,
                message: format!("expected two comma-separated fields, got `{trimmed}`"),
            });
        };
        match (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
            (Ok(x), Ok(v)) => {
                table.xs.push(x);
                table.values.push(v);
                header_allowed = false;
            }
            _ if header_allowed => {
                // A single leading non-numeric row is a column header.
                header_allowed = false;
            }
            _ => {
                return Err(Error::ConfigParse {
                    line,
                    message: format!("expected two floats, got `{trimmed}`"),
                });
            }
        }
    }
    if table.xs.is_empty() {
        return Err(Error::ConfigParse {
            line: 0,
            message: "no data rows found".to_string(),
        });
    }
    Ok(table)
}
