//! Text persistence for the memo table:
//!
//! ```text
//! relgw-cache v1
//! 2,3,6,2,0,0=135/4
//! ```

use std::fs;
use std::io::Write;
use std::path::Path;

use super::memo::{InvariantKey, MemoTable};
use crate::error::{Error, Result};
use crate::qrationals::{format_rational, parse_rational};

pub const CACHE_HEADER: &str = "relgw-cache v1";

pub fn load_cache(path: &Path) -> Result<MemoTable> {
    let fail = |reason: String| Error::Cache { path: path.to_path_buf(), reason };
    let text = fs::read_to_string(path).map_err(|e| fail(e.to_string()))?;
    let mut lines = text.lines();
    match lines.next() {
        Some(CACHE_HEADER) => {}
        Some(other) => return Err(fail(format!("bad header {other:?}, expected {CACHE_HEADER:?}"))),
        None => return Err(fail("empty file".into())),
    }
    let table = MemoTable::new();
    for (index, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let lineno = index + 2;
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| fail(format!("line {lineno}: missing '='")))?;
        let fields = key
            .split(',')
            .map(|f| f.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| fail(format!("line {lineno}: {e}")))?;
        let [s, d, m, n, k, j] = fields[..] else {
            return Err(fail(format!("line {lineno}: expected six key fields, got {}", fields.len())));
        };
        let key = InvariantKey::new(s, d, m, n, k, j);
        key.validate().map_err(|e| fail(format!("line {lineno}: {e}")))?;
        let value = parse_rational(value).map_err(|e| fail(format!("line {lineno}: {e}")))?;
        table.insert(key, value).map_err(|e| fail(format!("line {lineno}: {e}")))?;
    }
    Ok(table)
}

/// Writes every entry sorted by key, replacing the file atomically.
pub fn save_cache(path: &Path, table: &MemoTable) -> Result<()> {
    let mut body = String::with_capacity(32 * table.len() + CACHE_HEADER.len() + 1);
    body.push_str(CACHE_HEADER);
    body.push('\n');
    for (key, value) in table.entries() {
        body.push_str(&format!("{key}={}\n", format_rational(&value)));
    }
    let tmp = path.with_extension("tmp");
    let mut file = fs::File::create(&tmp).map_err(|e| Error::Cache { path: tmp.clone(), reason: e.to_string() })?;
    file.write_all(body.as_bytes())?;
    file.sync_all()?;
    fs::rename(&tmp, path).map_err(|e| Error::Cache { path: path.to_path_buf(), reason: e.to_string() })
}
