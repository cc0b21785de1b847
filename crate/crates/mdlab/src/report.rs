//! Output formatting shared by CSV/JSON writers and the run manifest.
//!
//! Every float that lands in a data file goes through [`g17`]: 17 significant
//! digits, enough for the printed value to parse back bit-identically, which
//! is what makes the byte-identical reproducibility contracts meaningful.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::Result;

/// Formats a float with 17 significant digits (`{:.16e}`).
pub fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// One `"key": value` JSON field with a g17 float value.
pub fn json_field(key: &str, x: f64) -> String {
    format!("\"{key}\": {}", g17(x))
}

/// Writes `contents` to `path`, or to stdout when `path` is `None`.
pub fn write_output(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, contents)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())?;
        }
    }
    Ok(())
}

/// Run manifest: the fully resolved configuration, the code version, and the
/// wall time. Stored in a separate file so the data files it describes stay
/// byte-identical across reruns.
pub fn manifest_json(command: &str, config: &[(String, String)], wall_seconds: f64) -> String {
    let mut cfg = serde_json::Map::new();
    for (k, v) in config {
        cfg.insert(k.clone(), serde_json::Value::String(v.clone()));
    }
    let started = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let obj = serde_json::json!({
        "command": command,
        "config": serde_json::Value::Object(cfg),
        "code_version": env!("CARGO_PKG_VERSION"),
        "wall_time_seconds": wall_seconds,
        "finished_unix": started,
    });
    let mut s = serde_json::to_string_pretty(&obj).expect("manifest serialization");
    s.push('\n');
    s
}
