//! Output file emission: CSV/JSON selection, atomic writes, and the run
//! manifest.
//!
//! All files are written atomically (write to a dotted temp name in the
//! target directory, then rename), so a crashed run never leaves a partial
//! data file behind. Numbers are formatted with Rust's shortest-roundtrip
//! float formatting, which makes output byte-stable for identical inputs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use qpii_core::C64;
use serde_json::{json, Map, Value};

use crate::resolve::{validation, RunError};

/// Which output kinds the user asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatSel {
    Csv,
    Json,
    Both,
}

impl FormatSel {
    pub fn parse(v: &str) -> Result<Self, RunError> {
        match v {
            "csv" => Ok(FormatSel::Csv),
            "json" => Ok(FormatSel::Json),
            "both" => Ok(FormatSel::Both),
            other => Err(validation(format!(
                "--format must be one of csv, json, both (got `{other}`)"
            ))),
        }
    }

    pub fn wants_csv(self) -> bool {
        matches!(self, FormatSel::Csv | FormatSel::Both)
    }

    pub fn wants_json(self) -> bool {
        matches!(self, FormatSel::Json | FormatSel::Both)
    }

    /// Reject a format request the subcommand cannot honour (e.g. asking for
    /// CSV from a command that only produces JSON).
    pub fn check_supported(self, has_csv: bool, has_json: bool, cmd: &str) -> Result<(), RunError> {
        if self.wants_csv() && !has_csv && self == FormatSel::Csv {
            return Err(validation(format!("{cmd} has no CSV output")));
        }
        if self.wants_json() && !has_json && self == FormatSel::Json {
            return Err(validation(format!("{cmd} has no JSON output")));
        }
        Ok(())
    }
}

/// Shortest-roundtrip float text; `-0` is folded to `0` so that two
/// numerically equal runs cannot differ on a sign of zero.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x}")
    }
}

pub fn json_f64(x: f64) -> Value {
    // serde_json rejects non-finite numbers; surface them as nulls rather
    // than panicking mid-write.
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn json_c64(z: C64) -> Value {
    json!({"re": json_f64(z.re), "im": json_f64(z.im)})
}

/// Write `contents` to `dir/name` atomically.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, RunError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| validation(format!("cannot create output directory {}: {e}", dir.display())))?;
    let tmp = dir.join(format!(".{name}.tmp"));
    let dest = dir.join(name);
    std::fs::write(&tmp, contents)
        .map_err(|e| validation(format!("cannot write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, &dest)
        .map_err(|e| validation(format!("cannot move output into place at {}: {e}", dest.display())))?;
    println!("wrote {}", dest.display());
    Ok(dest)
}

/// Simple CSV accumulator. Fields never contain commas or quotes here (all
/// numeric), so no quoting logic is needed.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut buf = header.join(",");
        buf.push('\n');
        Csv { buf }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.buf.push_str(&fields.join(","));
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// The manifest records the effective configuration, binary version, start
/// time, and RNG seed of a run. Everything except `started_at` is a pure
/// function of the invocation, so two identical runs differ only there.
pub fn write_manifest(
    dir: &Path,
    subcommand: &str,
    config: &BTreeMap<String, String>,
    seed: u64,
) -> Result<(), RunError> {
    let mut cfg = Map::new();
    cfg.insert("subcommand".into(), Value::String(subcommand.into()));
    for (k, v) in config {
        cfg.insert(k.clone(), Value::String(v.clone()));
    }
    let started_at = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let doc = json!({
        "config": Value::Object(cfg),
        "version": env!("CARGO_PKG_VERSION"),
        "started_at": started_at,
        "seed": seed,
    });
    let text = serde_json::to_string_pretty(&doc)
        .map_err(|e| validation(format!("manifest serialization failed: {e}")))?;
    write_atomic(dir, "manifest.json", &(text + "\n"))?;
    Ok(())
}

pub fn to_pretty(value: &Value) -> Result<String, RunError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| validation(format!("JSON serialization failed: {e}")))
}
