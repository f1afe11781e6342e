//! Structured artifact writers: atomic file writes, CSV emitters and JSON
//! summaries.  All formatting is deterministic — identical inputs produce
//! byte-identical files.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fbp::MonitorRow;
use crate::field::SpaceTimeField;
use crate::periodic::PeriodicOrbit;

/// Writes `bytes` to `path` atomically: write a sibling temp file, then
/// rename over the destination.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = PathBuf::from(path);
    let mut name = path
        .file_name()
        .ok_or_else(|| Error::InvalidParameter(format!("not a file path: {}", path.display())))?
        .to_os_string();
    name.push(".tmp");
    tmp.set_file_name(name);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Serializes `value` as pretty JSON (trailing newline) and writes it
/// atomically.
pub fn write_json<S: Serialize>(path: &Path, value: &S) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidParameter(format!("JSON serialization failed: {e}")))?;
    text.push('\n');
    atomic_write(path, text.as_bytes())
}

fn push_num(out: &mut String, v: f64) {
    // shortest round-trip decimal form; deterministic across runs
    out.push_str(&format!("{v}"));
}

/// Monitor rows with the normative header `t,h,hprime,umax,mass,residual`.
pub fn monitors_csv(rows: &[MonitorRow<f64>]) -> String {
    let mut out = String::from("t,h,hprime,umax,mass,residual\n");
    for r in rows {
        for (i, v) in [r.t, r.h, r.hprime, r.umax, r.mass, r.residual]
            .into_iter()
            .enumerate()
        {
            if i > 0 {
                out.push(',');
            }
            push_num(&mut out, v);
        }
        out.push('\n');
    }
    out
}

/// A space-time field as `t,x,<name>` rows, time-major.
pub fn field_csv(field: &SpaceTimeField<f64>, name: &str) -> String {
    let mut out = format!("t,x,{name}\n");
    for (i, &t) in field.ts.iter().enumerate() {
        for (j, &x) in field.xs.iter().enumerate() {
            push_num(&mut out, t);
            out.push(',');
            push_num(&mut out, x);
            out.push(',');
            push_num(&mut out, field.values[i][j]);
            out.push('\n');
        }
    }
    out
}

/// A periodic orbit as `t,<name>` rows over one period.
pub fn orbit_csv(orbit: &PeriodicOrbit<f64>, name: &str) -> String {
    let n = orbit.values.len() - 1;
    let mut out = format!("t,{name}\n");
    for (i, &v) in orbit.values.iter().enumerate() {
        let t = orbit.period * i as f64 / n as f64;
        push_num(&mut out, t);
        out.push(',');
        push_num(&mut out, v);
        out.push('\n');
    }
    out
}
