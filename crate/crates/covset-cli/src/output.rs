//! Output formatting: 6-significant-digit reals, CSV rows, and the
//! stdout-or-file sink.

use std::fs;
use std::io::Write;
use std::path::Path;

/// Formats a real to 6 significant digits in plain decimal notation.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.5}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Rounds a real to 6 significant digits so JSON output stays short.
pub fn round6(x: f64) -> f64 {
    sig6(x).parse().unwrap_or(x)
}

pub fn csv_table(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Writes to `--out` when given, stdout otherwise.
pub fn emit(payload: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, payload)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let stdout = std::io::stdout();
            let mut handle = stdout.lock();
            handle
                .write_all(payload.as_bytes())
                .and_then(|_| handle.flush())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    }
}
