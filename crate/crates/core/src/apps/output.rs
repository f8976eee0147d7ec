use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// 17 significant digits, enough to round-trip an `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn io_error(e: std::io::Error, p: &Path) -> Error {
    Error::Io { path: p.display().to_string(), message: e.to_string() }
}

/// Writes `lines` to `dir/name`, creating `dir` if needed.
pub fn write_lines(dir: &Path, name: &str, lines: impl IntoIterator<Item = String>) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| io_error(e, dir))?;
    let mut text = String::new();
    for l in lines {
        text.push_str(&l);
        text.push('\n');
    }
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| io_error(e, &path))
}

/// One whitespace separated record of floats per row.
pub fn write_table(dir: &Path, name: &str, rows: impl IntoIterator<Item = Vec<f64>>) -> Result<()> {
    write_lines(
        dir,
        name,
        rows.into_iter().map(|r| r.into_iter().map(format_value).collect::<Vec<_>>().join(" ")),
    )
}

/// Rows of `label value...`, where the labels are integers.
pub(crate) fn labelled<'a>(
    labels: impl IntoIterator<Item = &'a [usize]>,
    values: impl IntoIterator<Item = Vec<f64>>,
) -> Vec<String> {
    labels
        .into_iter()
        .zip(values)
        .map(|(l, v)| {
            l.iter()
                .map(|i| i.to_string())
                .chain(v.into_iter().map(format_value))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}
