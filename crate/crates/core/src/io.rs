//! Text loaders for meshes, point clouds, edge lists and bitmaps.
//!
//! All formats are whitespace separated, one record per line. Blank lines
//! and lines starting with `#` are skipped.

use std::fs;
use std::path::Path;

use crate::cube::Bitmap;
use crate::error::{Error, Result};
use crate::simplicial::{build_complex, SimplexArray, SimplicialComplex};

const INPUT: &str = "<input>";

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { path: INPUT.into(), line, message: message.into() }
}

/// `(line number, tokens)` for every meaningful line.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            None
        } else {
            Some((i + 1, l.split_whitespace().collect()))
        }
    })
}

fn float(tok: &str, line: usize) -> Result<f64> {
    let v: f64 = tok.parse().map_err(|_| err(line, format!("not a number: {tok:?}")))?;
    if !v.is_finite() {
        return Err(err(line, format!("non-finite value {tok:?}")));
    }
    Ok(v)
}

fn index(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| err(line, format!("not a vertex index: {tok:?}")))
}

fn rows_of<T>(
    text: &str,
    what: &'static str,
    parse: impl Fn(&str, usize) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    let mut rows = Vec::new();
    let mut width = None;
    for (line, toks) in records(text) {
        if *width.get_or_insert(toks.len()) != toks.len() {
            return Err(err(
                line,
                format!("expected {} values, found {}", width.unwrap(), toks.len()),
            ));
        }
        rows.push(toks.iter().map(|t| parse(t, line)).collect::<Result<Vec<T>>>()?);
    }
    if rows.is_empty() {
        return Err(Error::Empty(what));
    }
    Ok(rows)
}

/// One vertex per line.
pub fn parse_vertices(text: &str) -> Result<Vec<Vec<f64>>> {
    rows_of(text, "vertex file", float)
}

/// One point per line; same format as vertices.
pub fn parse_points(text: &str) -> Result<Vec<Vec<f64>>> {
    rows_of(text, "point file", float)
}

/// One top simplex per line, 0-based vertex indices.
pub fn parse_elements(text: &str) -> Result<SimplexArray> {
    let rows = rows_of(text, "element file", index)?;
    SimplexArray::from_rows(&rows)
}

/// `i j value` per line.
pub fn parse_edges(text: &str) -> Result<Vec<(usize, usize, f64)>> {
    let mut out = Vec::new();
    for (line, toks) in records(text) {
        if toks.len() != 3 {
            return Err(err(line, format!("expected `i j value`, found {} fields", toks.len())));
        }
        let (i, j) = (index(toks[0], line)?, index(toks[1], line)?);
        if i == j {
            return Err(err(line, format!("self loop at vertex {i}")));
        }
        out.push((i, j, float(toks[2], line)?));
    }
    if out.is_empty() {
        return Err(Error::Empty("edge file"));
    }
    Ok(out)
}

fn bit(tok: &str, line: usize) -> Result<bool> {
    match tok {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(err(line, format!("bitmap entries must be 0 or 1, found {tok:?}"))),
    }
}

/// Either rows of 0/1 forming a 2D picture (first row on top), or a
/// `shape: s0 s1 ...` header followed by the flattened bits, axis 0 slowest.
pub fn parse_bitmap(text: &str) -> Result<Bitmap> {
    let mut recs = records(text).peekable();
    let Some((first_line, first)) = recs.peek().cloned() else {
        return Err(Error::Empty("bitmap file"));
    };
    if first[0] == "shape:" || first[0] == "shape" {
        recs.next();
        let shape = first[1..]
            .iter()
            .map(|t| index(t, first_line))
            .collect::<Result<Vec<usize>>>()?;
        if shape.is_empty() || shape.contains(&0) {
            return Err(err(first_line, "shape needs positive extents"));
        }
        let size = shape.iter().try_fold(1usize, |a, &s| a.checked_mul(s));
        let size = size.filter(|&s| s <= 1 << 24).ok_or_else(|| err(first_line, "bitmap too large"))?;
        let mut bits = Vec::with_capacity(size);
        let mut last = first_line;
        for (line, toks) in recs {
            last = line;
            for t in toks {
                bits.push(bit(t, line)?);
            }
        }
        if bits.len() != size {
            return Err(err(last, format!("shape needs {size} bits, found {}", bits.len())));
        }
        return Bitmap::new(shape, bits);
    }
    let rows = rows_of(text, "bitmap file", bit)?;
    Bitmap::from_picture(&rows)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, message, .. } => {
            Error::Parse { path: path.display().to_string(), line, message }
        }
        Error::Empty(what) => Error::Parse {
            path: path.display().to_string(),
            line: 0,
            message: format!("empty {what}"),
        },
        other => other,
    })
}

pub fn load_vertices(path: &Path) -> Result<Vec<Vec<f64>>> {
    with_path(path, parse_vertices(&read(path)?))
}

pub fn load_points(path: &Path) -> Result<Vec<Vec<f64>>> {
    with_path(path, parse_points(&read(path)?))
}

pub fn load_elements(path: &Path) -> Result<SimplexArray> {
    with_path(path, parse_elements(&read(path)?))
}

pub fn load_edges(path: &Path) -> Result<Vec<(usize, usize, f64)>> {
    with_path(path, parse_edges(&read(path)?))
}

pub fn load_bitmap(path: &Path) -> Result<Bitmap> {
    with_path(path, parse_bitmap(&read(path)?))
}

pub fn load_mesh(vertices: &Path, elements: &Path) -> Result<SimplicialComplex> {
    build_complex(load_vertices(vertices)?, load_elements(elements)?)
}
