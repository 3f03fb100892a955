//! JSONL reading and writing helpers.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::{Error, Result};

/// A line that failed to decode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

/// Decodes every non-blank line; bad lines are returned separately with their
/// 1-based line number.
pub fn read_lines<T: DeserializeOwned>(reader: impl BufRead) -> Result<(Vec<T>, Vec<LineError>)> {
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(&line) {
            Ok(v) => ok.push(v),
            Err(e) => bad.push(LineError { line: i + 1, message: e.to_string() }),
        }
    }
    Ok((ok, bad))
}

pub fn read_file<T: DeserializeOwned>(path: &Path) -> Result<(Vec<T>, Vec<LineError>)> {
    let f = File::open(path)
        .map_err(|e| Error::MissingArtifact(format!("{}: {e}", path.display())))?;
    read_lines(BufReader::new(f))
}

/// Like [`read_file`] but any bad line is an error.
pub fn read_file_strict<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let (ok, bad) = read_file(path)?;
    if let Some(b) = bad.first() {
        return Err(Error::invalid(format!("{}:{}: {}", path.display(), b.line, b.message)));
    }
    Ok(ok)
}

pub fn write_lines<T: Serialize>(mut w: impl Write, items: &[T]) -> Result<()> {
    for item in items {
        serde_json::to_writer(&mut w, item)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_file<T: Serialize>(path: &Path, items: &[T]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut w = BufWriter::new(File::create(path)?);
    write_lines(&mut w, items)?;
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bad_lines_reported_with_numbers() {
        let input = "{\"a\":1}\n\nnot json\n{\"a\":2}\n";
        let (ok, bad): (Vec<serde_json::Value>, _) = read_lines(input.as_bytes()).unwrap();
        assert_eq!(ok.len(), 2);
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].line, 3);
    }
}
