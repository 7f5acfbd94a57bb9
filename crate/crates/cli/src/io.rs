use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Fails early when the directory that would hold `path` does not exist.
pub fn check_writable(path: &Path) -> Result<()> {
    let dir = parent(path);
    if !dir.is_dir() {
        bail!("output directory {} does not exist", dir.display());
    }
    Ok(())
}

pub fn check_readable(path: &Path) -> Result<()> {
    if !path.is_file() {
        bail!("no such file: {}", path.display());
    }
    Ok(())
}

fn parent(path: &Path) -> PathBuf {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

/// Writes through a temporary file in the same directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = tempfile::NamedTempFile::new_in(parent(path))
        .with_context(|| format!("cannot create temporary file for {}", path.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path)
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

/// Appends-style JSON-lines log, written atomically when the run finishes.
#[derive(Default)]
pub struct RunLog {
    lines: Vec<String>,
}

impl RunLog {
    pub fn record(&mut self, value: serde_json::Value) {
        self.lines.push(value.to_string());
    }

    pub fn extend_raw(&mut self, jsonl: &str) {
        self.lines.extend(jsonl.lines().map(str::to_string));
    }

    pub fn finish(&self, path: Option<&Path>) -> Result<()> {
        let Some(path) = path else {
            return Ok(());
        };
        let mut text = self.lines.join("\n");
        if !text.is_empty() {
            text.push('\n');
        }
        write_atomic(path, &text)
    }
}
