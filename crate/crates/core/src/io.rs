use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{CncError, Result};

/// Writes `bytes` to a temporary file beside `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(|e| CncError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CncError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CncError::io(path, e))?;
    tmp.persist(path).map_err(|e| CncError::io(path, e.error))?;
    Ok(())
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CncError::io(path, e))
}
