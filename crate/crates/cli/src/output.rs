//! Atomic artifact writes.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

fn io_error(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// `#`-prefixed copy of the serialized configuration.
pub fn config_header(config_text: &str) -> String {
    let mut out = String::from("# equiconv run configuration\n");
    for line in config_text.lines() {
        if line.is_empty() {
            out.push_str("#\n");
        } else {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out
}

/// Writes `contents` to `dir/name` through a temporary file in `dir` and a rename.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let target = dir.join(name);
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_error(dir, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| io_error(&target, e))?;
    tmp.as_file().sync_all().map_err(|e| io_error(&target, e))?;
    tmp.persist(&target).map_err(|e| io_error(&target, e.error))?;
    Ok(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_atomic_write() {
        let h = config_header("a = 1\n\n[s]\nb = 2\n");
        assert_eq!(h, "# equiconv run configuration\n# a = 1\n#\n# [s]\n# b = 2\n");
        let dir = tempfile::tempdir().unwrap();
        let sub = dir.path().join("nested");
        let p = write_atomic(&sub, "x.csv", "first\n").unwrap();
        write_atomic(&sub, "x.csv", "second\n").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "second\n");
        assert_eq!(std::fs::read_dir(&sub).unwrap().count(), 1);
    }
}
