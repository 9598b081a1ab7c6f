//! Output documents and atomic writes.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::exit::CliError;

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    config: &'a RunConfig,
    input_sha256: &'a str,
    result: &'a T,
}

pub fn json_document<T: Serialize>(cfg: &RunConfig, input_hash: &str, result: &T) -> Result<String, CliError> {
    let doc = Document {
        config: cfg,
        input_sha256: input_hash,
        result,
    };
    let mut text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::validation(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Comment lines carrying the config and input hash, for delimited tables.
pub fn table_preamble(cfg: &RunConfig, input_hash: &str) -> Result<String, CliError> {
    let config = serde_json::to_string(cfg).map_err(|e| CliError::validation(e.to_string()))?;
    Ok(format!("# config: {config}\n# input_sha256: {input_hash}\n"))
}

/// Temp file in the target directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, contents)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.json");
        write_atomic(&p, "one").unwrap();
        write_atomic(&p, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
