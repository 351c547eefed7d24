//! Append-only result cache.
//!
//! Each entry is a file named by the SHA-256 of its key. Entries are created
//! once and never rewritten; `index.log` gets one line per new entry.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use anyhow::{Context, Result};
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

/// Hash of the running executable, so a rebuilt binary never reads stale entries.
pub fn code_hash() -> &'static str {
    static HASH: OnceLock<String> = OnceLock::new();
    HASH.get_or_init(|| {
        let bytes = std::env::current_exe()
            .and_then(fs::read)
            .unwrap_or_else(|_| env!("CARGO_PKG_VERSION").as_bytes().to_vec());
        hex(&Sha256::digest(&bytes))[..16].to_string()
    })
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn digest(s: &str) -> String {
    hex(&Sha256::digest(s.as_bytes()))
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.entry", digest(key)))
    }

    pub fn get(&self, key: &str) -> Option<(u8, String)> {
        let raw = fs::read_to_string(self.path(key)).ok()?;
        let (head, body) = raw.split_once('\n')?;
        let (stored, code) = head.rsplit_once("\texit=")?;
        if stored != key {
            return None;
        }
        Some((code.parse().ok()?, body.to_string()))
    }

    pub fn put(&self, key: &str, code: u8, body: &str) -> Result<()> {
        let path = self.path(key);
        let tmp = self.dir.join(format!(".{}.{}", digest(key), std::process::id()));
        fs::write(&tmp, format!("{key}\texit={code}\n{body}"))?;
        // an existing entry wins; entries are never replaced
        if fs::hard_link(&tmp, &path).is_ok() {
            let mut index = OpenOptions::new()
                .create(true)
                .append(true)
                .open(self.dir.join("index.log"))?;
            writeln!(index, "{}\t{key}", digest(key))?;
        }
        fs::remove_file(&tmp)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_write_once() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(dir.path()).unwrap();
        assert_eq!(c.get("k"), None);
        c.put("k", 0, "first\n").unwrap();
        c.put("k", 1, "second\n").unwrap();
        assert_eq!(c.get("k"), Some((0, "first\n".to_string())));
        let index = fs::read_to_string(dir.path().join("index.log")).unwrap();
        assert_eq!(index.lines().count(), 1);
    }
}
