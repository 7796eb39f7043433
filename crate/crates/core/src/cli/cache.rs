//! Content-addressed result cache: one JSON file per semantic key.

use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const VERSION: &str = concat!("bsdefect-", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: String,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into(), version: VERSION.to_string() }
    }

    /// A cache that tags entries with `version` instead of the tool version.
    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> Self {
        Cache { dir: dir.into(), version: version.to_string() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn digest(&self, key: &Value) -> String {
        let canonical = json!({ "version": self.version, "key": key }).to_string();
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    pub fn path_for(&self, key: &Value) -> PathBuf {
        self.dir.join(format!("{}.json", self.digest(key)))
    }

    /// The stored result, or `None` on a miss. Unreadable, corrupt or
    /// foreign-version entries count as misses.
    pub fn get(&self, key: &Value) -> Result<Option<Value>> {
        let text = match fs::read_to_string(self.path_for(key)) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(e) if e.kind() == ErrorKind::InvalidData => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let Ok(entry) = serde_json::from_str::<Value>(&text) else { return Ok(None) };
        if entry["version"] != json!(self.version) || entry["key"] != *key {
            return Ok(None);
        }
        Ok(entry.get("result").cloned())
    }

    /// Writes through a temporary file and an atomic rename.
    pub fn put(&self, key: &Value, result: &Value) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let target = self.path_for(key);
        let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_nanos());
        let tmp = self.dir.join(format!(".{}.{}.{nanos}.tmp", self.digest(key), std::process::id()));
        let entry = json!({ "version": self.version, "key": key, "result": result });
        fs::write(&tmp, entry.to_string())?;
        fs::rename(&tmp, &target).map_err(|e| {
            let _ = fs::remove_file(&tmp);
            Error::from(e)
        })
    }
}
