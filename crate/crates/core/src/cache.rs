//! Versioned, content-hashed on-disk cache for groups, character tables,
//! Schur elements and stabilised characteristic-zero counts.
//!
//! Every entry is a JSON file holding the payload and the SHA-256 of its
//! canonical serialisation. Entries with a stale version or a wrong hash are
//! ignored and rebuilt. Writes go through a temporary file and a rename, and
//! an existing valid entry is never replaced.

use crate::error::Result;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "HECKECOUNT_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    kind: String,
    key: String,
    hash: String,
    payload: serde_json::Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    /// Present but unreadable, stale or failing its hash.
    Invalid,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

fn digest(payload: &serde_json::Value) -> String {
    let text = serde_json::to_string(payload).expect("JSON values serialise");
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn sanitize(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' || c == '.' { c } else { '_' }).collect()
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$HECKECOUNT_CACHE_DIR`, else the user cache directory.
    pub fn default_dir() -> PathBuf {
        if let Some(d) = std::env::var_os(CACHE_DIR_ENV) {
            return PathBuf::from(d);
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache")))
            .unwrap_or_else(std::env::temp_dir);
        base.join("heckecount")
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, kind: &str, key: &str) -> PathBuf {
        self.dir.join(format!("{}-{}.v{CACHE_VERSION}.json", sanitize(kind), sanitize(key)))
    }

    pub fn lookup<T: DeserializeOwned>(&self, kind: &str, key: &str) -> (Lookup, Option<T>) {
        let path = self.path(kind, key);
        let Ok(text) = fs::read_to_string(&path) else {
            return (Lookup::Miss, None);
        };
        let parsed: Option<T> = serde_json::from_str::<Entry>(&text).ok().and_then(|e| {
            if e.version != CACHE_VERSION || e.kind != kind || e.key != key || digest(&e.payload) != e.hash {
                None
            } else {
                serde_json::from_value(e.payload).ok()
            }
        });
        match parsed {
            Some(x) => (Lookup::Hit, Some(x)),
            None => (Lookup::Invalid, None),
        }
    }

    pub fn load<T: DeserializeOwned>(&self, kind: &str, key: &str) -> Option<T> {
        self.lookup(kind, key).1
    }

    /// Writes atomically; keeps an existing valid entry (first writer wins).
    pub fn store<T: Serialize>(&self, kind: &str, key: &str, payload: &T) -> Result<()> {
        if let (Lookup::Hit, _) = self.lookup::<serde_json::Value>(kind, key) {
            return Ok(());
        }
        fs::create_dir_all(&self.dir)?;
        let payload = serde_json::to_value(payload)?;
        let entry = Entry { version: CACHE_VERSION, kind: kind.into(), key: key.into(), hash: digest(&payload), payload };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&entry)?.as_bytes())?;
        tmp.as_file().sync_all()?;
        let target = self.path(kind, key);
        match self.lookup::<serde_json::Value>(kind, key) {
            (Lookup::Hit, _) => Ok(()),
            _ => {
                tmp.persist(&target).map_err(|e| e.error)?;
                Ok(())
            }
        }
    }

    /// Cached value, or compute and store it.
    pub fn get_or_compute<T, F>(&self, kind: &str, key: &str, compute: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(x) = self.load(kind, key) {
            return Ok(x);
        }
        let x = compute()?;
        self.store(kind, key, &x)?;
        Ok(x)
    }
}
