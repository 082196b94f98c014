//! On-disk cache of computed invariants.
//!
//! One JSON file per entry, named by the SHA-256 of the canonical spec text,
//! the prime, the invariant kind and the engine version. A version bump
//! changes every key, so stale entries are never read.

use std::fs;
use std::io;
use std::path::PathBuf;

use pcomm::{GroupSpec, ENGINE_VERSION};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_DIR_ENV: &str = "PCOMM_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    engine: String,
    kind: String,
    spec: String,
    prime: Option<u64>,
    value: T,
}

pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    /// `$PCOMM_CACHE_DIR`, else `$XDG_CACHE_HOME/pcomm`, else `~/.cache/pcomm`.
    pub fn default_dir() -> Option<PathBuf> {
        let var = |name: &str| std::env::var_os(name).filter(|v| !v.is_empty()).map(PathBuf::from);
        var(CACHE_DIR_ENV)
            .or_else(|| var("XDG_CACHE_HOME").map(|d| d.join("pcomm")))
            .or_else(|| var("HOME").map(|d| d.join(".cache").join("pcomm")))
    }

    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn key(kind: &str, spec: &GroupSpec, prime: Option<u64>) -> String {
        let mut h = Sha256::new();
        for part in [kind.to_string(), spec.to_string(), format!("{prime:?}"), ENGINE_VERSION.to_string()] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())
    }

    fn path(&self, kind: &str, spec: &GroupSpec, prime: Option<u64>) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(kind, spec, prime)))
    }

    /// A miss on any read or decode problem, or on a stored entry that does not
    /// describe exactly this request.
    pub fn get<T: DeserializeOwned>(&self, kind: &str, spec: &GroupSpec, prime: Option<u64>) -> Option<T> {
        let text = fs::read_to_string(self.path(kind, spec, prime)).ok()?;
        let entry: Entry<T> = serde_json::from_str(&text).ok()?;
        let same = entry.engine == ENGINE_VERSION
            && entry.kind == kind
            && entry.spec == spec.to_string()
            && entry.prime == prime;
        same.then_some(entry.value)
    }

    /// Best effort: a cache that cannot be written is silently skipped.
    pub fn put<T: Serialize>(&self, kind: &str, spec: &GroupSpec, prime: Option<u64>, value: &T) {
        let entry = Entry {
            engine: ENGINE_VERSION.to_string(),
            kind: kind.to_string(),
            spec: spec.to_string(),
            prime,
            value,
        };
        let Ok(text) = serde_json::to_string(&entry) else { return };
        if fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let path = self.path(kind, spec, prime);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if fs::write(&tmp, text).is_ok() && fs::rename(&tmp, &path).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }

    /// Removes every entry; returns how many were removed.
    pub fn clear(&self) -> io::Result<usize> {
        let entries = match fs::read_dir(&self.dir) {
            Ok(entries) => entries,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e),
        };
        let mut removed = 0;
        for entry in entries {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                fs::remove_file(&path)?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}
