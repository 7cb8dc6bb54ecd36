//! Content-addressed result cache: one JSON file per
//! (canonical spec, convention version, arithmetic mode).
//!
//! Basis digests are SHA-256 over the text `ambient=N` followed by one line
//! per basis vector, each line the entries `index:num/den` joined by `,`.
//! Bases are in normal form, so the digest identifies the subspace.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::lie::FormKind;
use crate::linalg::{Arithmetic, Subspace};

/// Bumped whenever a coordinate convention or normal form changes.
pub const CONVENTION_VERSION: u32 = 1;

static WRITE_LOCK: Mutex<()> = Mutex::new(());

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub spec: String,
    pub convention: u32,
    pub arithmetic: Arithmetic,
}

impl CacheKey {
    pub fn new(spec: &str, arithmetic: Arithmetic) -> Self {
        CacheKey {
            spec: spec.to_string(),
            convention: CONVENTION_VERSION,
            arithmetic,
        }
    }

    pub fn file_name(&self) -> String {
        let text = serde_json::to_string(self).expect("key serializes");
        format!("{}.json", hex::encode(Sha256::digest(text.as_bytes())))
    }
}

/// Everything a check computes except timings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CachedResult {
    pub dim_v: usize,
    pub dim_g: usize,
    pub dim_rbar: usize,
    pub dim_l: usize,
    pub is_skew_berger: bool,
    pub dim_rnabla: usize,
    pub dim_prolong1: usize,
    pub dim_prolong2: usize,
    pub rank_spencer: usize,
    pub dim_h22: usize,
    pub weak_dim: Option<usize>,
    pub form_kind: Option<FormKind>,
    /// Arithmetic actually used for `R̄`.
    pub arithmetic: Arithmetic,
    pub digests: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub key: CacheKey,
    pub result: CachedResult,
}

pub fn digest(s: &Subspace) -> String {
    let mut h = Sha256::new();
    h.update(format!("ambient={}\n", s.ambient()));
    for v in s.basis() {
        let line: Vec<String> = v.iter().map(|(i, x)| format!("{i}:{}/{}", x.numer(), x.denom())).collect();
        h.update(line.join(","));
        h.update("\n");
    }
    hex::encode(h.finalize())
}

#[derive(Debug, Clone)]
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(ResultCache {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn read(path: &Path) -> Option<CacheFile> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                log::warn!("cache file {}: {e}", path.display());
                return None;
            }
        };
        match serde_json::from_str(&text) {
            Ok(f) => Some(f),
            Err(e) => {
                log::warn!("ignoring corrupt cache file {}: {e}", path.display());
                None
            }
        }
    }

    pub fn get(&self, key: &CacheKey) -> Option<CachedResult> {
        let path = self.dir.join(key.file_name());
        if !path.exists() {
            return None;
        }
        let f = Self::read(&path)?;
        if &f.key != key {
            log::warn!("cache file {} holds a different key", path.display());
            return None;
        }
        Some(f.result)
    }

    pub fn put(&self, key: &CacheKey, result: &CachedResult) -> Result<()> {
        let file = CacheFile {
            key: key.clone(),
            result: result.clone(),
        };
        let text = serde_json::to_string_pretty(&file)?;
        let _guard = WRITE_LOCK.lock().unwrap_or_else(|e| e.into_inner());
        let path = self.dir.join(key.file_name());
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// All readable entries, sorted by spec.
    pub fn entries(&self) -> Result<Vec<CacheFile>> {
        let mut out = Vec::new();
        for ent in fs::read_dir(&self.dir)? {
            let path = ent?.path();
            if path.extension().is_some_and(|e| e == "json") {
                if let Some(f) = Self::read(&path) {
                    out.push(f);
                }
            }
        }
        out.sort_by(|a, b| a.key.spec.cmp(&b.key.spec));
        Ok(out)
    }
}
