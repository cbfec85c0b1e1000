use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ScanRow;
use crate::error::{Error, Result};

/// Everything a cached count depends on, apart from the crate version.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub family: String,
    pub params: String,
    pub seed: Option<u64>,
    pub field: String,
    pub x: usize,
    pub n: usize,
    pub dmode: String,
    pub d: Option<String>,
    pub engine: String,
}

impl CacheKey {
    /// Hex SHA-256 of the canonical key text under `version`.
    pub fn digest(&self, version: &str) -> String {
        let canonical = [
            format!("version={version}"),
            format!("family={}", self.family),
            format!("params={}", self.params),
            format!("seed={}", self.seed.map(|s| s.to_string()).unwrap_or_default()),
            format!("field={}", self.field),
            format!("X={}", self.x),
            format!("n={}", self.n),
            format!("dmode={}", self.dmode),
            format!("d={}", self.d.clone().unwrap_or_default()),
            format!("engine={}", self.engine),
        ]
        .join("\n");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

#[derive(Serialize, Deserialize)]
struct Record {
    key: String,
    #[serde(flatten)]
    row: ScanRow,
}

/// Append-only JSONL store of scan rows keyed by [`CacheKey::digest`].
#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    version: String,
    rows: HashMap<String, ScanRow>,
    hits: usize,
}

impl Cache {
    /// Opens (or prepares to create) the cache at `path` for this crate
    /// version.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        Cache::with_version(path, env!("CARGO_PKG_VERSION"))
    }

    /// As [`Cache::open`], keyed under an explicit version string.
    pub fn with_version(path: impl AsRef<Path>, version: &str) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut rows = HashMap::new();
        match File::open(&path) {
            Ok(f) => {
                for (i, line) in BufReader::new(f).lines().enumerate() {
                    let line = line.map_err(|e| Error::io(&path, e))?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match serde_json::from_str::<Record>(&line) {
                        Ok(rec) => {
                            rows.insert(rec.key, rec.row);
                        }
                        Err(e) => log::warn!("{}:{}: skipping unreadable cache line: {e}", path.display(), i + 1),
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(Error::io(&path, e)),
        }
        Ok(Cache {
            path,
            version: version.to_string(),
            rows,
            hits: 0,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Number of distinct keys held.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Lookups answered so far.
    pub fn hits(&self) -> usize {
        self.hits
    }

    /// The newest row stored under `key`.
    pub fn get(&mut self, key: &CacheKey) -> Option<ScanRow> {
        let row = self.rows.get(&key.digest(&self.version)).cloned();
        self.hits += usize::from(row.is_some());
        row
    }

    /// Appends `row` under `key` as one whole line.
    pub fn put(&mut self, key: &CacheKey, row: &ScanRow) -> Result<()> {
        let rec = Record {
            key: key.digest(&self.version),
            row: row.clone(),
        };
        let mut line = serde_json::to_string(&rec).expect("records serialize");
        line.push('\n');
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| Error::io(&self.path, e))?;
        f.write_all(line.as_bytes()).map_err(|e| Error::io(&self.path, e))?;
        self.rows.insert(rec.key, rec.row);
        Ok(())
    }
}
