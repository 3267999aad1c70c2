//! On-disk cache of character tables and configuration-space traces.
//!
//! One JSON document per entry, named `kind-key-checksum.json`. The checksum is the
//! SHA-256 of the canonical payload; entries with a bad checksum or another schema
//! version are skipped on load and never rewritten in place.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use repstab_core::osconf::TraceCache;
use repstab_core::symcore::CharacterTable;

pub const SCHEMA_VERSION: u32 = 1;

/// Default cache directory when `--cache-dir` is absent.
pub const CACHE_DIR_ENV: &str = "REPSTAB_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    SnChartable,
    OsTraces,
}

impl Kind {
    fn as_str(self) -> &'static str {
        match self {
            Kind::SnChartable => "sn_chartable",
            Kind::OsTraces => "os_traces",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub kind: Kind,
    pub key: String,
    /// Exact integers as decimal strings, row by row.
    pub payload: Vec<Vec<String>>,
    pub checksum: String,
}

fn checksum(kind: Kind, key: &str, payload: &[Vec<String>]) -> String {
    let mut h = Sha256::new();
    h.update(kind.as_str().as_bytes());
    h.update(b"\n");
    h.update(key.as_bytes());
    h.update(b"\n");
    h.update(serde_json::to_vec(payload).expect("strings serialize"));
    hex::encode(h.finalize())
}

impl CacheEntry {
    pub fn new(kind: Kind, key: String, payload: Vec<Vec<String>>) -> Self {
        let checksum = checksum(kind, &key, &payload);
        CacheEntry {
            schema_version: SCHEMA_VERSION,
            kind,
            key,
            payload,
            checksum,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.schema_version == SCHEMA_VERSION && self.checksum == checksum(self.kind, &self.key, &self.payload)
    }

    pub fn file_name(&self) -> String {
        format!("{}-{}-{}.json", self.kind.as_str(), self.key, &self.checksum[..16])
    }

    fn integers(&self) -> Option<Vec<Vec<BigInt>>> {
        self.payload
            .iter()
            .map(|row| row.iter().map(|s| s.parse().ok()).collect())
            .collect()
    }
}

fn to_strings(rows: &[Vec<BigInt>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect()
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// `--cache-dir` if given, else the environment variable, else no cache.
    pub fn from_args(dir: Option<&Path>) -> io::Result<Option<Self>> {
        match dir.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)) {
            Some(d) => Cache::open(d).map(Some),
            None => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// The first valid entry for `(kind, key)`.
    pub fn load(&self, kind: Kind, key: &str) -> Option<CacheEntry> {
        let prefix = format!("{}-{}-", kind.as_str(), key);
        let mut names: Vec<PathBuf> = fs::read_dir(&self.dir)
            .ok()?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.file_name()
                    .and_then(|s| s.to_str())
                    .is_some_and(|s| s.starts_with(&prefix) && s.ends_with(".json") && s.len() == prefix.len() + 21)
            })
            .collect();
        names.sort();
        names.into_iter().find_map(|p| {
            let entry: CacheEntry = serde_json::from_slice(&fs::read(&p).ok()?).ok()?;
            (entry.is_valid() && entry.kind == kind && entry.key == key).then_some(entry)
        })
    }

    pub fn store(&self, entry: &CacheEntry) -> io::Result<()> {
        let path = self.dir.join(entry.file_name());
        if path.exists() {
            return Ok(());
        }
        let tmp = self.dir.join(format!(".{}.tmp", entry.file_name()));
        fs::write(&tmp, serde_json::to_vec_pretty(entry).expect("entry serializes"))?;
        fs::rename(tmp, path)
    }

    pub fn load_table(&self, n: usize) -> Option<CharacterTable> {
        let entry = self.load(Kind::SnChartable, &n.to_string())?;
        CharacterTable::from_values(n, entry.integers()?).ok()
    }

    pub fn store_table(&self, table: &CharacterTable) -> io::Result<()> {
        self.store(&CacheEntry::new(Kind::SnChartable, table.n().to_string(), to_strings(table.rows())))
    }
}

impl TraceCache for Cache {
    fn load(&self, n: usize, i: usize) -> Option<Vec<BigInt>> {
        let entry = Cache::load(self, Kind::OsTraces, &format!("{n}-{i}"))?;
        entry.integers()?.into_iter().next()
    }

    fn store(&self, n: usize, i: usize, traces: &[BigInt]) {
        let entry = CacheEntry::new(Kind::OsTraces, format!("{n}-{i}"), to_strings(&[traces.to_vec()]));
        // a failed write only costs recomputation later
        let _ = Cache::store(self, &entry);
    }
}
