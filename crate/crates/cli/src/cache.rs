//! Content-addressed result cache on disk.
//!
//! One JSON record per key, stored as `<sha256>.json` under the cache root.
//! Records are written to a temporary file and renamed into place; two
//! writers of one key produce identical bytes, so races are harmless.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use skeinlab::kauffman::KauffmanEvaluator;
use skeinlab::skein::SkeinEvaluator;
use skeinlab::store::{CacheKey, ResultStore, ENGINE_VERSION};
use skeinlab::{BiLaurent, Diagram, Vars};

pub const CACHE_ENV: &str = "SKEINLAB_CACHE";

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheRecord {
    pub version: String,
    pub kind: String,
    pub code: String,
    pub framing: Vec<i64>,
    pub vars: [String; 2],
    pub value: String,
    /// Diagram the value was computed from, for audits.
    pub pd: String,
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    pub hits: u64,
    pub misses: u64,
    pub writes: u64,
    pub corrupt: u64,
}

pub struct FileCache {
    root: PathBuf,
    hits: AtomicU64,
    misses: AtomicU64,
    writes: AtomicU64,
    corrupt: AtomicU64,
    tmp_counter: AtomicU64,
}

fn key_hash(key: &CacheKey) -> String {
    let mut h = Sha256::new();
    h.update(key.kind.as_bytes());
    h.update([0]);
    h.update(&key.code);
    h.update([0]);
    for f in &key.framing {
        h.update(f.to_le_bytes());
    }
    hex::encode(h.finalize())
}

impl FileCache {
    pub fn open(root: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(root)?;
        Ok(FileCache {
            root: root.to_path_buf(),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            writes: AtomicU64::new(0),
            corrupt: AtomicU64::new(0),
            tmp_counter: AtomicU64::new(0),
        })
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.root.join(format!("{}.json", key_hash(key)))
    }

    pub fn stats(&self) -> Stats {
        Stats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            writes: self.writes.load(Ordering::Relaxed),
            corrupt: self.corrupt.load(Ordering::Relaxed),
        }
    }

    fn lookup(&self, key: &CacheKey, vars: Vars) -> Option<BiLaurent> {
        let path = self.path_for(key);
        let bytes = fs::read(&path).ok()?;
        let record: CacheRecord = match serde_json::from_slice(&bytes) {
            Ok(r) => r,
            Err(e) => {
                self.corrupt.fetch_add(1, Ordering::Relaxed);
                log::warn!("ignoring corrupt cache record {}: {e}", path.display());
                return None;
            }
        };
        if record.version != ENGINE_VERSION {
            return None;
        }
        if record.kind != key.kind || record.code != hex::encode(&key.code) || record.framing != key.framing {
            log::warn!("cache record {} belongs to another key", path.display());
            return None;
        }
        match BiLaurent::parse(&record.value, vars) {
            Ok(v) => Some(v),
            Err(e) => {
                self.corrupt.fetch_add(1, Ordering::Relaxed);
                log::warn!("ignoring unreadable value in {}: {e}", path.display());
                None
            }
        }
    }

    /// Every record under the root, in file-name order.
    pub fn records(&self) -> std::io::Result<Vec<(PathBuf, CacheRecord)>> {
        let mut paths: Vec<PathBuf> = fs::read_dir(&self.root)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        Ok(paths
            .into_iter()
            .filter_map(|p| {
                let r = serde_json::from_slice(&fs::read(&p).ok()?).ok()?;
                Some((p, r))
            })
            .collect())
    }

    /// Recomputes a random tenth (at least one) of the current-version
    /// records and returns the paths whose value differs.
    pub fn audit(&self, seed: u64) -> std::io::Result<Audit> {
        let mut records: Vec<_> =
            self.records()?.into_iter().filter(|(_, r)| r.version == ENGINE_VERSION).collect();
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        records.shuffle(&mut rng);
        let take = if records.is_empty() { 0 } else { records.len().div_ceil(10) };
        let mut audit = Audit { checked: 0, mismatches: Vec::new() };
        for (path, r) in records.into_iter().take(take) {
            audit.checked += 1;
            if recompute(&r).as_deref() != Some(r.value.as_str()) {
                audit.mismatches.push(path);
            }
        }
        Ok(audit)
    }
}

#[derive(Debug)]
pub struct Audit {
    pub checked: usize,
    pub mismatches: Vec<PathBuf>,
}

fn recompute(r: &CacheRecord) -> Option<String> {
    let d = Diagram::parse_pd(&r.pd).ok()?;
    if hex::encode(d.canonical_code()) != r.code {
        return None;
    }
    let value = match r.kind.as_str() {
        "homfly" => SkeinEvaluator::default().homfly(&d),
        "kauffman" => KauffmanEvaluator::default().framed_kauffman(&d),
        "dubrovnik" => KauffmanEvaluator::default().dubrovnik(&d),
        _ => return None,
    };
    value.ok().map(|v| v.to_string())
}

impl ResultStore for FileCache {
    fn get(&self, key: &CacheKey, vars: Vars) -> Option<BiLaurent> {
        let v = self.lookup(key, vars);
        let counter = if v.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        v
    }

    fn put(&self, key: &CacheKey, d: &Diagram, value: &BiLaurent) {
        let vars = value.vars();
        let record = CacheRecord {
            version: ENGINE_VERSION.to_string(),
            kind: key.kind.to_string(),
            code: hex::encode(&key.code),
            framing: key.framing.clone(),
            vars: [vars.0.to_string(), vars.1.to_string()],
            value: value.to_string(),
            pd: d.to_pd_text(),
        };
        let path = self.path_for(key);
        let tmp = self.root.join(format!(
            ".{}.{}.{}.tmp",
            key_hash(key),
            std::process::id(),
            self.tmp_counter.fetch_add(1, Ordering::Relaxed)
        ));
        let bytes = serde_json::to_vec_pretty(&record).expect("records serialize");
        let result = fs::write(&tmp, bytes).and_then(|()| fs::rename(&tmp, &path));
        match result {
            Ok(()) => {
                self.writes.fetch_add(1, Ordering::Relaxed);
            }
            Err(e) => {
                let _ = fs::remove_file(&tmp);
                log::warn!("could not write cache record {}: {e}", path.display());
            }
        }
    }
}
