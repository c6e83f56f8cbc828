//! Persistent memo of 6j values keyed by canonical doubled labels.
//!
//! File format, one entry per line:
//!
//! ```text
//! 6j 2 2 2 2 2 2 -> 1/6 sqrt 1
//! 6j 1 1 2 1 1 2 -> -1/3 sqrt 2 + 1/5 sqrt 3
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Entries are written in
//! key order so that a stored file is a deterministic function of its content.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{OnceLock, RwLock};

use super::sixj::canonical_key;
use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};

pub type SixjKey = [i64; 6];

/// Thread-safe 6j memo. Readers share a lock; inserts take it exclusively.
#[derive(Debug, Default)]
pub struct SymbolCache {
    map: RwLock<HashMap<SixjKey, AlgebraicNumber>>,
    path: RwLock<Option<PathBuf>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

/// Hit/miss counters and size of a cache.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CacheStats {
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
}

impl SymbolCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Backing file, if the cache was loaded from or bound to one.
    pub fn path(&self) -> Option<PathBuf> {
        self.path.read().expect("cache poisoned").clone()
    }

    pub fn set_path(&self, path: Option<PathBuf>) {
        *self.path.write().expect("cache poisoned") = path;
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            entries: self.len(),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    /// Look up a 6j by any of its symmetric label sets (doubled).
    pub fn get(&self, labels: SixjKey) -> Option<AlgebraicNumber> {
        let key = canonical_key(labels)?;
        self.map.read().expect("cache poisoned").get(&key).cloned()
    }

    /// Insert a value under the canonical key of `labels`. Labels that fail a
    /// triad are ignored since their value is identically zero.
    pub fn insert(&self, labels: SixjKey, value: AlgebraicNumber) {
        if let Some(key) = canonical_key(labels) {
            self.map.write().expect("cache poisoned").insert(key, value);
        }
    }

    /// Fetch `key` (already canonical), computing and storing it on a miss.
    /// The computation runs without holding the lock.
    pub(crate) fn get_or_insert_with(&self, key: SixjKey, f: impl FnOnce() -> AlgebraicNumber) -> AlgebraicNumber {
        if let Some(v) = self.map.read().expect("cache poisoned").get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return v.clone();
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let v = f();
        self.map
            .write()
            .expect("cache poisoned")
            .entry(key)
            .or_insert_with(|| v.clone());
        v
    }

    /// Replace the contents with those of `other`.
    pub fn replace_with(&self, other: SymbolCache) {
        let map = other.map.into_inner().expect("cache poisoned");
        *self.map.write().expect("cache poisoned") = map;
        *self.path.write().expect("cache poisoned") = other.path.into_inner().expect("cache poisoned");
    }

    pub fn clear(&self) {
        self.map.write().expect("cache poisoned").clear();
    }

    /// Entries sorted by key.
    pub fn entries(&self) -> BTreeMap<SixjKey, AlgebraicNumber> {
        self.map
            .read()
            .expect("cache poisoned")
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect()
    }

    /// Write every entry to `path`, sorted by key.
    pub fn store(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut w = BufWriter::new(fs::File::create(&tmp)?);
            for (k, v) in self.entries() {
                writeln!(w, "6j {} {} {} {} {} {} -> {}", k[0], k[1], k[2], k[3], k[4], k[5], v)?;
            }
            w.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn parse_line(line: &str, lineno: usize) -> Result<Option<(SixjKey, AlgebraicNumber)>> {
    let err = |message: String| Error::CacheParse { line: lineno, message };
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let (lhs, rhs) = line
        .split_once(" -> ")
        .ok_or_else(|| err("missing ` -> ` separator".into()))?;
    let mut fields = lhs.split_whitespace();
    if fields.next() != Some("6j") {
        return Err(err("entry must start with `6j`".into()));
    }
    let labels: Vec<i64> = fields
        .map(|f| f.parse::<i64>().map_err(|_| err(format!("bad label {f:?}"))))
        .collect::<Result<_>>()?;
    let labels: SixjKey = labels
        .try_into()
        .map_err(|v: Vec<i64>| err(format!("expected 6 labels, found {}", v.len())))?;
    let key = canonical_key(labels).ok_or_else(|| err("labels violate a triad".into()))?;
    let value: AlgebraicNumber = rhs.parse().map_err(|e: Error| err(e.to_string()))?;
    Ok(Some((key, value)))
}

/// Read a cache file. A missing file is an error; an empty one is an empty cache.
pub fn cache_load(path: &Path) -> Result<SymbolCache> {
    let text = fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        if let Some((k, v)) = parse_line(line, i + 1)? {
            map.insert(k, v);
        }
    }
    Ok(SymbolCache {
        map: RwLock::new(map),
        path: RwLock::new(Some(path.to_path_buf())),
        ..SymbolCache::default()
    })
}

/// Write `cache` to `path`.
pub fn cache_store(cache: &SymbolCache, path: &Path) -> Result<()> {
    cache.store(path)
}

/// The process-wide cache used by [`wigner_6j`](super::wigner_6j).
pub fn global_cache() -> &'static SymbolCache {
    static CACHE: OnceLock<SymbolCache> = OnceLock::new();
    CACHE.get_or_init(SymbolCache::new)
}
