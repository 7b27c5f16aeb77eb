//! Line-delimited JSON store of trial records, keyed by (triple, prime, seed).

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use thiserror::Error;

use crate::labels::Triple;
use crate::pipeline::TrialRecord;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cannot access cache {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cache {path} is corrupt at line {line}: {reason}")]
    Corrupt { path: PathBuf, line: usize, reason: String },
}

pub type CacheKey = (String, u32, u64);

pub fn key_of(r: &TrialRecord) -> CacheKey {
    (r.triple.clone(), r.prime, r.seed)
}

/// An append-only cache file. Reading happens once at open; afterwards all
/// writes go through one mutex-guarded handle.
#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    records: Mutex<BTreeMap<CacheKey, TrialRecord>>,
    writer: Mutex<File>,
}

impl ResultCache {
    /// Opens or creates the cache. Any malformed line, a missing final
    /// newline, or two different records under one key make the whole file
    /// unusable.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let io = |source| CacheError::Io { path: path.clone(), source };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(io)?;
        }
        let mut file = OpenOptions::new().create(true).read(true).append(true).open(&path).map_err(io)?;
        let mut text = String::new();
        file.read_to_string(&mut text).map_err(io)?;
        let records = parse(&path, &text)?;
        Ok(ResultCache { path, records: Mutex::new(records), writer: Mutex::new(file) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.records.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, triple: &Triple, prime: u32, seed: u64) -> Option<TrialRecord> {
        self.records.lock().unwrap().get(&(triple.to_string(), prime, seed)).cloned()
    }

    pub fn records(&self) -> Vec<TrialRecord> {
        self.records.lock().unwrap().values().cloned().collect()
    }

    pub fn records_for(&self, triple: &Triple) -> Vec<TrialRecord> {
        let key = triple.to_string();
        self.records.lock().unwrap().values().filter(|r| r.triple == key).cloned().collect()
    }

    /// Appends a record unless an identical one is present. A different
    /// record under the same key is refused.
    pub fn insert(&self, rec: &TrialRecord) -> Result<bool, CacheError> {
        let mut records = self.records.lock().unwrap();
        if let Some(old) = records.get(&key_of(rec)) {
            if old.count != rec.count || old.lines != rec.lines {
                return Err(CacheError::Corrupt {
                    path: self.path.clone(),
                    line: records.len() + 1,
                    reason: format!("conflicting record for {} at p = {}, seed {}", rec.triple, rec.prime, rec.seed),
                });
            }
            return Ok(false);
        }
        let mut line = serde_json::to_string(rec).expect("records serialize");
        line.push('\n');
        let mut w = self.writer.lock().unwrap();
        w.write_all(line.as_bytes())
            .and_then(|_| w.flush())
            .map_err(|source| CacheError::Io { path: self.path.clone(), source })?;
        records.insert(key_of(rec), rec.clone());
        Ok(true)
    }
}

fn parse(path: &Path, text: &str) -> Result<BTreeMap<CacheKey, TrialRecord>, CacheError> {
    let corrupt = |line, reason: String| CacheError::Corrupt { path: path.to_path_buf(), line, reason };
    if !text.is_empty() && !text.ends_with('\n') {
        return Err(corrupt(text.lines().count(), "truncated final line".into()));
    }
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: TrialRecord = serde_json::from_str(line).map_err(|e| corrupt(i + 1, e.to_string()))?;
        let triple: Triple = rec.triple.parse().map_err(|e| corrupt(i + 1, format!("{e}")))?;
        if triple.to_string() != rec.triple {
            return Err(corrupt(i + 1, format!("triple {:?} is not in canonical form", rec.triple)));
        }
        if rec.zero_dim != rec.count.is_some() {
            return Err(corrupt(i + 1, "zero_dim and count disagree".into()));
        }
        match out.get(&key_of(&rec)) {
            Some(old) if *old != rec => return Err(corrupt(i + 1, "conflicting duplicate record".into())),
            _ => {
                out.insert(key_of(&rec), rec);
            }
        }
    }
    Ok(out)
}

/// Reads records from any JSONL source, with the same checks as [`ResultCache::open`].
pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<TrialRecord>, CacheError> {
    let path = path.as_ref();
    let io = |source| CacheError::Io { path: path.to_path_buf(), source };
    let mut text = String::new();
    BufReader::new(File::open(path).map_err(io)?).read_to_string(&mut text).map_err(io)?;
    Ok(parse(path, &text)?.into_values().collect())
}

/// Records as JSONL text in key order.
pub fn to_jsonl(records: &[TrialRecord]) -> String {
    let mut sorted: Vec<&TrialRecord> = records.iter().collect();
    sorted.sort_by_key(|r| key_of(r));
    let mut out = String::new();
    for r in sorted {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::BufRead;

    fn count_lines(path: &Path) -> std::io::Result<usize> {
        Ok(BufReader::new(File::open(path)?).lines().count())
    }

    fn record(seed: u64, count: u32) -> TrialRecord {
        TrialRecord {
            triple: "(1, 23), (1, 24), (1, 25)".into(),
            prime: 32003,
            seed,
            lines: [[1, 2, 3], [4, 5, 6], [7, 8, 9]],
            count: Some(count),
            zero_dim: true,
            retries: 0,
            millis: 10,
        }
    }

    #[test]
    fn round_trip_and_idempotence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub/cache.jsonl");
        let cache = ResultCache::open(&path).unwrap();
        assert!(cache.insert(&record(1, 22)).unwrap());
        assert!(!cache.insert(&record(1, 22)).unwrap());
        assert!(cache.insert(&record(2, 22)).unwrap());
        drop(cache);
        let again = ResultCache::open(&path).unwrap();
        assert_eq!(again.len(), 2);
        assert_eq!(count_lines(&path).unwrap(), 2);
        let t: Triple = "(1, 23), (1, 24), (1, 25)".parse().unwrap();
        assert_eq!(again.get(&t, 32003, 2), Some(record(2, 22)));
        assert!(matches!(again.insert(&record(2, 21)), Err(CacheError::Corrupt { .. })));
    }

    #[test]
    fn corruption_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let good = serde_json::to_string(&record(1, 22)).unwrap();
        for bad in [format!("{good}\nnot json\n"), format!("{good}\n{}", &good[..20]), {
            let other = serde_json::to_string(&record(1, 23)).unwrap();
            format!("{good}\n{other}\n")
        }] {
            fs::write(&path, bad).unwrap();
            assert!(matches!(ResultCache::open(&path), Err(CacheError::Corrupt { .. })));
        }
    }
}
