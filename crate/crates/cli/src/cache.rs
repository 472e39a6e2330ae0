//! Append-only JSON-lines cache of evaluated expressions.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub version: u32,
    pub expr: String,
    pub digits: u32,
    pub cutoff: u64,
    pub extrapolate: bool,
    pub value: String,
    pub err: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    expr: String,
    digits: u32,
    cutoff: u64,
    extrapolate: bool,
}

impl CacheRecord {
    fn key(&self) -> Key {
        Key {
            expr: self.expr.clone(),
            digits: self.digits,
            cutoff: self.cutoff,
            extrapolate: self.extrapolate,
        }
    }
}

/// In-memory view of the cache file plus its single writer.
#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: HashMap<Key, CacheRecord>,
    writer: Option<File>,
    /// Problems met while loading, one message per skipped line.
    pub warnings: Vec<String>,
}

impl Cache {
    /// Read every valid record; bad lines are skipped with a warning and a
    /// missing file is an empty cache.
    pub fn load(path: &Path) -> Self {
        let mut cache = Cache {
            path: path.to_path_buf(),
            entries: HashMap::new(),
            writer: None,
            warnings: Vec::new(),
        };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return cache,
            Err(e) => {
                cache
                    .warnings
                    .push(format!("cannot read cache {}: {e}", path.display()));
                return cache;
            }
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    cache
                        .warnings
                        .push(format!("{}:{}: {e}", path.display(), i + 1));
                    break;
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheRecord>(&line) {
                Ok(r) if r.version == SCHEMA_VERSION => {
                    cache.entries.insert(r.key(), r);
                }
                Ok(r) => cache.warnings.push(format!(
                    "{}:{}: skipping record with schema version {}",
                    path.display(),
                    i + 1,
                    r.version
                )),
                Err(e) => cache.warnings.push(format!(
                    "{}:{}: skipping corrupt line: {e}",
                    path.display(),
                    i + 1
                )),
            }
        }
        cache
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn lookup(
        &self,
        expr: &str,
        digits: u32,
        cutoff: u64,
        extrapolate: bool,
    ) -> Option<&CacheRecord> {
        self.entries.get(&Key {
            expr: expr.to_string(),
            digits,
            cutoff,
            extrapolate,
        })
    }

    /// Append a record to the file and the in-memory map.
    pub fn store(&mut self, record: CacheRecord) -> std::io::Result<()> {
        if self.writer.is_none() {
            self.writer = Some(
                OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(&self.path)?,
            );
        }
        let mut line = serde_json::to_string(&record).map_err(std::io::Error::other)?;
        line.push('\n');
        let w = self.writer.as_mut().expect("opened above");
        w.write_all(line.as_bytes())?;
        w.flush()?;
        self.entries.insert(record.key(), record);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(expr: &str, digits: u32) -> CacheRecord {
        CacheRecord {
            version: SCHEMA_VERSION,
            expr: expr.into(),
            digits,
            cutoff: 1000,
            extrapolate: true,
            value: "1.5".into(),
            err: "1.000e-20".into(),
        }
    }

    #[test]
    fn store_then_reload() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut c = Cache::load(&path);
        assert_eq!(c.len(), 0);
        c.store(record("zeta(2)", 30)).unwrap();
        c.store(record("zeta(3)", 30)).unwrap();
        let again = Cache::load(&path);
        assert_eq!(again.len(), 2);
        assert!(again.lookup("zeta(2)", 30, 1000, true).is_some());
        assert!(again.lookup("zeta(2)", 31, 1000, true).is_none());
        assert!(again.lookup("zeta(2)", 30, 1000, false).is_none());
    }

    #[test]
    fn corrupt_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let good = serde_json::to_string(&record("zeta(2)", 30)).unwrap();
        let mut old = record("zeta(4)", 30);
        old.version = 0;
        let old = serde_json::to_string(&old).unwrap();
        std::fs::write(&path, format!("{{not json\n{good}\n\n{old}\n")).unwrap();
        let c = Cache::load(&path);
        assert_eq!(c.len(), 1);
        assert_eq!(c.warnings.len(), 2);
        assert!(c.warnings[0].contains(":1:"));
    }
}
