//! Census cache: JSON lines, one `{schema_version, N, record}` per line.
//!
//! Any line that fails to parse, carries another schema version, disagrees
//! with its record's N, or repeats an N invalidates the whole file; it is
//! then rebuilt from scratch on the next write.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use minpoly::CensusRecord;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    #[serde(rename = "N")]
    pub n: u64,
    pub record: CensusRecord,
}

#[derive(Debug)]
pub struct CensusCache {
    path: PathBuf,
    entries: BTreeMap<u64, CensusRecord>,
    corrupt: bool,
}

fn parse_line(line: &str) -> Option<CacheEntry> {
    let entry: CacheEntry = serde_json::from_str(line).ok()?;
    (entry.schema_version == SCHEMA_VERSION && entry.n == entry.record.n).then_some(entry)
}

impl CensusCache {
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut cache = CensusCache {
            path: path.to_path_buf(),
            entries: BTreeMap::new(),
            corrupt: false,
        };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match parse_line(&line) {
                Some(entry) if !cache.entries.contains_key(&entry.n) => {
                    cache.entries.insert(entry.n, entry.record);
                }
                _ => {
                    cache.entries.clear();
                    cache.corrupt = true;
                    break;
                }
            }
        }
        Ok(cache)
    }

    pub fn was_corrupt(&self) -> bool {
        self.corrupt
    }

    pub fn get(&self, n: u64) -> Option<&CensusRecord> {
        self.entries.get(&n)
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Adds records, appending to the file (or rewriting it when the
    /// loaded contents were discarded).
    pub fn insert_all(&mut self, records: &[CensusRecord]) -> io::Result<()> {
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let fresh: Vec<&CensusRecord> = records.iter().filter(|r| !self.entries.contains_key(&r.n)).collect();
        let file = if self.corrupt {
            File::create(&self.path)?
        } else {
            OpenOptions::new().create(true).append(true).open(&self.path)?
        };
        let mut out = BufWriter::new(file);
        let existing: Vec<&CensusRecord> = if self.corrupt { self.entries.values().collect() } else { Vec::new() };
        for record in existing.into_iter().chain(fresh.iter().copied()) {
            let entry = CacheEntry {
                schema_version: SCHEMA_VERSION,
                n: record.n,
                record: record.clone(),
            };
            serde_json::to_writer(&mut out, &entry)?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
        for r in fresh {
            self.entries.insert(r.n, r.clone());
        }
        self.corrupt = false;
        Ok(())
    }
}

/// `MINPOLY_CACHE`, else the user cache directory, else the working directory.
pub fn default_path() -> PathBuf {
    if let Some(p) = std::env::var_os("MINPOLY_CACHE") {
        return PathBuf::from(p);
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")));
    match base {
        Some(dir) => dir.join("minpoly").join("census.jsonl"),
        None => PathBuf::from("minpoly-census.jsonl"),
    }
}
