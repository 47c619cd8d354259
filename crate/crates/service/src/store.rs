//! Scenario storage: an in-memory index over an append-only revision log.
//!
//! Each line of `scenarios.log` is one stored revision:
//! `{"id":"s1","revision":1,"kind":"scenario-map","digest":"sha256:..","content":{..}}`.
//! On open the log is replayed and the latest revision of each id wins.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use qscen_core::{ScenarioInput, ValidationError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::edit::{apply_edits, Edit};

pub const LOG_FILE: &str = "scenarios.log";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub id: String,
    pub revision: u64,
    pub scenario: ScenarioInput,
    pub digest: String,
}

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("scenario `{0}` not found")]
    NotFound(String),
    #[error("revision {expected} does not match current revision {current}")]
    Stale { expected: u64, current: u64 },
    #[error("scenario `{0}` holds only an intersection matrix and cannot be edited")]
    NotEditable(String),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("log {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("log {path} line {line}: {message}")]
    Corrupt {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

#[derive(Serialize, Deserialize)]
struct LogEntry {
    id: String,
    revision: u64,
    kind: String,
    digest: String,
    content: serde_json::Value,
}

#[derive(Default)]
struct Index {
    records: BTreeMap<String, Arc<Record>>,
    next_id: u64,
}

struct Log {
    path: PathBuf,
    file: File,
}

/// Reads are lock-shared and hand out `Arc` snapshots; writes hold the
/// write lock across validation, the log append and the index update.
pub struct Store {
    index: RwLock<Index>,
    log: Option<Mutex<Log>>,
}

impl Store {
    pub fn in_memory() -> Self {
        Store {
            index: RwLock::new(Index {
                next_id: 1,
                ..Index::default()
            }),
            log: None,
        }
    }

    /// Opens (creating if needed) the log in `dir` and replays it.
    pub fn open(dir: &Path) -> Result<Self, StoreError> {
        let path = dir.join(LOG_FILE);
        let io = |source| StoreError::Io {
            path: path.clone(),
            source,
        };
        std::fs::create_dir_all(dir).map_err(io)?;
        let mut index = Index {
            next_id: 1,
            ..Index::default()
        };
        if path.exists() {
            let reader = BufReader::new(File::open(&path).map_err(io)?);
            let lines: Vec<String> = reader.lines().collect::<Result<_, _>>().map_err(io)?;
            let last = lines.len();
            for (n, line) in lines.into_iter().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                match replay(&line) {
                    Ok(record) => {
                        if let Some(seq) = record.id.strip_prefix('s').and_then(|s| s.parse::<u64>().ok()) {
                            index.next_id = index.next_id.max(seq + 1);
                        }
                        index.records.insert(record.id.clone(), Arc::new(record));
                    }
                    // a torn final write is dropped; anything earlier is corruption
                    Err(message) if n + 1 == last => {
                        tracing::warn!(path = %path.display(), line = n + 1, %message, "dropping incomplete log entry");
                    }
                    Err(message) => {
                        return Err(StoreError::Corrupt {
                            path,
                            line: n + 1,
                            message,
                        })
                    }
                }
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(io)?;
        Ok(Store {
            index: RwLock::new(index),
            log: Some(Mutex::new(Log { path, file })),
        })
    }

    pub fn get(&self, id: &str) -> Result<Arc<Record>, StoreError> {
        self.index
            .read()
            .expect("store lock")
            .records
            .get(id)
            .cloned()
            .ok_or_else(|| StoreError::NotFound(id.to_string()))
    }

    pub fn ids(&self) -> Vec<String> {
        self.index
            .read()
            .expect("store lock")
            .records
            .keys()
            .cloned()
            .collect()
    }

    pub fn len(&self) -> usize {
        self.index.read().expect("store lock").records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn create(&self, scenario: ScenarioInput) -> Result<Arc<Record>, StoreError> {
        let mut index = self.index.write().expect("store lock");
        let id = format!("s{}", index.next_id);
        let record = self.commit(&mut index, id, 1, scenario)?;
        index.next_id += 1;
        Ok(record)
    }

    /// Applies `edits` atomically. With `expected` set, the write only
    /// happens if the current revision still equals it.
    pub fn update(
        &self,
        id: &str,
        expected: Option<u64>,
        edits: &[Edit],
    ) -> Result<Arc<Record>, StoreError> {
        let mut index = self.index.write().expect("store lock");
        let current = index
            .records
            .get(id)
            .cloned()
            .ok_or_else(|| StoreError::NotFound(id.to_string()))?;
        if let Some(expected) = expected {
            if expected != current.revision {
                return Err(StoreError::Stale {
                    expected,
                    current: current.revision,
                });
            }
        }
        let ScenarioInput::Map(map) = &current.scenario else {
            return Err(StoreError::NotEditable(id.to_string()));
        };
        let edited = apply_edits(map, edits)?;
        self.commit(
            &mut index,
            id.to_string(),
            current.revision + 1,
            ScenarioInput::Map(edited),
        )
    }

    fn commit(
        &self,
        index: &mut Index,
        id: String,
        revision: u64,
        scenario: ScenarioInput,
    ) -> Result<Arc<Record>, StoreError> {
        let record = Record {
            digest: scenario.digest(),
            id,
            revision,
            scenario,
        };
        if let Some(log) = &self.log {
            let entry = LogEntry {
                id: record.id.clone(),
                revision,
                kind: record.scenario.kind().to_string(),
                digest: record.digest.clone(),
                content: record.scenario.to_json(),
            };
            let mut line = serde_json::to_vec(&entry).expect("log entry serializes");
            line.push(b'\n');
            let mut log = log.lock().expect("log lock");
            let Log { path, file } = &mut *log;
            file.write_all(&line)
                .and_then(|_| file.sync_data())
                .map_err(|source| StoreError::Io {
                    path: path.clone(),
                    source,
                })?;
        }
        let record = Arc::new(record);
        index.records.insert(record.id.clone(), record.clone());
        Ok(record)
    }
}

fn replay(line: &str) -> Result<Record, String> {
    let entry: LogEntry = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let scenario = ScenarioInput::from_json(&entry.kind, entry.content).map_err(|e| e.to_string())?;
    let digest = scenario.digest();
    if digest != entry.digest {
        return Err(format!("digest mismatch for {} revision {}", entry.id, entry.revision));
    }
    Ok(Record {
        id: entry.id,
        revision: entry.revision,
        scenario,
        digest,
    })
}
