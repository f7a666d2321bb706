//! Flat key/value config files.
//!
//! One `key = value` pair per line; `#` starts a comment; blank lines are
//! ignored. Keys are taken by the consuming builder, which rejects unknown
//! and duplicate keys with their line numbers.

use std::collections::HashSet;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct KvEntry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

/// A parsed key/value file plus bookkeeping for which keys were consumed.
#[derive(Debug, Clone)]
pub struct KvFile {
    entries: Vec<KvEntry>,
    taken: HashSet<String>,
}

impl KvFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<KvEntry> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let stripped = stripped.trim();
            if stripped.is_empty() {
                continue;
            }
            let Some(eq) = stripped.find('=') else {
                return Err(Error::Config {
                    line,
                    message: format!("expected `key = value`, got `{stripped}`"),
                });
            };
            let key = stripped[..eq].trim().to_string();
            let value = stripped[eq + 1..].trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(Error::Config {
                    line,
                    message: "empty key or value".to_string(),
                });
            }
            if let Some(prev) = entries.iter().find(|e| e.key == key) {
                return Err(Error::Config {
                    line,
                    message: format!("duplicate key `{key}` (first set at line {})", prev.line),
                });
            }
            entries.push(KvEntry { key, value, line });
        }
        Ok(Self {
            entries,
            taken: HashSet::new(),
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Takes a key, marking it consumed. Returns `None` when absent.
    pub fn take(&mut self, key: &str) -> Option<&KvEntry> {
        let entry = self.entries.iter().find(|e| e.key == key)?;
        self.taken.insert(key.to_string());
        Some(entry)
    }

    /// Takes a key and parses it as `f64` (accepting `inf`).
    pub fn take_f64(&mut self, key: &str) -> Result<Option<f64>> {
        let Some(entry) = self.take(key) else {
            return Ok(None);
        };
        let line = entry.line;
        match entry.value.parse::<f64>() {
            Ok(v) => Ok(Some(v)),
            Err(_) => Err(Error::Config {
                line,
                message: format!("`{key}` is not a number: `{}`", entry.value),
            }),
        }
    }

    pub fn take_u64(&mut self, key: &str) -> Result<Option<u64>> {
        let Some(entry) = self.take(key) else {
            return Ok(None);
        };
        let line = entry.line;
        match entry.value.parse::<u64>() {
            Ok(v) => Ok(Some(v)),
            Err(_) => Err(Error::Config {
                line,
                message: format!("`{key}` is not a nonnegative integer: `{}`", entry.value),
            }),
        }
    }

    /// Takes a key holding a comma-separated list of `f64`.
    pub fn take_f64_list(&mut self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some(entry) = self.take(key) else {
            return Ok(None);
        };
        let line = entry.line;
        let value = entry.value.clone();
        let mut out = Vec::new();
        for part in value.split(',') {
            match part.trim().parse::<f64>() {
                Ok(v) => out.push(v),
                Err(_) => {
                    return Err(Error::Config {
                        line,
                        message: format!("`{key}` has a non-numeric element: `{}`", part.trim()),
                    })
                }
            }
        }
        Ok(Some(out))
    }

    /// Errors if any key was never consumed (catches typos in config files).
    pub fn finish(&self) -> Result<()> {
        for entry in &self.entries {
            if !self.taken.contains(&entry.key) {
                return Err(Error::Config {
                    line: entry.line,
                    message: format!("unknown key `{}`", entry.key),
                });
            }
        }
        Ok(())
    }
}
