//! Flat key = value configuration files with # comments.
//!
//! Flags always override file values; unknown keys are rejected against the
//! active command's key list.

use std::collections::HashMap;
use std::path::Path;

#[derive(Debug)]
pub struct FileConfig {
    values: HashMap<String, String>,
}

impl FileConfig {
    pub fn empty() -> Self {
        Self { values: HashMap::new() }
    }

    pub fn load(path: &Path, allowed_keys: &[&str]) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text, allowed_keys)
    }

    pub fn parse(text: &str, allowed_keys: &[&str]) -> Result<Self, String> {
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.split_once('#') {
                Some((before, _)) => before,
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key = value", lineno + 1))?;
            let key = key.trim().to_string();
            if !allowed_keys.contains(&key.as_str()) {
                return Err(format!("config line {}: unknown key {key}", lineno + 1));
            }
            if values.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(format!("config line {}: duplicate key {key}", lineno + 1));
            }
        }
        Ok(Self { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Resolves a float parameter: flag wins, then file, then default.
    pub fn f64(&self, key: &str, flag: Option<f64>, default: Option<f64>) -> Result<f64, String> {
        if let Some(v) = flag {
            return Ok(v);
        }
        if let Some(raw) = self.get(key) {
            return raw.parse().map_err(|_| format!("invalid value '{raw}' for key {key}"));
        }
        default.ok_or_else(|| format!("missing required key {key}"))
    }

    pub fn usize(
        &self,
        key: &str,
        flag: Option<usize>,
        default: Option<usize>,
    ) -> Result<usize, String> {
        if let Some(v) = flag {
            return Ok(v);
        }
        if let Some(raw) = self.get(key) {
            return raw.parse().map_err(|_| format!("invalid value '{raw}' for key {key}"));
        }
        default.ok_or_else(|| format!("missing required key {key}"))
    }

    pub fn string(
        &self,
        key: &str,
        flag: Option<String>,
        default: Option<&str>,
    ) -> Result<String, String> {
        if let Some(v) = flag {
            return Ok(v);
        }
        if let Some(raw) = self.get(key) {
            return Ok(raw.to_string());
        }
        default.map(str::to_string).ok_or_else(|| format!("missing required key {key}"))
    }
}
