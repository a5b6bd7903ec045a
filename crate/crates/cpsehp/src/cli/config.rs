//! Flat `key = value` configuration files.
//!
//! Zero-dependency format: one assignment per line, `#` comments, blank
//! lines ignored, later assignments override earlier ones. CLI flags
//! override everything from the file.

use std::fmt;

/// Parse failure with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ConfigError {}

/// Recognized configuration keys.
pub const CONFIG_KEYS: [&str; 7] = ["kind", "v1", "v2", "B", "alpha", "mu", "hbar"];

/// Parse the flat key = value format into ordered (key, value) pairs.
///
/// Unknown keys are rejected here so typos fail loudly instead of being
/// silently ignored.
pub fn parse_config_str(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError {
            line: line_no,
            message: format!("expected 'key = value', got '{line}'"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError {
                line: line_no,
                message: "empty key or value".into(),
            });
        }
        if !CONFIG_KEYS.contains(&key) {
            return Err(ConfigError {
                line: line_no,
                message: format!(
                    "unknown key '{key}' (expected one of {})",
                    CONFIG_KEYS.join(", ")
                ),
            });
        }
        pairs.push((key.to_string(), value.to_string()));
    }
    Ok(pairs)
}
