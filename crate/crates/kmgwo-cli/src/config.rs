//! Flat `key=value` configuration files mirroring the command-line flags.
//!
//! Blank lines and `#` comments are ignored. Keys use the long flag names
//! (`algo`, `problem`, `agents`, `iters`, `reps`, `seed`, `data-dir`, `out`,
//! `penalty`, `cluster-fitness`, `paper-literal-constraints`). Command-line
//! flags override file values.

use std::collections::BTreeMap;
use std::path::Path;

use crate::{HarnessError, Result};

const KNOWN_KEYS: &[&str] = &[
    "algo",
    "problem",
    "agents",
    "iters",
    "reps",
    "seed",
    "data-dir",
    "out",
    "penalty",
    "cluster-fitness",
    "paper-literal-constraints",
];

/// Parses a config file into a key/value map, validating key names.
pub fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_text(&text)
        .map_err(|msg| HarnessError::Config(format!("{}: {msg}", path.display())))
}

fn parse_config_text(text: &str) -> std::result::Result<BTreeMap<String, String>, String> {
    let mut values = BTreeMap::new();
    for (line_idx, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value, got {line:?}", line_idx + 1))?;
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(format!(
                "line {}: unknown key {key:?} (known: {})",
                line_idx + 1,
                KNOWN_KEYS.join(", ")
            ));
        }
        values.insert(key.to_string(), value.to_string());
    }
    Ok(values)
}

/// Typed lookup helper over the parsed map.
pub fn parse_value<T: std::str::FromStr>(
    values: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>> {
    match values.get(key) {
        None => Ok(None),
        Some(text) => text
            .parse()
            .map(Some)
            .map_err(|_| HarnessError::Config(format!("config key {key}: cannot parse {text:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_comments_and_blanks() {
        let text = "\n# comment\nalgo = kmgwo\nseed=7\nagents=25\n";
        let values = parse_config_text(text).unwrap();
        assert_eq!(values["algo"], "kmgwo");
        assert_eq!(values["seed"], "7");
        assert_eq!(values["agents"], "25");
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(parse_config_text("bogus=1").is_err());
        assert!(parse_config_text("no equals sign").is_err());
    }

    #[test]
    fn typed_lookup() {
        let values = parse_config_text("seed=99\npenalty=1e6\n").unwrap();
        assert_eq!(parse_value::<u64>(&values, "seed").unwrap(), Some(99));
        assert_eq!(parse_value::<f64>(&values, "penalty").unwrap(), Some(1e6));
        assert_eq!(parse_value::<u64>(&values, "reps").unwrap(), None);
        let bad = parse_config_text("seed=abc").unwrap();
        assert!(parse_value::<u64>(&bad, "seed").is_err());
    }
}
