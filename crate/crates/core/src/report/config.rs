use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Defaults read from a `key = value` file. Command-line flags win over
/// anything set here.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub tolerance: Option<f64>,
    pub order: Option<usize>,
    pub out_dir: Option<PathBuf>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Blank lines and `#` comments are skipped; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| Error::Parse(format!("config line {}: {what}", lineno + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
            let value = value.trim();
            match key.trim() {
                "tolerance" => {
                    cfg.tolerance = Some(value.parse().map_err(|_| bad("tolerance is not a number"))?)
                }
                "order" => cfg.order = Some(value.parse().map_err(|_| bad("order is not an integer"))?),
                "out_dir" => cfg.out_dir = Some(PathBuf::from(value)),
                other => return Err(bad(&format!("unknown key {other:?}"))),
            }
        }
        Ok(cfg)
    }
}
