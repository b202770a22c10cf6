//! `amalgam.json`: grid, corpus, tolerance overrides, output and seed.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use amalgam_core::{FunctionSpec, GridSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::suites::SUITES;

pub const CONFIG_FILE: &str = "amalgam.json";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Output {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_grid")]
    pub grid: GridSpec,
    /// Relative slack per suite; may only lower the documented default.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default = "default_corpus")]
    pub corpus: Vec<FunctionSpec>,
    #[serde(default)]
    pub output: Output,
    #[serde(default)]
    pub seed: u64,
}

fn default_grid() -> GridSpec {
    GridSpec::new(16, 256).expect("default grid is valid")
}

pub fn default_corpus() -> Vec<FunctionSpec> {
    vec![
        FunctionSpec::gaussian(),
        FunctionSpec::Indicator { a: 0.0, b: 1.0 },
        FunctionSpec::Indicator { a: -0.5, b: 1.5 },
        FunctionSpec::Bump { center: 0.0, radius: 0.5 },
        FunctionSpec::Bump { center: 1.5, radius: 1.0 },
        FunctionSpec::Gaussian { center: -2.0, scale: 2.0 },
    ]
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid: default_grid(),
            tolerances: BTreeMap::new(),
            corpus: default_corpus(),
            output: Output::default(),
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Explicit path if given, else `amalgam.json` in the working directory if
    /// present, else defaults.
    pub fn discover(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            Some(p) => Self::load(p),
            None if Path::new(CONFIG_FILE).exists() => Self::load(Path::new(CONFIG_FILE)),
            None => Ok(Self::default()),
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.corpus.is_empty() {
            return Err(CliError::Usage("config: corpus is empty".into()));
        }
        for (suite, &tol) in &self.tolerances {
            let default = SUITES
                .iter()
                .find(|s| s.name == suite)
                .ok_or_else(|| CliError::Usage(format!("config: no suite `{suite}`")))?
                .slack;
            if !(0.0..=default).contains(&tol) {
                return Err(CliError::Usage(format!(
                    "config: tolerance {tol} for `{suite}` must lie in [0, {default}]"
                )));
            }
        }
        Ok(())
    }

    pub fn tolerance(&self, suite: &str) -> Option<f64> {
        self.tolerances.get(suite).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_round_trip() {
        let c = RunConfig::from_json("{}").unwrap();
        assert_eq!(c, RunConfig::default());
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(RunConfig::from_json(&text).unwrap(), c);
    }

    #[test]
    fn overrides_only_tighten() {
        assert!(RunConfig::from_json(r#"{"tolerances":{"algebra":1e-8}}"#).is_ok());
        assert!(RunConfig::from_json(r#"{"tolerances":{"algebra":1e-3}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"tolerances":{"bogus":1e-9}}"#).is_err());
    }

    #[test]
    fn rejects_bad_grid_and_unknown_keys() {
        assert!(RunConfig::from_json(r#"{"grid":{"L":16,"m":100}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"grids":{}}"#).is_err());
    }
}
