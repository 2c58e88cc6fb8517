//! Run settings: command-line flags over a TOML file over defaults.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use semigraph_core::tagger::BUILTIN;
use semigraph_core::{CorpusFormat, FeatureKind, FeatureMask, RunConfig};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Tsv,
    Jsonl,
}

/// Keys accepted in a `--config` file. All optional.
///
/// ```toml
/// format = "a"
/// tagger = "builtin"
/// disable-feature = ["F5"]
/// test-fraction = 0.2
/// seed = 42
/// output = "jsonl"
/// ```
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub format: Option<String>,
    pub tagger: Option<String>,
    pub disable_feature: Option<Vec<String>>,
    pub test_fraction: Option<f64>,
    pub seed: Option<u64>,
    pub output: Option<OutputFormat>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<FileConfig> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
    }

    pub fn format(&self, flag: Option<CorpusFormat>) -> Result<Option<CorpusFormat>> {
        match (flag, &self.format) {
            (Some(f), _) => Ok(Some(f)),
            (None, Some(raw)) => raw.parse().map(Some).map_err(anyhow::Error::msg),
            (None, None) => Ok(None),
        }
    }

    pub fn tagger(&self, flag: Option<&str>) -> String {
        flag.map(str::to_string)
            .or_else(|| self.tagger.clone())
            .unwrap_or_else(|| BUILTIN.to_string())
    }

    /// Flags replace the file's list rather than adding to it.
    pub fn mask(&self, flags: &[FeatureKind]) -> Result<FeatureMask> {
        let disabled: Vec<FeatureKind> = if !flags.is_empty() {
            flags.to_vec()
        } else {
            self.disable_feature
                .iter()
                .flatten()
                .map(|s| s.parse().map_err(anyhow::Error::msg))
                .collect::<Result<_>>()?
        };
        let mask = disabled.iter().fold(FeatureMask::all(), |m, k| m.without(*k));
        if mask.is_empty() {
            bail!("every feature kind is disabled; at least one must stay enabled");
        }
        Ok(mask)
    }

    pub fn run_config(&self, mask: FeatureMask, test_fraction: Option<f64>, seed: Option<u64>) -> RunConfig {
        let defaults = RunConfig::default();
        RunConfig {
            mask,
            test_fraction: test_fraction.or(self.test_fraction).unwrap_or(defaults.test_fraction),
            seed: seed.or(self.seed).unwrap_or(defaults.seed),
        }
    }

    pub fn output(&self, flag: Option<OutputFormat>) -> OutputFormat {
        flag.or(self.output).unwrap_or_default()
    }
}
