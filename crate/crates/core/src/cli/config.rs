//! Run configuration: a TOML file with `[run]`, `[sampler]` and `[ground]`
//! sections, overridden by command-line flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::CliError;
use crate::models::ModelSpec;
use crate::tradeoff::{GroundSearch, SamplerConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub sampler: SamplerSection,
    #[serde(default)]
    pub ground: GroundSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub model: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub formats: Option<Vec<Format>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerSection {
    pub samples: Option<usize>,
    pub rounds: Option<usize>,
    pub tau_min: Option<f64>,
    pub tau_max: Option<f64>,
    pub epsilon_max: Option<f64>,
    pub chi_max: Option<usize>,
    pub truncation_tol: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundSection {
    pub chi_max: Option<usize>,
    pub tol: Option<f64>,
    pub schedule: Option<Vec<(f64, usize)>>,
    pub check_every: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Invalid(format!("bad config {}: {e}", path.display())))
    }
}

/// Everything a `pareto` run needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub seed: u64,
    pub out: PathBuf,
    pub formats: Vec<Format>,
    pub sampler: SamplerConfig,
    pub ground: GroundSearch,
}

/// Values given on the command line; each overrides the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub model: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub rounds: Option<usize>,
    pub chi_max: Option<usize>,
    pub out: Option<PathBuf>,
    pub formats: Option<Vec<Format>>,
}

impl RunConfig {
    pub fn resolve(file: ConfigFile, flags: Overrides) -> Result<Self, CliError> {
        let model_text = flags
            .model
            .or(file.run.model)
            .ok_or_else(|| CliError::Invalid("no model given (use --model or [run] model)".into()))?;
        let model: ModelSpec = model_text.parse().map_err(|e: crate::Error| CliError::Invalid(e.to_string()))?;
        let seed = flags
            .seed
            .or(file.run.seed)
            .ok_or_else(|| CliError::Invalid("no seed given (use --seed or [run] seed)".into()))?;
        let out = flags.out.or(file.run.out).unwrap_or_else(|| PathBuf::from("."));
        let formats = flags.formats.or(file.run.formats).unwrap_or_else(|| vec![Format::Csv, Format::Svg]);

        let defaults = SamplerConfig::default();
        let s = file.sampler;
        let sampler = SamplerConfig {
            n_samples: flags.samples.or(s.samples).unwrap_or(defaults.n_samples),
            rounds_per_sample: flags.rounds.or(s.rounds).unwrap_or(defaults.rounds_per_sample),
            tau_range: (s.tau_min.unwrap_or(defaults.tau_range.0), s.tau_max.unwrap_or(defaults.tau_range.1)),
            epsilon_max: s.epsilon_max.unwrap_or(defaults.epsilon_max),
            chi_max: flags.chi_max.or(s.chi_max).unwrap_or(defaults.chi_max),
            truncation_tol: s.truncation_tol.unwrap_or(defaults.truncation_tol),
            seed,
        };
        sampler.validate().map_err(|e| CliError::Invalid(e.to_string()))?;

        let gd = GroundSearch::default();
        let g = file.ground;
        let ground = GroundSearch {
            chi_max: g.chi_max.unwrap_or(gd.chi_max),
            schedule: g.schedule.unwrap_or(gd.schedule),
            tol: g.tol.unwrap_or(gd.tol),
            truncation_tol: gd.truncation_tol,
            check_every: g.check_every.unwrap_or(gd.check_every),
            seed,
        };
        Ok(Self { model, seed, out, formats, sampler, ground })
    }
}
