use std::path::PathBuf;

use anyhow::{bail, Context};
use bubblelab::vec3::Vec3;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::selector::ModelSelector;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Contents of a `--config` TOML file. Every key is optional; flags win.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub model: Option<String>,
    pub mu: Option<f64>,
    pub a: Option<f64>,
    pub p: Option<[f64; 3]>,
    pub tol: Option<f64>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

pub fn parse_config(text: &str) -> anyhow::Result<ConfigFile> {
    let cfg: ConfigFile = toml::from_str(text)?;
    if let Some(model) = &cfg.model {
        model.parse::<ModelSelector>()?;
    }
    Ok(cfg)
}

pub fn load_config(path: &std::path::Path) -> anyhow::Result<ConfigFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Settings shared by all commands after merging flags over the config file.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub model: Option<String>,
    pub mu: Option<f64>,
    pub a: f64,
    pub p: Option<Vec3>,
    pub tolerance: f64,
    pub output: Option<PathBuf>,
    pub format: Format,
}

pub const DEFAULT_A: f64 = 3.0;
pub const DEFAULT_TOL: f64 = 1e-3;

impl RunConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            bail!("tolerance must be positive, got {}", self.tolerance);
        }
        if !(self.a.is_finite() && self.a != 0.0) {
            bail!("a must be finite and nonzero, got {}", self.a);
        }
        if let Some(mu) = self.mu {
            if !(mu > 0.0 && mu.is_finite()) {
                bail!("mu must be positive, got {mu}");
            }
        }
        if let Some(p) = self.p {
            if p.iter().any(|v| !v.is_finite()) {
                bail!("p must be finite");
            }
        }
        Ok(())
    }

    /// Parses the model and checks that `mu` is given exactly when the model
    /// uses it.
    pub fn selector(&self) -> anyhow::Result<ModelSelector> {
        let name = self.model.as_deref().context("this command needs --model")?;
        let model: ModelSelector = name.parse()?;
        match (model.needs_mu(), self.mu) {
            (true, None) => bail!("model {model} needs --mu"),
            (false, Some(_)) => bail!("--mu only applies to psi-mu models, not {model}"),
            _ => Ok(model),
        }
    }
}
