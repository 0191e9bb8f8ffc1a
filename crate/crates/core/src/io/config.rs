use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::geometry::{DesignBounds, SceneConfig};
use crate::harmony::HsParams;
use crate::problem::MirrorProblem;

pub const CONFIG_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ServiceConfig {
    /// Optimization jobs allowed to run at once.
    pub max_jobs: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self { max_jobs: 2 }
    }
}

/// A complete run description. Every field has a default, so `{}` is the
/// reference case study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub format_version: u32,
    pub scene: SceneConfig,
    pub bounds: DesignBounds,
    pub hs: HsParams,
    pub outputs: PathBuf,
    pub service: ServiceConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            format_version: CONFIG_FORMAT_VERSION,
            scene: SceneConfig::default(),
            bounds: DesignBounds::default(),
            hs: HsParams::default(),
            outputs: PathBuf::from("out"),
            service: ServiceConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<(), IoError> {
        if self.format_version != CONFIG_FORMAT_VERSION {
            return Err(IoError::Invalid(format!(
                "unsupported format_version {} (expected {CONFIG_FORMAT_VERSION})",
                self.format_version
            )));
        }
        if self.service.max_jobs == 0 {
            return Err(IoError::Invalid("service.max_jobs must be at least 1".into()));
        }
        self.problem()?;
        self.hs.validate().map_err(|e| IoError::Invalid(e.to_string()))
    }

    pub fn problem(&self) -> Result<MirrorProblem, IoError> {
        MirrorProblem::new(self.scene.clone(), self.bounds.clone()).map_err(|e| IoError::Invalid(e.to_string()))
    }
}
