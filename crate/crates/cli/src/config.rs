//! Optional TOML defaults file, e.g.
//!
//! ```toml
//! tol = 1e-9
//! format = "json"
//! s_grid = [0.25, 0.5, 0.75, 1.0]
//! x_grid_points = 11
//! p_grid = [2.0]
//! function_specs = ["breckner:0,1,0,0.5@0.5,2", "poly:0,0,1@0,1"]
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::{CliError, Format};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub oracle_budget: Option<usize>,
    pub s_grid: Option<Vec<f64>>,
    pub x_grid_points: Option<usize>,
    pub p_grid: Option<Vec<f64>>,
    pub function_specs: Option<Vec<String>>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
