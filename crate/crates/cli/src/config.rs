use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use starmeans::operators::{validate_janowski, ClassParams};
use starmeans::sampling::MAX_DEFAULT_DEGREE;
use starmeans::sweep::SweepGrid;
use starmeans::verification::{PhiFamily, Precision};

use crate::CliError;

/// Largest radius accepted without `--allow-high-r`.
pub const MAX_DEFAULT_RADIUS: f64 = 0.95;

/// Largest accepted `r^M`.
pub const MAX_ALIASING: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Everything a run depends on. Loaded from one JSON document, then
/// overridden field by field from the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub alphas: Vec<f64>,
    pub ns: Vec<u32>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub radii: Vec<f64>,
    /// Starting series order `N`.
    pub order: usize,
    /// Circle grid size `M`.
    pub grid: usize,
    pub samples: usize,
    pub degree: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub allow_high_r: bool,
    pub hinge_points: usize,
    pub exp_rates: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alphas: vec![0.25, 0.5, 1.0],
            ns: vec![1, 2, 3],
            a: vec![1.0, 0.5],
            b: vec![-1.0, 0.0],
            radii: vec![0.3, 0.6, 0.9],
            order: 64,
            grid: 4096,
            samples: 4,
            degree: 3,
            seed: 1,
            out: None,
            format: Format::Csv,
            allow_high_r: false,
            hinge_points: 41,
            exp_rates: vec![0.5, 1.0, 2.0],
        }
    }
}

/// How strictly the parameter grid is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Any `alpha > 0`, `n >= 0`: coefficient tables and samples.
    Class,
    /// `0 < alpha <= 1`, `n >= 1`: the inequality suites.
    Inequalities,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| config_err(format!("invalid config {}: {e}", path.display())))
    }

    pub fn validate(&self, scope: Scope) -> Result<(), CliError> {
        for (name, empty) in [
            ("alphas", self.alphas.is_empty()),
            ("ns", self.ns.is_empty()),
            ("a", self.a.is_empty()),
            ("b", self.b.is_empty()),
            ("radii", self.radii.is_empty()),
        ] {
            if empty {
                return Err(config_err(format!("`{name}` is empty")));
            }
        }
        for &a in &self.a {
            for &b in &self.b {
                validate_janowski(a, b).map_err(|e| config_err(e.to_string()))?;
            }
        }
        for params in self.params() {
            let checked = match scope {
                Scope::Class => params.validate(),
                Scope::Inequalities => params.validate_theorem_range(),
            };
            checked.map_err(|e| config_err(e.to_string()))?;
        }
        let r_max = if self.allow_high_r { 1.0 } else { MAX_DEFAULT_RADIUS };
        for &r in &self.radii {
            let ok = r > 0.0 && if self.allow_high_r { r < r_max } else { r <= r_max };
            if !ok {
                let hint = if self.allow_high_r { "" } else { " (use --allow-high-r above 0.95)" };
                return Err(config_err(format!("radius {r} outside (0, {r_max}]{hint}")));
            }
        }
        if self.order == 0 {
            return Err(config_err("order must be positive"));
        }
        if self.grid < 2 {
            return Err(config_err(format!("grid size {} is too small", self.grid)));
        }
        // Sampling log|f'| on M points aliases terms of size about r^M.
        if let Some(&r) = self.radii.iter().find(|&&r| r.powf(self.grid as f64) > MAX_ALIASING) {
            let needed = (MAX_ALIASING.ln() / r.ln()).ceil();
            return Err(config_err(format!("grid size {} is too coarse for radius {r}; use at least {needed}", self.grid)));
        }
        if self.degree > MAX_DEFAULT_DEGREE {
            return Err(config_err(format!("degree {} exceeds {MAX_DEFAULT_DEGREE}", self.degree)));
        }
        if self.exp_rates.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
            return Err(config_err("exp rates must be positive"));
        }
        Ok(())
    }

    /// Parameter combinations in `alpha, n, a, b` order. Only meaningful
    /// after [`RunConfig::validate`].
    pub fn params(&self) -> Vec<ClassParams> {
        let mut out = Vec::new();
        for &alpha in &self.alphas {
            for &n in &self.ns {
                for &a in &self.a {
                    for &b in &self.b {
                        out.push(ClassParams { alpha, n, a, b });
                    }
                }
            }
        }
        out
    }

    pub fn janowski_pairs(&self) -> Vec<(f64, f64)> {
        self.a.iter().flat_map(|&a| self.b.iter().map(move |&b| (a, b))).collect()
    }

    pub fn precision(&self) -> Precision {
        let max_order = if self.allow_high_r { 1 << 14 } else { 8192 };
        Precision { order: self.order, grid: self.grid, max_order: max_order.max(self.order), ..Precision::default() }
    }

    pub fn family(&self) -> PhiFamily {
        PhiFamily { hinge_points: self.hinge_points, exp_rates: self.exp_rates.clone() }
    }

    pub fn sweep_grid(&self) -> SweepGrid {
        SweepGrid {
            alphas: self.alphas.clone(),
            ns: self.ns.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
            radii: self.radii.clone(),
            samples: self.samples,
            degree: self.degree,
            seed: self.seed,
            include_extremal: true,
        }
    }
}
