//! Run configuration: JSON file format and inline flag overrides.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CliError;

/// Which representation of the discrete flow drives the trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Iterate the explicit birational map.
    Map,
    /// Sample the elliptic-function solution at the step phase.
    Elliptic,
    /// Compose the two ruling involutions per step (records intermediates).
    Involutions,
    /// Iterate the half-step square-root map.
    Sqrt,
}

impl Default for Mode {
    fn default() -> Self {
        Mode::Map
    }
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Map => "map",
            Mode::Elliptic => "elliptic",
            Mode::Involutions => "involutions",
            Mode::Sqrt => "sqrt",
        }
    }
}

/// A complete run description. Serializes to JSON and back without loss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub delta: [f64; 3],
    pub x0: [f64; 3],
    #[serde(default = "default_steps")]
    pub steps: u32,
    #[serde(default)]
    pub mode: Mode,
    /// Phase split of the first involution; defaults to half the time step.
    #[serde(default)]
    pub nu1: Option<f64>,
    /// Seed for the randomized verification suites.
    #[serde(default)]
    pub seed: Option<u64>,
    /// Per-suite tolerance overrides, keyed by suite name.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

fn default_steps() -> u32 {
    10
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::invalid(format!("bad config: {e}")))
    }

    /// Serialize with the same fixed-format scientific floats as every
    /// other artifact; `from_json` recovers the exact field values.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        out.push_str(&format!("  \"delta\": {},\n", crate::emit::arr(&self.delta)));
        out.push_str(&format!("  \"x0\": {},\n", crate::emit::arr(&self.x0)));
        out.push_str(&format!("  \"steps\": {},\n", self.steps));
        out.push_str(&format!("  \"mode\": \"{}\",\n", self.mode.as_str()));
        match self.nu1 {
            Some(v) => out.push_str(&format!("  \"nu1\": {},\n", crate::emit::sci(v))),
            None => out.push_str("  \"nu1\": null,\n"),
        }
        match self.seed {
            Some(v) => out.push_str(&format!("  \"seed\": {},\n", v)),
            None => out.push_str("  \"seed\": null,\n"),
        }
        out.push_str("  \"tolerances\": {");
        for (i, (name, tol)) in self.tolerances.iter().enumerate() {
            let comma = if i + 1 < self.tolerances.len() { "," } else { "" };
            out.push_str(&format!(
                "\n    \"{}\": {}{}",
                name,
                crate::emit::sci(*tol),
                comma
            ));
        }
        if !self.tolerances.is_empty() {
            out.push_str("\n  ");
        }
        out.push_str("}\n}\n");
        out
    }
}

/// Inline flag values; any present field overrides the config file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub delta: Option<[f64; 3]>,
    pub x0: Option<[f64; 3]>,
    pub steps: Option<u32>,
    pub mode: Option<Mode>,
    pub nu1: Option<f64>,
    pub seed: Option<u64>,
}

/// Load the config file if given, apply overrides, and validate presence
/// of the two required fields.
pub fn resolve(path: Option<&Path>, ov: Overrides) -> Result<RunConfig, CliError> {
    let mut config = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", p.display())))?;
            RunConfig::from_json(&text)?
        }
        None => {
            let delta = ov
                .delta
                .ok_or_else(|| CliError::invalid("missing --delta (or --config)".into()))?;
            let x0 = ov
                .x0
                .ok_or_else(|| CliError::invalid("missing --x0 (or --config)".into()))?;
            RunConfig {
                delta,
                x0,
                steps: default_steps(),
                mode: Mode::default(),
                nu1: None,
                seed: None,
                tolerances: BTreeMap::new(),
            }
        }
    };
    if let Some(d) = ov.delta {
        config.delta = d;
    }
    if let Some(x) = ov.x0 {
        config.x0 = x;
    }
    if let Some(s) = ov.steps {
        config.steps = s;
    }
    if let Some(m) = ov.mode {
        config.mode = m;
    }
    if let Some(n) = ov.nu1 {
        config.nu1 = Some(n);
    }
    if let Some(s) = ov.seed {
        config.seed = Some(s);
    }
    for v in config.delta.iter().chain(config.x0.iter()) {
        if !v.is_finite() {
            return Err(CliError::invalid("delta and x0 must be finite".into()));
        }
    }
    Ok(config)
}

/// Reporting tolerance for one verification suite: config override first,
/// then the ETG_TOLERANCE environment variable, then 1e-8.
pub fn tolerance(config: &RunConfig, suite: &str) -> Result<f64, CliError> {
    if let Some(t) = config.tolerances.get(suite) {
        return Ok(*t);
    }
    match std::env::var("ETG_TOLERANCE") {
        Ok(s) => s
            .parse::<f64>()
            .map_err(|e| CliError::invalid(format!("bad ETG_TOLERANCE {s:?}: {e}"))),
        Err(_) => Ok(1e-8),
    }
}
