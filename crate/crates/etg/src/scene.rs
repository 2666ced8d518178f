//! Shared setup: from a run configuration to the validated dynamical data
//! every subcommand needs.

use euler_top::curve::{chart_from_state, elliptic_time_step, CurveChart, Phase};
use euler_top::dynamics::{classify_case, conserved, CaseLabel, ConservedTriple, Delta, State};
use euler_top::Result;

use crate::config::RunConfig;

pub struct Scene {
    pub delta: Delta,
    pub x0: State,
    pub f: ConservedTriple,
    pub case: CaseLabel,
    pub chart: CurveChart,
    pub phase: Phase,
    /// The elliptic phase advance of one full map step.
    pub nu: f64,
}

impl Scene {
    pub fn from_config(config: &RunConfig) -> Result<Self> {
        let delta = Delta::new(config.delta[0], config.delta[1], config.delta[2]);
        delta.require_regime()?;
        let x0 = State::new(config.x0[0], config.x0[1], config.x0[2]);
        let f = conserved(&x0, &delta)?;
        let case = classify_case(&f)?;
        let (chart, phase) = chart_from_state(&x0, &delta)?;
        let nu = elliptic_time_step(&f, case, chart.k)?;
        Ok(Scene {
            delta,
            x0,
            f,
            case,
            chart,
            phase,
            nu,
        })
    }

    /// First involution phase: the configured value, or half a step.
    pub fn nu1(&self, config: &RunConfig) -> f64 {
        config.nu1.unwrap_or(0.5 * self.nu)
    }
}
