//! Trajectory evolution in any of the four representations, exported as
//! CSV and JSON.

use std::path::Path;

use euler_top::curve::elliptic_solution;
use euler_top::dynamics::{conserved, hk_map, ConservedTriple, State};
use euler_top::involution::{compose_hk_with_intermediate, sqrt_map};
use euler_top::Error;

use crate::config::{Mode, RunConfig};
use crate::emit::{conserved_arr, sci, state_arr, trajectory_csv};
use crate::scene::Scene;
use crate::CliError;

pub struct Trajectory {
    pub rows: Vec<(u32, State, ConservedTriple)>,
    /// One mid point per step in involutions mode, empty otherwise.
    pub intermediates: Vec<State>,
    pub nu1: Option<f64>,
}

/// Walk `steps` map steps as involution pairs, keeping the intermediate
/// points on the mirrored curve component.
pub fn involution_walk(
    scene: &Scene,
    nu1: f64,
    steps: u32,
) -> Result<(Vec<State>, Vec<State>), Error> {
    let mut states = vec![scene.x0];
    let mut mids = Vec::with_capacity(steps as usize);
    for _ in 0..steps {
        let last = *states.last().expect("walk starts non-empty");
        let (mid, next) =
            compose_hk_with_intermediate(&last, nu1, &scene.f, &scene.delta, scene.case)?;
        mids.push(mid);
        states.push(next);
    }
    Ok((states, mids))
}

pub fn trajectory(scene: &Scene, config: &RunConfig) -> Result<Trajectory, Error> {
    let mut intermediates = Vec::new();
    let mut nu1 = None;
    let states: Vec<State> = match config.mode {
        Mode::Map => iterate(scene.x0, config.steps, |x| hk_map(x, &scene.delta))?,
        Mode::Elliptic => elliptic_solution(&scene.chart, &scene.phase, scene.nu, config.steps),
        Mode::Sqrt => iterate(scene.x0, config.steps, |x| sqrt_map(x, &scene.delta))?,
        Mode::Involutions => {
            let split = scene.nu1(config);
            nu1 = Some(split);
            let (states, mids) = involution_walk(scene, split, config.steps)?;
            intermediates = mids;
            states
        }
    };
    let mut rows = Vec::with_capacity(states.len());
    for (n, x) in states.into_iter().enumerate() {
        let f = conserved(&x, &scene.delta)?;
        rows.push((n as u32, x, f));
    }
    Ok(Trajectory {
        rows,
        intermediates,
        nu1,
    })
}

fn iterate(
    x0: State,
    steps: u32,
    step: impl Fn(&State) -> Result<State, Error>,
) -> Result<Vec<State>, Error> {
    let mut states = vec![x0];
    for _ in 0..steps {
        let next = step(states.last().expect("iterate starts non-empty"))?;
        states.push(next);
    }
    Ok(states)
}

fn trajectory_json(config: &RunConfig, scene: &Scene, traj: &Trajectory) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"mode\": \"{}\",\n", config.mode.as_str()));
    out.push_str(&format!("  \"delta\": {},\n", crate::emit::arr(&config.delta)));
    out.push_str(&format!("  \"x0\": {},\n", crate::emit::arr(&config.x0)));
    out.push_str(&format!("  \"steps\": {},\n", config.steps));
    out.push_str(&format!("  \"nu\": {},\n", sci(scene.nu)));
    match traj.nu1 {
        Some(v) => out.push_str(&format!("  \"nu1\": {},\n", sci(v))),
        None => out.push_str("  \"nu1\": null,\n"),
    }
    out.push_str("  \"rows\": [\n");
    for (i, (n, x, f)) in traj.rows.iter().enumerate() {
        let comma = if i + 1 < traj.rows.len() { "," } else { "" };
        out.push_str(&format!(
            "    {{\"n\": {}, \"x\": {}, \"f\": {}}}{}\n",
            n,
            state_arr(x),
            conserved_arr(f),
            comma
        ));
    }
    out.push_str("  ],\n");
    out.push_str("  \"intermediates\": [\n");
    for (i, x) in traj.intermediates.iter().enumerate() {
        let comma = if i + 1 < traj.intermediates.len() { "," } else { "" };
        out.push_str(&format!("    {}{}\n", state_arr(x), comma));
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn run(config: &RunConfig, out_dir: &Path) -> Result<(), CliError> {
    let scene = Scene::from_config(config)?;
    let traj = trajectory(&scene, config)?;
    std::fs::create_dir_all(out_dir).map_err(CliError::from)?;
    std::fs::write(out_dir.join("config.json"), config.to_json()).map_err(CliError::from)?;
    std::fs::write(out_dir.join("trajectory.csv"), trajectory_csv(&traj.rows))
        .map_err(CliError::from)?;
    std::fs::write(
        out_dir.join("trajectory.json"),
        trajectory_json(config, &scene, &traj),
    )
    .map_err(CliError::from)?;
    println!(
        "wrote trajectory.csv and trajectory.json ({} rows, mode {})",
        traj.rows.len(),
        config.mode.as_str()
    );
    Ok(())
}
