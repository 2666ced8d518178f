//! Invariant verification suites. Each suite reports its worst error and
//! passes iff that error is within its tolerance; the command exits 0 only
//! when every suite passes.

use std::path::Path;

use euler_top::complex_curve::coplanarity_det;
use euler_top::dynamics::{hk_map, CaseLabel, ConservedTriple, Delta, State};
use euler_top::involution::{compose_hk, iota_hk, DeltaSign, InvolutionSpec};
use euler_top::pencil::pencil_quadric;
use euler_top::Error;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::{tolerance, RunConfig};
use crate::emit::{arr, sci};
use crate::scene::Scene;
use crate::CliError;

pub struct SuiteResult {
    pub name: &'static str,
    pub checks: u32,
    pub max_error: f64,
    pub tolerance: f64,
}

impl SuiteResult {
    pub fn pass(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

const SUITE_NAMES: [&str; 5] = [
    "conservation",
    "involutivity",
    "composition",
    "coplanarity",
    "sign_lemma",
];

/// A short forward orbit to probe pointwise identities on.
fn orbit(scene: &Scene, len: usize) -> Result<Vec<State>, Error> {
    let mut points = vec![scene.x0];
    for _ in 1..len {
        let next = hk_map(points.last().expect("orbit non-empty"), &scene.delta)?;
        points.push(next);
    }
    Ok(points)
}

/// Conserved-quantity drift over 100 map steps.
fn conservation(scene: &Scene) -> Result<(u32, f64), Error> {
    let mut x = scene.x0;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        x = hk_map(&x, &scene.delta)?;
        let f = euler_top::dynamics::conserved(&x, &scene.delta)?;
        worst = worst
            .max((f.f1 - scene.f.f1).abs())
            .max((f.f2 - scene.f.f2).abs())
            .max((f.f3 - scene.f.f3).abs());
    }
    Ok((100, worst))
}

/// Sample a non-degenerate involution phase, both signs of nu and of delta.
fn draw_spec(rng: &mut ChaCha8Rng, scene: &Scene) -> Result<InvolutionSpec, Error> {
    let two_k = 2.0 * scene.chart.periods.real;
    for _ in 0..200 {
        let t: f64 = rng.gen_range(0.05..0.95);
        let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let ds = if rng.gen::<bool>() {
            DeltaSign::Plus
        } else {
            DeltaSign::Minus
        };
        match InvolutionSpec::new(sign * t * two_k, ds, &scene.f, &scene.delta, scene.case) {
            Ok(spec) => return Ok(spec),
            Err(Error::DegenerateNu | Error::LambdaOutOfRange | Error::LambdaInfinite) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateNu)
}

/// iota applied twice returns the starting point.
fn involutivity(scene: &Scene, rng: &mut ChaCha8Rng) -> Result<(u32, f64), Error> {
    let points = orbit(scene, 5)?;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let spec = draw_spec(rng, scene)?;
        let x = &points[i % points.len()];
        let y = iota_hk(x, &spec, &scene.f, &scene.delta)?;
        let back = iota_hk(&y, &spec, &scene.f, &scene.delta)?;
        worst = worst.max(back.dist_inf(x));
    }
    Ok((20, worst))
}

/// The involution pair composes to the forward map for any valid split.
fn composition(scene: &Scene, rng: &mut ChaCha8Rng) -> Result<(u32, f64), Error> {
    let points = orbit(scene, 3)?;
    let two_k = 2.0 * scene.chart.periods.real;
    let lo = scene.nu - two_k;
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    'draws: for _ in 0..10 {
        for _attempt in 0..200 {
            let t: f64 = rng.gen_range(0.05..0.95);
            let nu1 = lo + t * (two_k - lo);
            match compose_hk(&points[0], nu1, &scene.f, &scene.delta, scene.case) {
                Ok(_) => {
                    for x in &points {
                        let composed = compose_hk(x, nu1, &scene.f, &scene.delta, scene.case)?;
                        let direct = hk_map(x, &scene.delta)?;
                        worst = worst.max(composed.dist_inf(&direct));
                        checks += 1;
                    }
                    continue 'draws;
                }
                Err(Error::DegenerateNu | Error::LambdaOutOfRange | Error::LambdaInfinite) => {
                    continue
                }
                Err(e) => return Err(e),
            }
        }
        return Err(Error::DegenerateNu);
    }
    Ok((checks, worst))
}

/// Zero-sum phase quadruples on the complexified curve are coplanar.
fn coplanarity(scene: &Scene, rng: &mut ChaCha8Rng) -> Result<(u32, f64), Error> {
    let periods = &scene.chart.periods;
    let two_k = 2.0 * periods.real;
    let mut worst: f64 = 0.0;
    let mut done = 0;
    let mut attempts = 0;
    while done < 25 {
        attempts += 1;
        if attempts > 2000 {
            return Err(Error::PoleProximity);
        }
        let draw = |rng: &mut ChaCha8Rng| {
            Complex64::new(
                rng.gen_range(-two_k..two_k),
                periods.imag * rng.gen_range(0.15..0.85),
            )
        };
        let z1 = draw(rng);
        let z2 = draw(rng);
        let z3 = draw(rng);
        let z4 = -(z1 + z2 + z3);
        match coplanarity_det(&[z1, z2, z3, z4], scene.chart.k) {
            Ok(det) => {
                worst = worst.max(det.norm());
                done += 1;
            }
            Err(Error::PoleProximity) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok((25, worst))
}

/// Coefficient sign pattern of pencil members, on synthetic admissible draws
/// covering both cases and both delta regimes.
fn sign_lemma(rng: &mut ChaCha8Rng) -> Result<(u32, f64), Error> {
    let mut worst: f64 = 0.0;
    for case in [CaseLabel::A, CaseLabel::B] {
        for _ in 0..50 {
            let f = loop {
                let f1: f64 = rng.gen_range(0.1..0.9);
                let f3: f64 = rng.gen_range(1.05..3.0);
                let f2 = 1.0 / (f1 * f3);
                let sep = match case {
                    CaseLabel::A => f2 > 1.001,
                    CaseLabel::B => f2 < 0.999,
                };
                if sep {
                    break ConservedTriple { f1, f2, f3 };
                }
            };
            let mag = |rng: &mut ChaCha8Rng| rng.gen_range(0.02..0.2_f64);
            let flip = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            let delta = Delta::new(-mag(rng) * flip, mag(rng) * flip, -mag(rng) * flip);
            let ratio = -(1.0 - f.f1) / (1.0 - f.f3);
            let sn2: f64 = rng.gen_range(0.05..0.95);
            let lambda = match case {
                CaseLabel::A => ratio / sn2,
                CaseLabel::B => ratio * sn2,
            };
            let h = pencil_quadric(lambda, &f, &delta, case)?;
            let q = h.quadric;
            // required: c1 < 0 and c3 > 0 always; c2, c0 signs swap with case
            let mut err = q.c1.max(0.0).max((-q.c3).max(0.0));
            err = match case {
                CaseLabel::A => err.max(q.c2.max(0.0)).max((-q.c0).max(0.0)),
                CaseLabel::B => err.max((-q.c2).max(0.0)).max(q.c0.max(0.0)),
            };
            let prod = q.c1 * q.c2 * q.c3 * q.c0;
            if prod < 0.0 {
                err = err.max(1.0);
            }
            worst = worst.max(err);
        }
    }
    Ok((100, worst))
}

fn report_json(config: &RunConfig, seed: u64, suites: &[SuiteResult]) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"delta\": {},\n", arr(&config.delta)));
    out.push_str(&format!("  \"x0\": {},\n", arr(&config.x0)));
    out.push_str(&format!("  \"seed\": {},\n", seed));
    out.push_str("  \"suites\": [\n");
    for (i, s) in suites.iter().enumerate() {
        let comma = if i + 1 < suites.len() { "," } else { "" };
        out.push_str(&format!(
            "    {{\"name\": \"{}\", \"checks\": {}, \"max_error\": {}, \"tolerance\": {}, \"pass\": {}}}{}\n",
            s.name,
            s.checks,
            sci(s.max_error),
            sci(s.tolerance),
            s.pass(),
            comma
        ));
    }
    out.push_str("  ],\n");
    out.push_str(&format!(
        "  \"pass\": {}\n}}\n",
        suites.iter().all(SuiteResult::pass)
    ));
    out
}

/// Returns the process exit code: 0 when every suite passes, 1 otherwise.
pub fn run(config: &RunConfig, out_dir: &Path) -> Result<i32, CliError> {
    let scene = Scene::from_config(config)?;
    let seed = config.seed.unwrap_or(17);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut suites = Vec::new();
    for name in SUITE_NAMES {
        let (checks, max_error) = match name {
            "conservation" => conservation(&scene)?,
            "involutivity" => involutivity(&scene, &mut rng)?,
            "composition" => composition(&scene, &mut rng)?,
            "coplanarity" => coplanarity(&scene, &mut rng)?,
            "sign_lemma" => sign_lemma(&mut rng)?,
            _ => unreachable!(),
        };
        suites.push(SuiteResult {
            name,
            checks,
            max_error,
            tolerance: tolerance(config, name)?,
        });
    }

    std::fs::create_dir_all(out_dir).map_err(CliError::from)?;
    std::fs::write(out_dir.join("config.json"), config.to_json()).map_err(CliError::from)?;
    std::fs::write(out_dir.join("report.json"), report_json(config, seed, &suites))
        .map_err(CliError::from)?;

    for s in &suites {
        println!(
            "{}: {} (checks {}, max error {}, tolerance {})",
            s.name,
            if s.pass() { "PASS" } else { "FAIL" },
            s.checks,
            sci(s.max_error),
            sci(s.tolerance)
        );
    }
    let all_pass = suites.iter().all(SuiteResult::pass);
    println!("verify: {}", if all_pass { "PASS" } else { "FAIL" });
    Ok(if all_pass { 0 } else { 1 })
}
