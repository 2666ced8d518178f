use euler_top::curve::chart_from_state;
use euler_top::dynamics::{classify_case, conserved, CaseLabel, Delta, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rejection-sample an initial state and step triple in the canonical sign
/// regime whose orbit is admissible, lands in the requested case, and has a
/// well-conditioned chart.
pub fn draw_admissible(r: &mut ChaCha8Rng, case: CaseLabel) -> (State, Delta) {
    loop {
        let d = Delta::new(
            -r.gen_range(0.02..0.2),
            r.gen_range(0.02..0.2),
            -r.gen_range(0.02..0.2),
        );
        let x = State::new(
            r.gen_range(-1.5..1.5),
            r.gen_range(-1.5..1.5),
            r.gen_range(-1.5..1.5),
        );
        if x.as_array().iter().any(|t| t.abs() < 0.05) {
            continue;
        }
        let f = match conserved(&x, &d) {
            Ok(f) => f,
            Err(_) => continue,
        };
        if !f.is_admissible() || classify_case(&f) != Ok(case) {
            continue;
        }
        let chart = match chart_from_state(&x, &d) {
            Ok((chart, _)) => chart,
            Err(_) => continue,
        };
        let k2 = chart.k.k2();
        if !(1e-4..=(1.0 - 1e-4)).contains(&k2) {
            continue;
        }
        return (x, d);
    }
}
