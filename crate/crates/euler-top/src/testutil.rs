//! Random admissible configurations for the unit-test sweeps.

use crate::curve::chart_from_state;
use crate::dynamics::{classify_case, conserved, CaseLabel, Delta, State};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draw (state, delta) in the canonical (-,+,-) regime realizing the given
/// case, with the state clear of coordinate planes and the modulus clear of
/// its endpoints.
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
        if x.as_array().iter().any(|v| v.abs() < 0.05) {
            continue;
        }
        let f = match conserved(&x, &d) {
            Ok(f) => f,
            Err(_) => continue,
        };
        if !f.is_admissible() || classify_case(&f) != Ok(case) {
            continue;
        }
        match chart_from_state(&x, &d) {
            Ok((chart, _)) => {
                let k2 = chart.k.k2();
                if k2 > 1e-4 && k2 < 1.0 - 1e-4 {
                    return (x, d);
                }
            }
            Err(_) => continue,
        }
    }
}
