//! Deterministic text output: every float is written in fixed-format
//! scientific notation with 17 significant digits, so identical runs
//! produce identical bytes on any platform.

use euler_top::dynamics::{ConservedTriple, State};

/// 17 significant digits, scientific. Valid as a JSON number and in CSV/OBJ.
pub fn sci(v: f64) -> String {
    assert!(v.is_finite(), "non-finite value in output");
    format!("{v:.16e}")
}

/// JSON array of floats on one line.
pub fn arr(values: &[f64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| sci(*v)).collect();
    format!("[{}]", parts.join(", "))
}

pub fn state_arr(x: &State) -> String {
    arr(&x.as_array())
}

pub fn conserved_arr(f: &ConservedTriple) -> String {
    arr(&[f.f1, f.f2, f.f3])
}

/// Trajectory table with one row per retained step.
pub fn trajectory_csv(rows: &[(u32, State, ConservedTriple)]) -> String {
    let mut out = String::from("n,x1,x2,x3,F1,F2,F3\n");
    for (n, x, f) in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            n,
            sci(x.x1),
            sci(x.x2),
            sci(x.x3),
            sci(f.f1),
            sci(f.f2),
            sci(f.f3),
        ));
    }
    out
}
