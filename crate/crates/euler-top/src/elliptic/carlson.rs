//! Carlson symmetric elliptic integral of the first kind.

/// R_F(x, y, z) for nonnegative arguments, at most one of them zero.
///
/// Duplication algorithm: each step quarters the spread of the arguments,
/// after which the symmetric Taylor expansion around the mean converges to
/// machine precision (truncation error is of sixth order in the spread).
pub fn rf(x: f64, y: f64, z: f64) -> f64 {
    debug_assert!(x >= 0.0 && y >= 0.0 && z >= 0.0);
    debug_assert!(x + y > 0.0 && y + z > 0.0 && z + x > 0.0);

    let (mut x, mut y, mut z) = (x, y, z);
    let mut mean;
    loop {
        let sx = x.sqrt();
        let sy = y.sqrt();
        let sz = z.sqrt();
        let lambda = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lambda);
        y = 0.25 * (y + lambda);
        z = 0.25 * (z + lambda);
        mean = (x + y + z) / 3.0;
        let spread = (mean - x)
            .abs()
            .max((mean - y).abs())
            .max((mean - z).abs());
        if spread <= 1e-4 * mean {
            break;
        }
    }

    // Symmetric series in the deviations; X + Y + Z = 0 by construction.
    let dx = 1.0 - x / mean;
    let dy = 1.0 - y / mean;
    let dz = 1.0 - z / mean;
    let e2 = dx * dy + dy * dz + dz * dx;
    let e3 = dx * dy * dz;
    let series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0
        - 5.0 * e2 * e2 * e2 / 208.0
        + 3.0 * e3 * e3 / 104.0
        + e2 * e2 * e3 / 16.0;
    series / mean.sqrt()
}
