//! The complexified base curve: the parametrization evaluated at complex
//! phases, the complex involutions as exact affine phase maps, arithmetic in
//! the fundamental period parallelogram, and the coplanarity determinant.

use num_complex::Complex64;

use crate::curve::CurveChart;
use crate::dynamics::CaseLabel;
use crate::elliptic::{jacobi_complex, Modulus, QuarterPeriods};
use crate::error::Result;

/// A phase in the fundamental parallelogram [0, 4K) x [0, 4K').
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPhase {
    pub z: Complex64,
}

impl ComplexPhase {
    /// Reduce an arbitrary complex phase into the fundamental
    /// parallelogram. Idempotent: a reduced phase reduces to itself.
    pub fn normalized(z: Complex64, periods: &QuarterPeriods) -> Self {
        let wrap = |t: f64, p: f64| {
            let r = t.rem_euclid(p);
            // rem_euclid of a tiny negative can round up to the period
            if r >= p {
                r - p
            } else {
                r
            }
        };
        ComplexPhase {
            z: Complex64::new(wrap(z.re, 4.0 * periods.real), wrap(z.im, 4.0 * periods.imag)),
        }
    }
}

/// Which sign the phase shift enters the complex involution with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvolutionBranch {
    Plus,
    Minus,
}

impl InvolutionBranch {
    pub fn signum(self) -> f64 {
        match self {
            InvolutionBranch::Plus => 1.0,
            InvolutionBranch::Minus => -1.0,
        }
    }
}

/// Evaluate the curve parametrization at a complex phase. Restricted to
/// Im z = 0 this is the real component of the chart; on Im z = 2K' it is
/// again real and traces the mirrored component.
pub fn phi(z: &ComplexPhase, chart: &CurveChart) -> Result<[Complex64; 3]> {
    let t = jacobi_complex(z.z, chart.k)?;
    let a = chart.amp;
    Ok(match chart.case_label {
        CaseLabel::A => [a[0] * t.cn, a[1] * t.sn, a[2] * t.dn],
        CaseLabel::B => [a[0] * t.dn, a[1] * t.sn, a[2] * t.cn],
    })
}

/// The complex involution on phases: z -> 2iK' - (z + 2K) +- nu_i, reduced
/// into the fundamental parallelogram. An exact affine map; the curve point
/// follows by applying [`phi`].
pub fn complex_involution(
    z: &ComplexPhase,
    nu_i: f64,
    branch: InvolutionBranch,
    chart: &CurveChart,
) -> ComplexPhase {
    let p = &chart.periods;
    let image = Complex64::new(
        branch.signum() * nu_i - 2.0 * p.real - z.z.re,
        2.0 * p.imag - z.z.im,
    );
    ComplexPhase::normalized(image, p)
}

/// Net phase shift of the composition iota_(nu2, b2) after iota_(nu1, b1):
/// s2 nu2 - s1 nu1. Two applications of one involution give exactly 0.0;
/// the minus/plus pairing gives nu1 + nu2 (the full time step when
/// nu1 + nu2 = nu).
pub fn involution_shift(
    nu1: f64,
    b1: InvolutionBranch,
    nu2: f64,
    b2: InvolutionBranch,
) -> f64 {
    b2.signum() * nu2 - b1.signum() * nu1
}

/// Determinant of the 4x4 matrix with rows (cn z_i, sn z_i, dn z_i, 1).
/// Vanishes exactly when z1 + z2 + z3 + z4 = 0 modulo the period lattice:
/// the four curve points are coplanar.
pub fn coplanarity_det(zs: &[Complex64; 4], k: Modulus) -> Result<Complex64> {
    let mut rows = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (row, &z) in rows.iter_mut().zip(zs.iter()) {
        let t = jacobi_complex(z, k)?;
        *row = [t.cn, t.sn, t.dn, Complex64::new(1.0, 0.0)];
    }
    Ok(det4(&rows))
}

fn det4(m: &[[Complex64; 4]; 4]) -> Complex64 {
    let det3 = |r: [usize; 3], c: [usize; 3]| -> Complex64 {
        m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
            - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
            + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
    };
    // Laplace expansion along the column of ones
    let c = [0, 1, 2];
    -m[0][3] * det3([1, 2, 3], c) + m[1][3] * det3([0, 2, 3], c)
        - m[2][3] * det3([0, 1, 3], c)
        + m[3][3] * det3([0, 1, 2], c)
}
