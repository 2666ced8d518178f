//! The quadric pencil H = C1 + lambda*C3 through the base curve: pencil
//! parameter from the involution phase shift, the signed coefficient
//! structure, and degeneracy classification.

use crate::dynamics::{CaseLabel, ConservedTriple, Delta, DiagonalQuadric, SignRegime, State};
use crate::elliptic::{complete_k, jacobi_real, Modulus};
use crate::error::{Error, Result};

/// Relative tolerance for the range checks and boundary classification.
const RANGE_TOL: f64 = 1e-12;

/// What the pencil member degenerates to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadricKind {
    Hyperboloid,
    Cone,
    CylinderC1,
    CylinderC3,
}

/// A member of the pencil, with its parameter, coefficients (A,B,C,D), the
/// signed root S = +-sqrt(ABCD), and its degeneracy classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PencilQuadric {
    pub lambda: f64,
    pub quadric: DiagonalQuadric,
    pub s: f64,
    pub kind: QuadricKind,
}

/// The pencil parameter selected by an involution phase shift nu_i:
/// lambda = -((1-F1)/(1-F3)) / sn^2(nu_i/2) for case A,
/// lambda = -((1-F1)/(1-F3)) * sn^2(nu_i/2) for case B.
///
/// Even in nu_i exactly (sn enters squared). Case A at nu_i = 0 has no
/// finite parameter: the member is the cylinder C3, reported as
/// `LambdaInfinite`.
pub fn lambda_from_nu(nu_i: f64, f: &ConservedTriple, case: CaseLabel, k: Modulus) -> Result<f64> {
    let kk = complete_k(k)?;
    if nu_i.abs() > 2.0 * kk * (1.0 + 1e-9) {
        return Err(Error::OutOfRange);
    }
    let sn = jacobi_real(0.5 * nu_i, k).sn;
    let sn2 = sn * sn;
    // positive: (1-F1) > 0 and (1-F3) < 0 in the admissible regime
    let ratio = -(1.0 - f.f1) / (1.0 - f.f3);
    match case {
        CaseLabel::A => {
            if sn2 == 0.0 {
                Err(Error::LambdaInfinite)
            } else {
                Ok(ratio / sn2)
            }
        }
        CaseLabel::B => Ok(ratio * sn2),
    }
}

/// Construct the pencil member for a parameter in the case-valid range
/// (case A: [ratio, +inf], case B: [0, ratio], ratio = -(1-F1)/(1-F3)).
///
/// Coefficients: A = lambda d2 d3, B = (1 - lambda F3) d1 d3,
/// C = -F1 d1 d2, D = -(1-F1) - lambda (1-F3). S carries the sign of the
/// delta regime: positive for (-,+,-), negative for the reversed pattern.
/// `lambda = f64::INFINITY` is accepted and yields the cylinder C3.
pub fn pencil_quadric(
    lambda: f64,
    f: &ConservedTriple,
    delta: &Delta,
    case: CaseLabel,
) -> Result<PencilQuadric> {
    let regime = delta.require_regime()?;
    if !f.is_admissible() {
        return Err(Error::RegimeViolation);
    }
    let ratio = -(1.0 - f.f1) / (1.0 - f.f3);
    let tol = RANGE_TOL * ratio;
    match case {
        CaseLabel::A => {
            if !(lambda >= ratio - tol) {
                return Err(Error::LambdaOutOfRange);
            }
        }
        CaseLabel::B => {
            if !(lambda >= -tol && lambda <= ratio + tol) {
                return Err(Error::LambdaOutOfRange);
            }
        }
    }

    let (d1, d2, d3) = (delta.d1, delta.d2, delta.d3);
    if lambda.is_infinite() {
        // the projective limit of C1 + lambda C3
        let quadric = DiagonalQuadric::new(d2 * d3, -f.f3 * d1 * d3, 0.0, -(1.0 - f.f3));
        return Ok(PencilQuadric {
            lambda,
            quadric,
            s: 0.0,
            kind: QuadricKind::CylinderC3,
        });
    }

    let a = lambda * d2 * d3;
    let b = (1.0 - lambda * f.f3) * d1 * d3;
    let c = -f.f1 * d1 * d2;
    let d0 = -(1.0 - f.f1) - lambda * (1.0 - f.f3);
    let quadric = DiagonalQuadric::new(a, b, c, d0);

    let kind = if lambda.abs() <= tol {
        QuadricKind::CylinderC1
    } else if (lambda - ratio).abs() <= tol {
        QuadricKind::Cone
    } else {
        QuadricKind::Hyperboloid
    };

    let prod = (a * b * c * d0).max(0.0);
    let s = match regime {
        SignRegime::MinusPlusMinus => prod.sqrt(),
        SignRegime::PlusMinusPlus => -prod.sqrt(),
    };
    let s = match kind {
        QuadricKind::Hyperboloid => s,
        _ => 0.0,
    };

    Ok(PencilQuadric {
        lambda,
        quadric,
        s,
        kind,
    })
}

/// Symmetric bilinear pairing of two points under a diagonal quadric:
/// c1 x1 y1 + c2 x2 y2 + c3 x3 y3 + c0. Zero iff y lies on the polar plane
/// of x (the tangent plane when x is on the quadric).
pub fn tangency_residual(x: &State, y: &State, q: &DiagonalQuadric) -> f64 {
    q.c1 * x.x1 * y.x1 + q.c2 * x.x2 * y.x2 + q.c3 * x.x3 * y.x3 + q.c0
}
