//! The discrete-time Euler top: explicit birational map, implicit residuals,
//! conserved quantities, case classification, and the conserved-quantity
//! cylinders.

use crate::error::{Error, Result};

/// Denominators smaller than this are treated as a genuine blow-up rather
/// than roundoff.
const DENOM_TOL: f64 = 1e-13;

/// Tolerance around F2 = 1 where the case dichotomy is undefined.
const CASE_TOL: f64 = 1e-10;

/// Sign pattern of the step parameters in the admissible regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignRegime {
    /// (-, +, -)
    MinusPlusMinus,
    /// (+, -, +)
    PlusMinusPlus,
}

/// Step parameters delta_i = eps * alpha_i / 2.
///
/// Constructed either from the deltas directly or from the provenance pair
/// (eps, alpha); stored canonically as the three deltas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Delta {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl Delta {
    pub fn new(d1: f64, d2: f64, d3: f64) -> Self {
        Delta { d1, d2, d3 }
    }

    /// From step size eps and the inertia-derived coefficients alpha.
    pub fn from_eps_alpha(eps: f64, alpha: [f64; 3]) -> Self {
        Delta {
            d1: eps * alpha[0] / 2.0,
            d2: eps * alpha[1] / 2.0,
            d3: eps * alpha[2] / 2.0,
        }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.d1, self.d2, self.d3]
    }

    /// All signs inverted. Applying the map with the negated deltas is the
    /// inverse flow.
    pub fn negate(&self) -> Self {
        Delta {
            d1: -self.d1,
            d2: -self.d2,
            d3: -self.d3,
        }
    }

    /// The canonical sign regime this delta belongs to, if any. `None` for
    /// any other sign pattern (including zero components).
    pub fn regime(&self) -> Option<SignRegime> {
        if self.d1 < 0.0 && self.d2 > 0.0 && self.d3 < 0.0 {
            Some(SignRegime::MinusPlusMinus)
        } else if self.d1 > 0.0 && self.d2 < 0.0 && self.d3 > 0.0 {
            Some(SignRegime::PlusMinusPlus)
        } else {
            None
        }
    }

    /// The regime, or `RegimeViolation` outside the two canonical patterns.
    pub fn require_regime(&self) -> Result<SignRegime> {
        self.regime().ok_or(Error::RegimeViolation)
    }
}

/// A point in the body frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl State {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        State { x1, x2, x3 }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        State {
            x1: a[0],
            x2: a[1],
            x3: a[2],
        }
    }

    /// Componentwise negation.
    pub fn negate(&self) -> Self {
        State {
            x1: -self.x1,
            x2: -self.x2,
            x3: -self.x3,
        }
    }

    /// Max-norm distance, used throughout the cross-representation checks.
    pub fn dist_inf(&self, other: &State) -> f64 {
        (self.x1 - other.x1)
            .abs()
            .max((self.x2 - other.x2).abs())
            .max((self.x3 - other.x3).abs())
    }
}

/// The three conserved quantities; F1*F2*F3 = 1 identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedTriple {
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
}

impl ConservedTriple {
    pub fn product(&self) -> f64 {
        self.f1 * self.f2 * self.f3
    }

    /// Strict admissible regime: F1 in (0,1) and F3 > 1.
    pub fn is_admissible(&self) -> bool {
        self.f1 > 0.0 && self.f1 < 1.0 && self.f3 > 1.0
    }

    /// Admissible regime including the degenerate boundary F = (1,1,1),
    /// where the orbit collapses to a point. The cylinder construction is
    /// still well-formed there.
    pub fn is_admissible_closed(&self) -> bool {
        self.f1 > 0.0 && self.f1 <= 1.0 && self.f3 >= 1.0
    }
}

/// The two component-mirror cases: A when F2 > 1, B when F2 < 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    A,
    B,
}

/// Coefficients of the locus c1*x1^2 + c2*x2^2 + c3*x3^2 + c0 = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalQuadric {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c0: f64,
}

impl DiagonalQuadric {
    pub fn new(c1: f64, c2: f64, c3: f64, c0: f64) -> Self {
        DiagonalQuadric { c1, c2, c3, c0 }
    }

    /// Value of the defining polynomial at x; zero on the quadric.
    pub fn eval(&self, x: &State) -> f64 {
        self.c1 * x.x1 * x.x1 + self.c2 * x.x2 * x.x2 + self.c3 * x.x3 * x.x3 + self.c0
    }

    /// Magnitude scale of the four terms at x, for relative membership tests.
    pub fn eval_scale(&self, x: &State) -> f64 {
        (self.c1 * x.x1 * x.x1).abs()
            + (self.c2 * x.x2 * x.x2).abs()
            + (self.c3 * x.x3 * x.x3).abs()
            + self.c0.abs()
    }
}

fn denominator(x: &State, d: &Delta) -> f64 {
    1.0 - d.d2 * d.d3 * x.x1 * x.x1
        - d.d1 * d.d3 * x.x2 * x.x2
        - d.d1 * d.d2 * x.x3 * x.x3
        - 2.0 * d.d1 * d.d2 * d.d3 * x.x1 * x.x2 * x.x3
}

/// One step of the discrete flow.
///
/// Explicit solution of the implicit bilinear system (see [`hk_residual`]):
/// the returned state together with the input satisfies all three implicit
/// equations to roundoff.
pub fn hk_map(x: &State, delta: &Delta) -> Result<State> {
    let den = denominator(x, delta);
    if den.abs() <= DENOM_TOL {
        return Err(Error::VanishingDenominator);
    }
    let (d1, d2, d3) = (delta.d1, delta.d2, delta.d3);
    let (x1, x2, x3) = (x.x1, x.x2, x.x3);
    let q1 = d2 * d3 * x1 * x1;
    let q2 = d1 * d3 * x2 * x2;
    let q3 = d1 * d2 * x3 * x3;
    let n1 = x1 + 2.0 * d1 * x2 * x3 + x1 * (-q1 + q2 + q3);
    let n2 = x2 + 2.0 * d2 * x1 * x3 + x2 * (q1 - q2 + q3);
    let n3 = x3 + 2.0 * d3 * x1 * x2 + x3 * (q1 + q2 - q3);
    Ok(State::new(n1 / den, n2 / den, n3 / den))
}

/// Inverse step: the same rational map with all delta signs inverted.
pub fn hk_inverse(x: &State, delta: &Delta) -> Result<State> {
    hk_map(x, &delta.negate())
}

/// Residuals of the implicit equations of motion,
/// `xt_i - x_i - delta_i (xt_j x_k + x_j xt_k)` with (i,j,k) cyclic.
pub fn hk_residual(x: &State, xt: &State, delta: &Delta) -> [f64; 3] {
    [
        xt.x1 - x.x1 - delta.d1 * (xt.x2 * x.x3 + x.x2 * xt.x3),
        xt.x2 - x.x2 - delta.d2 * (xt.x3 * x.x1 + x.x3 * xt.x1),
        xt.x3 - x.x3 - delta.d3 * (xt.x1 * x.x2 + x.x1 * xt.x2),
    ]
}

/// The conserved quantities
/// F1 = (1 - d3 d1 x2^2)/(1 - d1 d2 x3^2) and its two cyclic companions.
pub fn conserved(x: &State, delta: &Delta) -> Result<ConservedTriple> {
    let (d1, d2, d3) = (delta.d1, delta.d2, delta.d3);
    let p1 = 1.0 - d2 * d3 * x.x1 * x.x1;
    let p2 = 1.0 - d3 * d1 * x.x2 * x.x2;
    let p3 = 1.0 - d1 * d2 * x.x3 * x.x3;
    if p1.abs() <= DENOM_TOL || p2.abs() <= DENOM_TOL || p3.abs() <= DENOM_TOL {
        return Err(Error::VanishingDenominator);
    }
    Ok(ConservedTriple {
        f1: p2 / p3,
        f2: p3 / p1,
        f3: p1 / p2,
    })
}

/// Case (a) iff F2 > 1, case (b) iff F2 < 1; the boundary is rejected.
pub fn classify_case(f: &ConservedTriple) -> Result<CaseLabel> {
    if (f.f2 - 1.0).abs() <= CASE_TOL {
        return Err(Error::BoundaryCase);
    }
    Ok(if f.f2 > 1.0 { CaseLabel::A } else { CaseLabel::B })
}

/// The three conserved-quantity cylinders [C1, C2, C3].
///
/// Requires the admissible regime; the closed boundary F = (1,1,1) is
/// accepted (all constant terms vanish there).
pub fn cylinders(f: &ConservedTriple, delta: &Delta) -> Result<[DiagonalQuadric; 3]> {
    if !f.is_admissible_closed() {
        return Err(Error::RegimeViolation);
    }
    let (d1, d2, d3) = (delta.d1, delta.d2, delta.d3);
    Ok([
        DiagonalQuadric::new(0.0, d1 * d3, -f.f1 * d1 * d2, -(1.0 - f.f1)),
        DiagonalQuadric::new(-f.f2 * d2 * d3, 0.0, d1 * d2, -(1.0 - f.f2)),
        DiagonalQuadric::new(d2 * d3, -f.f3 * d1 * d3, 0.0, -(1.0 - f.f3)),
    ])
}
