//! Involutions along ruling lines: generating directions of a diagonal ruled
//! quadric, second intersection of a ruling with a cylinder, the generic
//! two-point involution, its specialization to the pencil hyperboloids, the
//! sign-selected composition that reproduces the discrete flow, the square
//! root of the map, and the closed forms at degenerate phase shifts.

use crate::curve::{elliptic_time_step, mirror_state, modulus_for};
use crate::dynamics::{
    cylinders, hk_map, CaseLabel, ConservedTriple, Delta, DiagonalQuadric, State,
};
use crate::elliptic::complete_k;
use crate::error::{Error, Result};
use crate::pencil::{lambda_from_nu, pencil_quadric, PencilQuadric, QuadricKind};

/// Which of the two ruling families through a point to follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RulingBranch {
    Plus,
    Minus,
}

/// A ruling direction (a, b, c) at an anchor point X on the quadric
/// (A, B, C, D): it satisfies A a^2 + B b^2 + C c^2 = 0 and
/// A a X1 + B b X2 + C c X3 = 0, so X + t (a,b,c) stays on the quadric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RulingDirection {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl RulingDirection {
    pub fn as_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    fn norm(v: [f64; 3]) -> f64 {
        (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
    }

    fn unit(v: [f64; 3]) -> Self {
        let n = Self::norm(v);
        RulingDirection {
            a: v[0] / n,
            b: v[1] / n,
            c: v[2] / n,
        }
    }
}

/// Which overall sign of the time steps an involution is built with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaSign {
    Plus,
    Minus,
}

impl DeltaSign {
    pub fn signum(self) -> f64 {
        match self {
            DeltaSign::Plus => 1.0,
            DeltaSign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            DeltaSign::Plus => DeltaSign::Minus,
            DeltaSign::Minus => DeltaSign::Plus,
        }
    }
}

/// An involution of the base curve determined by a phase shift nu_i in
/// (-2K, 2K) \ {0} and a delta sign: the pair fixes the pencil hyperboloid
/// and the ruling family used to swap curve points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvolutionSpec {
    pub nu_i: f64,
    pub delta_sign: DeltaSign,
    pub lambda: f64,
    pub h: PencilQuadric,
    pub case_label: CaseLabel,
}

impl InvolutionSpec {
    /// Build the spec for a nondegenerate shift. Shifts at 0 or +-2K have no
    /// hyperboloid (the member degenerates) and are rejected with
    /// `DegenerateNu`; their closed forms live in [`degenerate_map`].
    pub fn new(
        nu_i: f64,
        delta_sign: DeltaSign,
        f: &ConservedTriple,
        delta: &Delta,
        case: CaseLabel,
    ) -> Result<Self> {
        let k = modulus_for(f, case)?;
        let kk = complete_k(k)?;
        let tol = 1e-12 * (2.0 * kk).max(1.0);
        if nu_i.abs() <= tol || (nu_i.abs() - 2.0 * kk).abs() <= tol {
            return Err(Error::DegenerateNu);
        }
        let lambda = lambda_from_nu(nu_i, f, case, k)?;
        let h = pencil_quadric(lambda, f, delta, case)?;
        if h.kind != QuadricKind::Hyperboloid {
            return Err(Error::DegenerateNu);
        }
        Ok(InvolutionSpec {
            nu_i,
            delta_sign,
            lambda,
            h,
            case_label: case,
        })
    }
}

/// All three algebraic forms of the ruling-direction pair at x, in the order
/// (main, alternate in x2x3, alternate in x1x3). Each entry is the
/// (plus, minus) branch pair; r is the nonnegative root of ABCD.
fn direction_forms(x: &State, q: &DiagonalQuadric, r: f64) -> [([f64; 3], [f64; 3]); 3] {
    let (a, b, c) = (q.c1, q.c2, q.c3);
    let (x1, x2, x3) = (x.x1, x.x2, x.x3);
    let abc = a * b * c;
    let form = |s: f64| -> [[f64; 3]; 3] {
        [
            [
                abc * x1 * x3 - s * r * b * x2,
                abc * x2 * x3 + s * r * a * x1,
                -a * b * (a * x1 * x1 + b * x2 * x2),
            ],
            [
                -b * c * (b * x2 * x2 + c * x3 * x3),
                abc * x1 * x2 - s * r * c * x3,
                abc * x1 * x3 + s * r * b * x2,
            ],
            [
                abc * x1 * x2 + s * r * c * x3,
                -a * c * (a * x1 * x1 + c * x3 * x3),
                abc * x2 * x3 - s * r * a * x1,
            ],
        ]
    };
    let p = form(1.0);
    let m = form(-1.0);
    [(p[0], m[0]), (p[1], m[1]), (p[2], m[2])]
}

/// The two generating lines of the ruled quadric q through a point x on it,
/// as unit direction vectors.
///
/// The main closed form degenerates on certain loci (for a cylinder along
/// x3, or where its shared component vanishes together with the root
/// terms); two algebraically equivalent alternates cover those, so every
/// point of every ruled diagonal quadric gets its directions except where
/// all three vanish (the vertex of a cone), reported as `TangentLine`.
/// Branch labels are consistent within one form but the alternates may
/// orient a family oppositely to the main form.
pub fn ruling_directions(
    x: &State,
    q: &DiagonalQuadric,
) -> Result<(RulingDirection, RulingDirection)> {
    let scale = q.eval_scale(x);
    if q.eval(x).abs() > 1e-9 * scale {
        return Err(Error::PointOffQuadric);
    }
    let prod = q.c1 * q.c2 * q.c3 * q.c0;
    if prod < 0.0 {
        return Err(Error::ComplexRulings);
    }
    let forms = direction_forms(x, q, prod.sqrt());
    let quality: Vec<f64> = forms
        .iter()
        .map(|(p, m)| RulingDirection::norm(*p).min(RulingDirection::norm(*m)))
        .collect();
    let best = quality.iter().cloned().fold(0.0f64, f64::max);
    if best <= 0.0 {
        return Err(Error::TangentLine);
    }
    for (i, (p, m)) in forms.iter().enumerate() {
        if quality[i] >= 1e-11 * best {
            return Ok((RulingDirection::unit(*p), RulingDirection::unit(*m)));
        }
    }
    Err(Error::TangentLine)
}

/// Follow the chosen ruling of h from x until it meets the cylinder cyl a
/// second time. Returns the line parameter v and the second point
/// x + v * d; v = 0 names x itself (the ruling is tangent to the cylinder
/// there).
///
/// cyl must be a cylinder along x2, coefficients (alpha, 0, beta, gamma),
/// and x must lie on both quadrics.
pub fn second_intersection(
    x: &State,
    h: &DiagonalQuadric,
    cyl: &DiagonalQuadric,
    branch: RulingBranch,
) -> Result<(f64, State)> {
    let cyl_scale = cyl.c1.abs() + cyl.c3.abs() + cyl.c0.abs();
    if cyl.c2.abs() > 1e-13 * cyl_scale {
        return Err(Error::OutOfRange);
    }
    if cyl.eval(x).abs() > 1e-9 * cyl.eval_scale(x) {
        return Err(Error::PointOffQuadric);
    }
    let (dp, dm) = ruling_directions(x, h)?;
    let d = match branch {
        RulingBranch::Plus => dp,
        RulingBranch::Minus => dm,
    };
    let (alpha, beta) = (cyl.c1, cyl.c3);
    let num = alpha * d.a * x.x1 + beta * d.c * x.x3;
    let den = alpha * d.a * d.a + beta * d.c * d.c;
    let den_scale = alpha.abs() * d.a * d.a + beta.abs() * d.c * d.c;
    if den_scale <= 0.0 || den.abs() <= 1e-13 * den_scale {
        return Err(Error::TangentLine);
    }
    let v = -2.0 * num / den;
    let image = State::new(x.x1 + v * d.a, x.x2 + v * d.b, x.x3 + v * d.c);
    Ok((v, image))
}

/// The two-point involution: swap x with the second intersection of its
/// ruling (on h, chosen branch) with the cylinder cyl. Applying it twice
/// returns to x because the two points share one ruling line.
pub fn iota_generic(
    x: &State,
    h: &DiagonalQuadric,
    cyl: &DiagonalQuadric,
    branch: RulingBranch,
) -> Result<State> {
    second_intersection(x, h, cyl, branch).map(|(_, image)| image)
}

/// The specialized involution of the base curve: rulings of the pencil
/// hyperboloid in spec, second intersection with the middle cylinder. The
/// ruling family is selected by the sign of S under the spec's delta sign
/// (reversing all delta signs flips S).
pub fn iota_hk(
    x: &State,
    spec: &InvolutionSpec,
    f: &ConservedTriple,
    delta: &Delta,
) -> Result<State> {
    let s_eff = spec.delta_sign.signum() * spec.h.s;
    let branch = if s_eff >= 0.0 {
        RulingBranch::Plus
    } else {
        RulingBranch::Minus
    };
    let c2 = cylinders(f, delta)?[1];
    iota_generic(x, &spec.h.quadric, &c2, branch)
}

/// The delta signs that make iota(nu2, s2) after iota(nu1, s1) reproduce the
/// forward map: case A pairs sgn(nu1) with -sgn(nu2), case B the reverse.
/// Flipping both signs yields the inverse map instead.
pub fn composition_delta_signs(case: CaseLabel, nu1: f64, nu2: f64) -> (DeltaSign, DeltaSign) {
    let sign_of = |t: f64| {
        if t >= 0.0 {
            DeltaSign::Plus
        } else {
            DeltaSign::Minus
        }
    };
    match case {
        CaseLabel::A => (sign_of(nu1), sign_of(nu2).flip()),
        CaseLabel::B => (sign_of(nu1).flip(), sign_of(nu2)),
    }
}

/// Compose the two involutions splitting the time step as nu = nu1 + nu2,
/// with the sign selection of [`composition_delta_signs`]. Equals one
/// forward map step for every admissible split; returns the intermediate
/// point (on the mirrored component) together with the image.
pub fn compose_hk_with_intermediate(
    x: &State,
    nu1: f64,
    f: &ConservedTriple,
    delta: &Delta,
    case: CaseLabel,
) -> Result<(State, State)> {
    let k = modulus_for(f, case)?;
    let nu = elliptic_time_step(f, case, k)?;
    let nu2 = nu - nu1;
    let (ds1, ds2) = composition_delta_signs(case, nu1, nu2);
    let spec1 = InvolutionSpec::new(nu1, ds1, f, delta, case)?;
    let spec2 = InvolutionSpec::new(nu2, ds2, f, delta, case)?;
    let mid = iota_hk(x, &spec1, f, delta)?;
    let image = iota_hk(&mid, &spec2, f, delta)?;
    Ok((mid, image))
}

/// [`compose_hk_with_intermediate`] without the intermediate point.
pub fn compose_hk(
    x: &State,
    nu1: f64,
    f: &ConservedTriple,
    delta: &Delta,
    case: CaseLabel,
) -> Result<State> {
    compose_hk_with_intermediate(x, nu1, f, delta, case).map(|(_, image)| image)
}

/// The square root of the map: a non-rational map whose second iterate is
/// the forward map. Each coordinate divides by the geometric mean of the
/// two conserved cylinder radicands it does not own.
pub fn sqrt_map(x: &State, delta: &Delta) -> Result<State> {
    let (d1, d2, d3) = (delta.d1, delta.d2, delta.d3);
    let (x1, x2, x3) = (x.x1, x.x2, x.x3);
    let r23 = 1.0 - d2 * d3 * x1 * x1;
    let r13 = 1.0 - d1 * d3 * x2 * x2;
    let r12 = 1.0 - d1 * d2 * x3 * x3;
    if r23 <= 0.0 || r13 <= 0.0 || r12 <= 0.0 {
        return Err(Error::NegativeRadicand);
    }
    let (r23, r13, r12) = (r23.sqrt(), r13.sqrt(), r12.sqrt());
    Ok(State::new(
        (x1 + d1 * x2 * x3) / (r13 * r12),
        (x2 + d2 * x1 * x3) / (r23 * r12),
        (x3 + d3 * x1 * x2) / (r23 * r13),
    ))
}

/// The four phase shifts whose pencil member degenerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateKind {
    /// nu_i = 0: the member is a cylinder; the involution mirrors the
    /// component.
    Nu0,
    /// nu_i = nu: one forward/backward step composed with the mirror.
    NuNu,
    /// nu_i = +-2K: the member is a cone; the involution is central
    /// reflection.
    Nu2K,
    /// nu_i = nu -+ 2K: one step composed with central reflection.
    NuNuMinus2K,
}

/// Closed forms of the involutions at degenerate shifts. Each is an exact
/// involution; composing Nu0 with NuNu, or NuNuMinus2K with Nu2K, under the
/// composition sign rule reproduces the forward map.
pub fn degenerate_map(
    x: &State,
    which: DegenerateKind,
    case: CaseLabel,
    delta_sign: DeltaSign,
    delta: &Delta,
) -> Result<State> {
    let aligned = |s: DeltaSign| match s {
        DeltaSign::Plus => *delta,
        DeltaSign::Minus => delta.negate(),
    };
    match which {
        DegenerateKind::Nu0 => Ok(mirror_state(x, case)),
        DegenerateKind::Nu2K => Ok(x.negate()),
        DegenerateKind::NuNu => {
            // case A steps with the spec's sign, case B against it
            let d_eff = match case {
                CaseLabel::A => aligned(delta_sign),
                CaseLabel::B => aligned(delta_sign.flip()),
            };
            Ok(mirror_state(&hk_map(x, &d_eff)?, case))
        }
        DegenerateKind::NuNuMinus2K => {
            let d_eff = match case {
                CaseLabel::A => aligned(delta_sign.flip()),
                CaseLabel::B => aligned(delta_sign),
            };
            Ok(hk_map(x, &d_eff)?.negate())
        }
    }
}
