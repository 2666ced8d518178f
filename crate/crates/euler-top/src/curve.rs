//! Elliptic coordinates on the base curve: amplitudes, modulus, phase
//! recovery, the per-step phase shift, and the closed-form solution of the
//! discrete flow.

use crate::dynamics::{
    classify_case, conserved, hk_map, CaseLabel, ConservedTriple, Delta, State,
};
use crate::elliptic::{arcsn, jacobi_real, quarter_periods, Modulus, QuarterPeriods};
use crate::error::{Error, Result};

/// Which real component of the base curve a chart parameterizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentSign {
    Plus,
    Minus,
}

/// The elliptic coordinate system on one component of the base curve.
///
/// `amp` stores the three signed amplitudes: case A places them on
/// (cn, sn, dn) and case B on (dn, sn, cn). The amplitude in the dn slot
/// never changes sign along the component, so its sign marks the component
/// and agrees with `component_sign`; the cn-slot amplitude absorbs the sign
/// of its coordinate (pinning the recovered phase into [-K, K]), and the
/// sn-slot sign fixes the direction in which the flow advances the phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveChart {
    pub case_label: CaseLabel,
    pub amp: [f64; 3],
    pub k: Modulus,
    pub periods: QuarterPeriods,
    pub component_sign: ComponentSign,
}

/// A phase on the curve, normalized into [-2K, 2K].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase {
    pub u0: f64,
}

/// Squared amplitudes from the conserved values and deltas.
///
/// All three must come out positive; in the canonical sign regime that is
/// automatic for admissible conserved values.
pub fn amplitudes_squared(
    f: &ConservedTriple,
    delta: &Delta,
    case: CaseLabel,
) -> Result<[f64; 3]> {
    let (d1, d2, d3) = (delta.d1, delta.d2, delta.d3);
    let a = match case {
        CaseLabel::A => [
            (1.0 - f.f3) / (d2 * d3),
            (1.0 - 1.0 / f.f3) / (d3 * d1),
            (1.0 - 1.0 / f.f1) / (d1 * d2),
        ],
        CaseLabel::B => [
            (1.0 - f.f3) / (d2 * d3),
            (1.0 - f.f1) / (d1 * d3),
            (1.0 - 1.0 / f.f1) / (d1 * d2),
        ],
    };
    if a.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::RegimeViolation);
    }
    Ok(a)
}

/// The case-dependent modulus: k^2 = (1 - 1/F3)/(1 - F1) for case A and its
/// reciprocal for case B; must land strictly inside (0,1).
pub fn modulus_for(f: &ConservedTriple, case: CaseLabel) -> Result<Modulus> {
    let k2 = match case {
        CaseLabel::A => (1.0 - 1.0 / f.f3) / (1.0 - f.f1),
        CaseLabel::B => (1.0 - f.f1) / (1.0 - 1.0 / f.f3),
    };
    if !(k2 > 0.0 && k2 < 1.0) {
        return Err(Error::RegimeViolation);
    }
    Modulus::from_squared(k2)
}

/// The phase advance of one step of the discrete flow; always positive.
///
/// Defined by sn^2(nu/2) = 1 - F1 (case A) or 1 - 1/F3 (case B).
pub fn elliptic_time_step(f: &ConservedTriple, case: CaseLabel, k: Modulus) -> Result<f64> {
    if !f.is_admissible() {
        return Err(Error::RegimeViolation);
    }
    let s2 = match case {
        CaseLabel::A => 1.0 - f.f1,
        CaseLabel::B => 1.0 - 1.0 / f.f3,
    };
    let s = s2.clamp(0.0, 1.0).sqrt();
    Ok(2.0 * arcsn(s, k)?)
}

/// Point on the component at phase u.
pub fn curve_point(chart: &CurveChart, u: f64) -> State {
    let t = jacobi_real(u, chart.k);
    let a = chart.amp;
    match chart.case_label {
        CaseLabel::A => State::new(a[0] * t.cn, a[1] * t.sn, a[2] * t.dn),
        CaseLabel::B => State::new(a[0] * t.dn, a[1] * t.sn, a[2] * t.cn),
    }
}

fn sign_or(v: f64, fallback: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        fallback
    }
}

/// Recover the chart and phase of a state.
///
/// The amplitude magnitudes and modulus follow from the conserved values;
/// the dn-slot and cn-slot signs are read off the coordinates. The one
/// genuinely free bit, the sn-slot sign (equivalently the sign of the
/// phase), is fixed operationally: of the two candidates, keep the one whose
/// next curve point matches one actual step of the flow, so that the phase
/// always advances by +nu. States at a branch point (|sn| = 1, where the
/// cn-slot coordinate vanishes) tie-break to u0 = +K with the cn-slot sign
/// taking over as the probed bit.
pub fn chart_from_state(x: &State, delta: &Delta) -> Result<(CurveChart, Phase)> {
    let f = conserved(x, delta)?;
    if !f.is_admissible() {
        return Err(Error::RegimeViolation);
    }
    let case = classify_case(&f)?;
    let amp2 = amplitudes_squared(&f, delta, case)?;
    let k = modulus_for(&f, case)?;
    let periods = quarter_periods(k)?;
    let nu = elliptic_time_step(&f, case, k)?;
    let next = hk_map(x, delta)?;

    let mags = [amp2[0].sqrt(), amp2[1].sqrt(), amp2[2].sqrt()];
    let xc = x.as_array();
    // slot layout: (cn, sn, dn) coordinates per case
    let (cn_i, dn_i) = match case {
        CaseLabel::A => (0usize, 2usize),
        CaseLabel::B => (2usize, 0usize),
    };
    let sn_ratio = xc[1] / mags[1];
    let at_branch = sn_ratio.abs() >= 1.0 - 1e-12;

    let mut best: Option<(f64, CurveChart, f64)> = None;
    for sigma in [1.0, -1.0] {
        let mut amp = [0.0f64; 3];
        let u0 = if at_branch {
            amp[1] = sign_or(xc[1], 1.0) * mags[1];
            amp[cn_i] = sigma * mags[cn_i];
            amp[dn_i] = sign_or(xc[dn_i], 1.0) * mags[dn_i];
            periods.real
        } else {
            amp[1] = sigma * mags[1];
            let s0 = (xc[1] / amp[1]).clamp(-1.0, 1.0);
            amp[cn_i] = sign_or(xc[cn_i], 1.0) * mags[cn_i];
            amp[dn_i] = sign_or(xc[dn_i], 1.0) * mags[dn_i];
            sign_or(s0, 1.0) * arcsn(s0.abs(), k)?
        };
        let component_sign = if amp[dn_i] >= 0.0 {
            ComponentSign::Plus
        } else {
            ComponentSign::Minus
        };
        let chart = CurveChart {
            case_label: case,
            amp,
            k,
            periods,
            component_sign,
        };
        let err = curve_point(&chart, u0 + nu).dist_inf(&next);
        if best.as_ref().map_or(true, |(e, _, _)| err < *e) {
            best = Some((err, chart, u0));
        }
    }

    let (err, chart, u0) = best.expect("two candidates were scored");
    let scale = 1.0f64.max(next.dist_inf(&State::new(0.0, 0.0, 0.0)));
    if err > 1e-5 * scale {
        // neither orientation reproduces the actual step: x is not on an
        // admissible orbit of this delta to working precision
        return Err(Error::AmbiguousPhase);
    }
    Ok((chart, Phase { u0 }))
}

/// The solution sequence curve_point(u0 + m*nu) for m = 0..=n.
pub fn elliptic_solution(chart: &CurveChart, u0: &Phase, nu: f64, n: u32) -> Vec<State> {
    (0..=n)
        .map(|m| curve_point(chart, u0.u0 + m as f64 * nu))
        .collect()
}

/// Reflection onto the other component: case A negates the third
/// coordinate, case B the first.
pub fn mirror_state(x: &State, case: CaseLabel) -> State {
    match case {
        CaseLabel::A => State::new(x.x1, x.x2, -x.x3),
        CaseLabel::B => State::new(-x.x1, x.x2, x.x3),
    }
}
