//! Randomized invariants of the map, the charts, and the elliptic kernel.

use euler_top::complex_curve::ComplexPhase;
use euler_top::curve::{chart_from_state, curve_point, mirror_state};
use euler_top::dynamics::{
    classify_case, conserved, hk_inverse, hk_map, hk_residual, Delta, State,
};
use euler_top::elliptic::{arcsn, jacobi_real, quarter_periods, Modulus};
use euler_top::involution::sqrt_map;
use num_complex::Complex64;
use proptest::prelude::*;

fn admissible() -> impl Strategy<Value = (State, Delta)> {
    (
        0.02f64..0.2,
        0.02f64..0.2,
        0.02f64..0.2,
        -1.5f64..1.5,
        -1.5f64..1.5,
        -1.5f64..1.5,
    )
        .prop_filter_map("admissible regime draw", |(a, b, c, x1, x2, x3)| {
            let d = Delta::new(-a, b, -c);
            let x = State::new(x1, x2, x3);
            if x.as_array().iter().any(|t| t.abs() < 0.05) {
                return None;
            }
            let f = conserved(&x, &d).ok()?;
            if !f.is_admissible() {
                return None;
            }
            classify_case(&f).ok()?;
            let (chart, _) = chart_from_state(&x, &d).ok()?;
            let k2 = chart.k.k2();
            if !(1e-4..=(1.0 - 1e-4)).contains(&k2) {
                return None;
            }
            Some((x, d))
        })
}

proptest! {
    #[test]
    fn conserved_quantities_survive_a_step((x, d) in admissible()) {
        let f = conserved(&x, &d).unwrap();
        let y = hk_map(&x, &d).unwrap();
        let g = conserved(&y, &d).unwrap();
        prop_assert!((f.f1 - g.f1).abs() <= 1e-10);
        prop_assert!((f.f2 - g.f2).abs() <= 1e-10);
        prop_assert!((f.f3 - g.f3).abs() <= 1e-10);
        prop_assert!((f.product() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn inverse_undoes_the_map((x, d) in admissible()) {
        let y = hk_map(&x, &d).unwrap();
        let back = hk_inverse(&y, &d).unwrap();
        prop_assert!(back.dist_inf(&x) <= 1e-11);
    }

    #[test]
    fn map_satisfies_the_implicit_equations((x, d) in admissible()) {
        let y = hk_map(&x, &d).unwrap();
        let r = hk_residual(&x, &y, &d);
        for t in r {
            prop_assert!(t.abs() <= 1e-11);
        }
    }

    #[test]
    fn chart_reproduces_its_anchor((x, d) in admissible()) {
        let (chart, phase) = chart_from_state(&x, &d).unwrap();
        let back = curve_point(&chart, phase.u0);
        prop_assert!(back.dist_inf(&x) <= 1e-10);
    }

    #[test]
    fn mirror_is_an_involution_preserving_the_case((x, d) in admissible()) {
        let f = conserved(&x, &d).unwrap();
        let case = classify_case(&f).unwrap();
        let m = mirror_state(&x, case);
        prop_assert_eq!(mirror_state(&m, case), x);
        let fm = conserved(&m, &d).unwrap();
        prop_assert!((fm.f1 - f.f1).abs() <= 1e-13);
        prop_assert!((fm.f3 - f.f3).abs() <= 1e-13);
    }

    #[test]
    fn square_root_squares_to_the_map((x, d) in admissible()) {
        if let Ok(once) = sqrt_map(&x, &d) {
            if let Ok(twice) = sqrt_map(&once, &d) {
                let direct = hk_map(&x, &d).unwrap();
                prop_assert!(twice.dist_inf(&direct) <= 1e-10);
            }
        }
    }

    #[test]
    fn jacobi_identities_hold(u in -10.0f64..10.0, k2 in 0.01f64..0.98) {
        let k = Modulus::from_squared(k2).unwrap();
        let t = jacobi_real(u, k);
        prop_assert!((t.sn * t.sn + t.cn * t.cn - 1.0).abs() <= 1e-12);
        prop_assert!((k2 * t.sn * t.sn + t.dn * t.dn - 1.0).abs() <= 1e-12);

        let m = jacobi_real(-u, k);
        prop_assert_eq!(m.sn, -t.sn);
        prop_assert_eq!(m.cn, t.cn);
        prop_assert_eq!(m.dn, t.dn);
    }

    #[test]
    fn arcsn_inverts_sn(s in 0.0f64..0.999, k2 in 0.01f64..0.95) {
        let k = Modulus::from_squared(k2).unwrap();
        let u = arcsn(s, k).unwrap();
        let t = jacobi_real(u, k);
        prop_assert!((t.sn - s).abs() <= 1e-10);
    }

    #[test]
    fn phase_normalization_is_idempotent(re in -50.0f64..50.0, im in -50.0f64..50.0) {
        let k = Modulus::from_squared(0.5).unwrap();
        let p = quarter_periods(k).unwrap();
        let once = ComplexPhase::normalized(Complex64::new(re, im), &p);
        let twice = ComplexPhase::normalized(once.z, &p);
        prop_assert_eq!(once, twice);
        prop_assert!(once.z.re >= 0.0 && once.z.re < 4.0 * p.real);
        prop_assert!(once.z.im >= 0.0 && once.z.im < 4.0 * p.imag);
    }
}
