//! Core evaluators for the Jacobi elliptic functions.

use num_complex::Complex64;

/// sn, cn, dn on a range-reduced nonnegative argument, 0 < k^2 < 1.
///
/// Descending Landen transformation driven by the AGM scale; the ascending
/// pass records the AGM pair, the descending pass rebuilds dn. Termination
/// when successive AGM iterates differ by less than 1e-15 relatively.
pub(super) fn sncndn(u: f64, k2: f64) -> (f64, f64, f64) {
    debug_assert!(k2 > 0.0 && k2 < 1.0);

    let mut emc = 1.0 - k2;
    let mut a = 1.0f64;
    let mut dn = 1.0f64;
    let mut em = [0.0f64; 16];
    let mut en = [0.0f64; 16];
    let mut l = 0;
    let mut c = 0.0f64;
    for i in 0..16 {
        l = i;
        em[i] = a;
        emc = emc.sqrt();
        en[i] = emc;
        c = 0.5 * (a + emc);
        if (a - emc).abs() <= 1e-15 * a {
            break;
        }
        emc *= a;
        a = c;
    }

    let phase = c * u;
    let mut sn = phase.sin();
    let mut cn = phase.cos();
    if sn != 0.0 {
        let mut aa = cn / sn;
        c *= aa;
        for i in (0..=l).rev() {
            let b = em[i];
            aa *= c;
            c *= dn;
            dn = (en[i] + aa) / (b + aa);
            aa = c / b;
        }
        let amp = 1.0 / (c * c + 1.0).sqrt();
        sn = if sn < 0.0 { -amp } else { amp };
        cn = c * sn;
    }
    (sn, cn, dn)
}

/// Complex triple from two real evaluations: the real-axis triple at modulus
/// k and the imaginary-axis triple at the complementary modulus, combined by
/// the addition theorem. `real` must evaluate the full reduced real path.
pub(super) fn combine_complex(
    rx: (f64, f64, f64),
    ry: (f64, f64, f64),
    k2: f64,
) -> (Complex64, Complex64, Complex64) {
    let (s, c, d) = rx;
    let (s1, c1, d1) = ry;
    let den = c1 * c1 + k2 * (s * s1) * (s * s1);
    let sn = Complex64::new(s * d1 / den, c * d * s1 * c1 / den);
    let cn = Complex64::new(c * c1 / den, -s * d * s1 * d1 / den);
    let dn = Complex64::new(d * c1 * d1 / den, -k2 * s * c * s1 / den);
    (sn, cn, dn)
}
