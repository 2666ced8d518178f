//! Jacobi elliptic functions and elliptic integrals, real and complex.
//!
//! Self-contained double-precision kernels: complete integrals via the
//! arithmetic-geometric mean, function values via the descending Landen
//! transformation, inverses via the Carlson symmetric form, and complex
//! arguments via the imaginary transformation plus the addition theorem.

mod carlson;
mod jacobi;

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Elliptic modulus k in [0,1].
///
/// The complementary modulus k' = sqrt(1-k^2) is always derived on demand,
/// never stored, so the pair cannot fall out of sync. Constructors take k^2,
/// matching the quantity the dynamics produces, and keep the positive root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    k: f64,
}

impl Modulus {
    /// Build from k^2; the positive root is stored.
    pub fn from_squared(k2: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k2) {
            return Err(Error::InvalidModulus);
        }
        Ok(Modulus { k: k2.sqrt() })
    }

    pub fn k(self) -> f64 {
        self.k
    }

    pub fn k2(self) -> f64 {
        self.k * self.k
    }

    /// Complementary modulus sqrt(1-k^2).
    pub fn k_prime(self) -> f64 {
        (1.0 - self.k * self.k).sqrt()
    }

    /// Modulus of the complementary functions, as a `Modulus`.
    pub fn complementary(self) -> Self {
        Modulus {
            k: (1.0 - self.k * self.k).sqrt(),
        }
    }
}

/// Real and imaginary quarter periods K(k) and K'(k) = K(k').
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarterPeriods {
    /// Real quarter period K(k).
    pub real: f64,
    /// Imaginary quarter period K'(k); the lattice direction is i*K'.
    pub imag: f64,
}

/// A joint (sn, cn, dn) value; `T` is `f64` or `Complex64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple<T = f64> {
    pub sn: T,
    pub cn: T,
    pub dn: T,
}

/// Complete elliptic integral of the first kind via the AGM:
/// K = pi / (2 * agm(1, k')).
pub fn complete_k(k: Modulus) -> Result<f64> {
    if k.k() == 1.0 {
        return Err(Error::DivergentPeriod);
    }
    let mut a = 1.0f64;
    let mut b = k.k_prime();
    while (a - b).abs() > 1e-15 * a {
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    Ok(std::f64::consts::PI / (2.0 * a))
}

/// Both quarter periods; finite only for k strictly inside (0,1).
pub fn quarter_periods(k: Modulus) -> Result<QuarterPeriods> {
    if k.k() == 0.0 || k.k() == 1.0 {
        return Err(Error::DivergentPeriod);
    }
    Ok(QuarterPeriods {
        real: complete_k(k)?,
        imag: complete_k(k.complementary())?,
    })
}

/// sn, cn, dn of a real argument.
///
/// The argument is reduced modulo 4K into [-2K, 2K] and evaluated at its
/// absolute value, so the odd/even symmetries of sn/cn/dn hold exactly as
/// computed. Both Pythagorean identities hold to about 1e-14.
pub fn jacobi_real(u: f64, k: Modulus) -> JacobiTriple {
    let k2 = k.k2();
    if k2 == 0.0 {
        return JacobiTriple {
            sn: u.sin(),
            cn: u.cos(),
            dn: 1.0,
        };
    }
    if k2 == 1.0 {
        let sech = 1.0 / u.cosh();
        return JacobiTriple {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        };
    }

    // complete_k cannot fail for k < 1
    let kk = complete_k(k).expect("finite period for k < 1");
    let period = 4.0 * kk;
    let reduced = u - period * (u / period).round();
    let (sn_abs, cn, dn) = jacobi::sncndn(reduced.abs(), k2);
    let sn = if reduced < 0.0 { -sn_abs } else { sn_abs };
    JacobiTriple { sn, cn, dn }
}

/// sn, cn, dn of a complex argument, for k strictly inside (0,1).
///
/// Computed from two real evaluations (modulus k along the real direction,
/// complementary modulus along the imaginary one) joined by the addition
/// theorem. Arguments are reduced modulo the period lattice (4K, 4iK')
/// first; arguments within 1e-9 of the shared pole lattice iK' + 2mK + 2niK'
/// are rejected.
pub fn jacobi_complex(z: Complex64, k: Modulus) -> Result<JacobiTriple<Complex64>> {
    if k.k() <= 0.0 || k.k() >= 1.0 {
        return Err(Error::InvalidModulus);
    }
    let periods = quarter_periods(k)?;
    let (kk, kp) = (periods.real, periods.imag);

    let x = z.re - 4.0 * kk * (z.re / (4.0 * kk)).round();
    let y = z.im - 4.0 * kp * (z.im / (4.0 * kp)).round();

    let dx = x - 2.0 * kk * (x / (2.0 * kk)).round();
    let dy = (y - kp) - 2.0 * kp * ((y - kp) / (2.0 * kp)).round();
    if dx.hypot(dy) < 1e-9 {
        return Err(Error::PoleProximity);
    }

    let rx = jacobi_real(x, k);
    let ry = jacobi_real(y, k.complementary());
    let (sn, cn, dn) =
        jacobi::combine_complex((rx.sn, rx.cn, rx.dn), (ry.sn, ry.cn, ry.dn), k.k2());
    Ok(JacobiTriple { sn, cn, dn })
}

/// Inverse of sn on [0,1]: the u in [0,K] with sn(u,k) = s.
///
/// Carlson form: u = s * R_F(1-s*s, 1-k*k*s*s, 1).
pub fn arcsn(s: f64, k: Modulus) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::OutOfRange);
    }
    let s2 = s * s;
    Ok(s * carlson::rf(1.0 - s2, 1.0 - k.k2() * s2, 1.0))
}
