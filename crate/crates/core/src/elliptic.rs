//! Jacobi elliptic functions and elliptic integrals of the first kind.
//!
//! Everything is computed with the arithmetic-geometric mean (AGM) and the
//! descending Landen transformation, iterated to a relative change of 1e-15.
//! Convergence is quadratic, so the loops run for a handful of steps.
//!
//! All public entry points take the *parameter* m = k². Mathematica uses the
//! same convention; Maple expects the modulus k instead. [`EllipticModulus`]
//! holds both and is the only place conversions happen, so call sites never
//! have to remember which one a formula wants.

use crate::math;
use crate::Error;

/// Relative change at which the AGM iteration is considered converged.
const AGM_TOL: f64 = 1e-15;
/// Generous cap; the AGM needs ~8 steps for any m ≤ 1 - 1e-12.
const MAX_ITER: usize = 40;

/// Elliptic modulus k together with the parameter m = k².
///
/// Invariants: 0 ≤ k ≤ 1 and m = k² exactly as computed in f64.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus {
    k: f64,
    m: f64,
}

impl EllipticModulus {
    /// Build from the modulus k ∈ [0, 1].
    pub fn from_modulus(k: f64) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&k) {
            return Err(Error::ModulusOutOfRange(k));
        }
        Ok(Self { k, m: k * k })
    }

    /// Build from the parameter m = k² ∈ [0, 1].
    pub fn from_parameter(m: f64) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&m) {
            return Err(Error::ParameterOutOfRange(m));
        }
        Ok(Self {
            k: math::sqrt(m),
            m,
        })
    }

    /// The modulus k.
    pub fn modulus(&self) -> f64 {
        self.k
    }

    /// The parameter m = k².
    pub fn parameter(&self) -> f64 {
        self.m
    }
}

/// Simultaneous values of the three Jacobi elliptic functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiElliptic {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

fn check_parameter(m: f64) -> Result<(), Error> {
    if !(0.0..1.0).contains(&m) {
        return Err(Error::ParameterOutOfRange(m));
    }
    Ok(())
}

/// Complete elliptic integral of the first kind,
/// K(m) = ∫₀^{π/2} dθ/√(1 − m sin²θ).
///
/// AGM: K = π / (2·agm(1, √(1−m))). Relative error is at the 1e-15 level
/// for m bounded away from 1.
pub fn complete_k(m: f64) -> Result<f64, Error> {
    check_parameter(m)?;
    let mut a = 1.0;
    let mut b = math::sqrt(1.0 - m);
    for _ in 0..MAX_ITER {
        if math::abs(a - b) <= AGM_TOL * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = math::sqrt(a * b);
        a = an;
    }
    Ok(core::f64::consts::PI / (2.0 * a))
}

/// Incomplete elliptic integral of the first kind,
/// F(φ | m) = ∫₀^φ dθ/√(1 − m sin²θ), for any real φ.
///
/// The amplitude is reduced with F(φ + jπ) = F(φ) + 2jK and the remainder is
/// handled by the ascending-amplitude AGM: with a₀ = 1, b₀ = √(1−m),
///
///   φ_{n+1} = 2φ_n + atan( (b_n − a_n)·sinφ·cosφ / (a_n cos²φ + b_n sin²φ) )
///
/// and F = lim φ_n / (2ⁿ a_n). The atan argument is the tangent of
/// φ_{n+1} − 2φ_n, which always lies in (−π/2, π/2), so no branch
/// bookkeeping is needed.
pub fn incomplete_k(phi: f64, m: f64) -> Result<f64, Error> {
    check_parameter(m)?;
    if m == 0.0 {
        return Ok(phi);
    }
    let big_k = complete_k(m)?;
    // Reduce to [-π/2, π/2]; F is odd and quasi-periodic.
    let cycles = math::round(phi / core::f64::consts::PI);
    let r = phi - cycles * core::f64::consts::PI;
    let base = 2.0 * cycles * big_k;
    let (r, sign) = if r < 0.0 { (-r, -1.0) } else { (r, 1.0) };

    let mut a = 1.0;
    let mut b = math::sqrt(1.0 - m);
    let mut amp = r;
    let mut scale = 1.0;
    for _ in 0..MAX_ITER {
        if math::abs(a - b) <= AGM_TOL * a {
            break;
        }
        let s = math::sin(amp);
        let c = math::cos(amp);
        amp = 2.0 * amp + math::atan2((b - a) * s * c, a * c * c + b * s * s);
        scale *= 2.0;
        let an = 0.5 * (a + b);
        b = math::sqrt(a * b);
        a = an;
    }
    Ok(base + sign * amp / (scale * a))
}

/// Jacobi amplitude am(u | m), the inverse of [`incomplete_k`] in φ.
///
/// Computed by the descending Landen (AGM) backward recursion: φ_N =
/// 2ᴺ a_N u, then φ_{n−1} = (φ_n + asin(c_n/a_n · sin φ_n))/2 down to φ₀.
/// u is first reduced modulo 2K via am(u + 2jK) = am(u) + jπ to keep the
/// start value small.
pub fn jacobi_am(u: f64, m: f64) -> Result<f64, Error> {
    check_parameter(m)?;
    if m == 0.0 {
        return Ok(u);
    }
    let big_k = complete_k(m)?;
    let half = math::round(u / (2.0 * big_k));
    let u_r = u - 2.0 * big_k * half;

    // AGM ladder, keeping a_n and c_n = (a_{n-1} - b_{n-1})/2 for the
    // backward pass.
    let mut a_seq = [0.0_f64; MAX_ITER + 1];
    let mut c_seq = [0.0_f64; MAX_ITER + 1];
    let mut a = 1.0;
    let mut b = math::sqrt(1.0 - m);
    a_seq[0] = a;
    c_seq[0] = math::sqrt(m);
    let mut n = 0;
    while math::abs(c_seq[n]) > AGM_TOL * a_seq[n] && n < MAX_ITER {
        let an = 0.5 * (a + b);
        let cn = 0.5 * (a - b);
        b = math::sqrt(a * b);
        a = an;
        n += 1;
        a_seq[n] = a;
        c_seq[n] = cn;
    }

    let mut phi = {
        let mut p = a_seq[n] * u_r;
        for _ in 0..n {
            p *= 2.0;
        }
        p
    };
    for i in (1..=n).rev() {
        let t = (c_seq[i] / a_seq[i]) * math::sin(phi);
        phi = 0.5 * (math::asin(t) + phi);
    }
    Ok(phi + half * core::f64::consts::PI)
}

/// sn, cn, dn evaluated simultaneously: sn = sin(am), cn = cos(am),
/// dn = √(1 − m sn²).
///
/// Periods: sn and cn have period 4K, dn has period 2K.
pub fn jacobi_sn_cn_dn(u: f64, m: f64) -> Result<JacobiElliptic, Error> {
    let phi = jacobi_am(u, m)?;
    let sn = math::sin(phi);
    let cn = math::cos(phi);
    let dn = math::sqrt(1.0 - m * sn * sn);
    Ok(JacobiElliptic { sn, cn, dn })
}
