//! Morse critical points of the curvature fields.
//!
//! The grid supplies seeds (local minima of the finite-difference gradient
//! magnitude, with u treated periodically); each seed is refined by a damped
//! Newton iteration on the exact pointwise field, then classified by the
//! eigenvalue signs of the finite-difference Hessian. Each curvature field
//! of a facet carries four such points per period, all on the v = 1/2
//! midline: the mean curvature alternates minimum/saddle at u-steps of K
//! starting on an isosceles configuration, and the Gaussian curvature shows
//! the complementary pattern.

use alloc::vec::Vec;

use crate::confocal::ConfocalPair;
use crate::math;
use crate::Error;

use super::{curvature_at, CurvatureField, CurvatureKind};

/// Newton step-size tolerance.
const STEP_TOL: f64 = 1e-10;
/// Maximum Newton iterations per seed.
const MAX_NEWTON: u32 = 50;
/// A refined point is converged when its FD gradient norm is below this.
const GRAD_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorseType {
    Minimum,
    Maximum,
    Saddle,
}

/// A refined critical point of a curvature field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub u: f64,
    pub v: f64,
    pub value: f64,
    pub morse_type: MorseType,
    /// Eigenvalues of the finite-difference Hessian, descending.
    pub hessian_eigs: (f64, f64),
    /// Finite-difference gradient norm after refinement.
    pub gradient_norm: f64,
    /// False when Newton stalled or left the chart; such points are kept
    /// (flagged, not dropped) so callers can report them.
    pub converged: bool,
    pub iterations: u32,
}

/// Find and classify the critical points of `field`, refining against the
/// exact pointwise curvature of `pair`, and store them on the field.
///
/// The field's grid is used for seeding only and must be at least 64 × 17.
pub fn find_critical_points(field: &mut CurvatureField, pair: &ConfocalPair) -> Result<(), Error> {
    let nv = field.vs.len();
    let n_u = field.us.len() - usize::from(field.closes_in_u);
    if n_u < 64 || nv < 17 {
        return Err(Error::GridTooSmall { nu: n_u, nv });
    }
    let period = field.u_period;
    let facet = field.facet;
    let kind = field.kind;

    let eval = |u: f64, v: f64| -> f64 {
        let (k, h) = curvature_at(pair, facet, u, v)
            .expect("straight embedding of a valid pair is an immersion");
        match kind {
            CurvatureKind::Gaussian => k,
            CurvatureKind::Mean => h,
        }
    };

    // Gradient-magnitude seeds from grid values (periodic in u, interior
    // in v).
    let value = |iu: usize, iv: usize| field.values[(iu % n_u) * nv + iv];
    let du_grid = period / n_u as f64;
    let dv_grid = field.vs[1] - field.vs[0];
    let grad_sq = |iu: usize, iv: usize| -> f64 {
        let gu = (value(iu + 1, iv) - value(iu + n_u - 1, iv)) / (2.0 * du_grid);
        let gv = (value(iu, iv + 1) - value(iu, iv - 1)) / (2.0 * dv_grid);
        gu * gu + gv * gv
    };

    let mut refined: Vec<CriticalPoint> = Vec::new();
    for iu in 0..n_u {
        for iv in 2..nv - 2 {
            let here = grad_sq(iu, iv);
            let mut is_min = true;
            for du in [n_u - 1, 0, 1] {
                for dv in [-1_isize, 0, 1] {
                    if du == 0 && dv == 0 {
                        continue;
                    }
                    let jv = (iv as isize + dv) as usize;
                    if grad_sq(iu + du, jv) < here {
                        is_min = false;
                    }
                }
            }
            if !is_min {
                continue;
            }
            let seed_u = field.us[iu];
            let seed_v = field.vs[iv];
            let point = refine(&eval, seed_u, seed_v, period);
            if let Some(point) = point {
                // Near-degenerate points scatter along their flat valley by
                // up to ~1e-2, far below the K-spacing of distinct points,
                // so a 2% merge radius is safe on both sides.
                let duplicate = refined.iter_mut().any(|p| {
                    let mut du = math::abs(p.u - point.u);
                    du = du.min(period - du);
                    let same = du < 0.02 * period && math::abs(p.v - point.v) < 0.02;
                    if same && point.gradient_norm < p.gradient_norm {
                        *p = point;
                    }
                    same
                });
                if !duplicate {
                    refined.push(point);
                }
            }
        }
    }
    refined.sort_by(|a, b| a.u.partial_cmp(&b.u).expect("finite"));
    field.critical_points = refined;
    Ok(())
}

/// Damped Newton refinement on the FD gradient of the exact field.
/// Returns None only if the iterate leaves the v-chart entirely.
fn refine<F: Fn(f64, f64) -> f64>(eval: &F, mut u: f64, mut v: f64, period: f64) -> Option<CriticalPoint> {
    let hu = 2e-6 * period;
    let hv = 2e-6;

    let grad = |u: f64, v: f64| -> (f64, f64) {
        (
            (eval(u + hu, v) - eval(u - hu, v)) / (2.0 * hu),
            (eval(u, v + hv) - eval(u, v - hv)) / (2.0 * hv),
        )
    };

    let mut iterations = 0;
    while iterations < MAX_NEWTON {
        iterations += 1;
        let (gu, gv) = grad(u, v);
        let gnorm = math::hypot(gu, gv);
        let (huu, huv, hvv) = hessian(eval, u, v, period);
        let det = huu * hvv - huv * huv;
        if det == 0.0 {
            break;
        }
        let mut step_u = -(hvv * gu - huv * gv) / det;
        let mut step_v = -(huu * gv - huv * gu) / det;

        // Damping: halve the step until the gradient norm does not grow.
        let mut accepted = false;
        for _ in 0..30 {
            let cand_u = wrap(u + step_u, period);
            let cand_v = v + step_v;
            if cand_v <= 1e-6 || cand_v >= 1.0 - 1e-6 {
                step_u *= 0.5;
                step_v *= 0.5;
                continue;
            }
            let (cgu, cgv) = grad(cand_u, cand_v);
            if math::hypot(cgu, cgv) <= gnorm {
                u = cand_u;
                v = cand_v;
                accepted = true;
                break;
            }
            step_u *= 0.5;
            step_v *= 0.5;
        }
        if !accepted || math::hypot(step_u, step_v) <= STEP_TOL {
            break;
        }
    }

    // A stall at the FD noise floor still counts as converged when the
    // gradient criterion is met; only the gradient decides.
    let (gu, gv) = grad(u, v);
    let gradient_norm = math::hypot(gu, gv);
    let converged = gradient_norm <= GRAD_TOL;

    let (huu, huv, hvv) = hessian(eval, u, v, period);
    let (lam1, lam2) = sym_eigenvalues(huu, huv, hvv);
    let morse_type = if lam1 > 0.0 && lam2 > 0.0 {
        MorseType::Minimum
    } else if lam1 < 0.0 && lam2 < 0.0 {
        MorseType::Maximum
    } else {
        MorseType::Saddle
    };
    Some(CriticalPoint {
        u,
        v,
        value: eval(u, v),
        morse_type,
        hessian_eigs: (lam1, lam2),
        gradient_norm,
        converged,
        iterations,
    })
}

fn wrap(u: f64, period: f64) -> f64 {
    u - period * math::floor(u / period)
}

/// Central second differences; h is chosen larger than the gradient step
/// since only signs and rough magnitudes are needed.
fn hessian<F: Fn(f64, f64) -> f64>(eval: &F, u: f64, v: f64, period: f64) -> (f64, f64, f64) {
    let hu = 1e-4 * period;
    let hv = 1e-4;
    let f00 = eval(u, v);
    let huu = (eval(u + hu, v) - 2.0 * f00 + eval(u - hu, v)) / (hu * hu);
    let hvv = (eval(u, v + hv) - 2.0 * f00 + eval(u, v - hv)) / (hv * hv);
    let huv = (eval(u + hu, v + hv) - eval(u + hu, v - hv) - eval(u - hu, v + hv)
        + eval(u - hu, v - hv))
        / (4.0 * hu * hv);
    (huu, huv, hvv)
}

/// Eigenvalues of the symmetric 2×2 matrix [[a, b], [b, c]], descending.
fn sym_eigenvalues(a: f64, b: f64, c: f64) -> (f64, f64) {
    let trace = a + c;
    let det = a * c - b * b;
    let disc = math::sqrt((trace * trace - 4.0 * det).max(0.0));
    (0.5 * (trace + disc), 0.5 * (trace - disc))
}
