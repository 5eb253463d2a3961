//! Space curves on the endpoint-identified sweep surface and their link
//! invariants.
//!
//! Identifying the u = 0 and u = 4K cross-sections (the toroidal embedding
//! does this geometrically), every point that rides along with the family —
//! a vertex, a caustic contact point, a triangle center — sweeps a closed
//! space curve. The three contact rings form a 3-link of Hopf rings: every
//! pair has linking number ±1, so removing one ring leaves the other two
//! still linked, unlike the Borromean rings whose pairs are unlinked. The
//! three vertex rings sweep the same tangle, and the incenter/barycenter
//! rings twist three times about each other.
//!
//! Linking numbers come from the Gauss double integral discretized as a
//! double sum over segment midpoints,
//!
//!   lk ≈ (1/4π) Σᵢ Σⱼ ⟨tᵢ × tⱼ, rᵢⱼ⟩ / |rᵢⱼ|³,
//!
//! which converges at O(1/n²) for disjoint smooth curves; the distance of
//! the raw sum to the nearest integer is reported as a quality residual.

use alloc::vec;
use alloc::vec::Vec;

use crate::confocal::{ConfocalPair, TriangleCenter};
use crate::geom::Vec3;
use crate::math;
use crate::Error;

/// Default residual above which an integer linking number is not trusted.
pub const RESIDUAL_TRUST_THRESHOLD: f64 = 0.05;

/// Which family point generates a swept curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveLabel {
    /// Vertex P_i, i ∈ 1..=3.
    Vertex(usize),
    /// Contact point Q_i of side P_iP_{i+1} with the caustic, i ∈ 1..=3.
    Contact(usize),
    /// Incenter locus X₁.
    Incenter,
    /// Barycenter locus X₂.
    Barycenter,
}

/// A closed polyline in 3-space; the last point connects back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceCurve {
    pub label: CurveLabel,
    pub points: Vec<Vec3>,
}

/// Linking number of one curve pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkingNumber {
    /// Nearest integer to the Gauss sum.
    pub lk: i64,
    /// Raw value of the discretized Gauss integral.
    pub raw: f64,
    /// |raw − lk|.
    pub residual: f64,
}

/// Tangle classification of a curve set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TangleClass {
    /// Three curves, every pair linked once.
    Hopf3Link,
    /// Three pairwise-unlinked curves known (by construction) to be
    /// nontrivially arranged.
    BorromeanLike,
    Other,
}

/// Pairwise linking matrix of a set of curves.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkReport {
    pub labels: Vec<CurveLabel>,
    /// Symmetric integer matrix with zero diagonal.
    pub matrix: Vec<Vec<i64>>,
    pub raw: Vec<Vec<f64>>,
    pub residuals: Vec<Vec<f64>>,
    pub max_residual: f64,
    /// All residuals at or below the trust threshold.
    pub reliable: bool,
    /// None when the report is unreliable.
    pub classification: Option<TangleClass>,
}

impl SpaceCurve {
    /// Same curve, opposite orientation. Linking numbers negate.
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Self {
            label: self.label,
            points,
        }
    }

    fn extent(&self) -> f64 {
        self.points
            .iter()
            .fold(0.0_f64, |acc, p| acc.max(p.norm()))
    }
}

/// Sweep the labelled family point over one period and close it up on the
/// torus of the given major radius. At least 64 samples are required.
pub fn sweep_curve(
    pair: &ConfocalPair,
    label: CurveLabel,
    samples: usize,
    major_radius: f64,
) -> Result<SpaceCurve, Error> {
    if samples < 64 {
        return Err(Error::TooFewSamples {
            got: samples,
            min: 64,
        });
    }
    if let CurveLabel::Vertex(i) | CurveLabel::Contact(i) = label {
        if !(1..=3).contains(&i) {
            return Err(Error::InvalidFacet(i));
        }
    }
    let period = pair.period();
    let rate = core::f64::consts::TAU / period;
    let mut points = Vec::with_capacity(samples);
    for s in 0..samples {
        let u = period * s as f64 / samples as f64;
        let tri = pair.triangle_at(u);
        let p = match label {
            CurveLabel::Vertex(i) => tri.vertices[i - 1],
            CurveLabel::Contact(i) => tri.contacts[i - 1],
            CurveLabel::Incenter => tri.center(TriangleCenter::Incenter),
            CurveLabel::Barycenter => tri.center(TriangleCenter::Barycenter),
        };
        let theta = rate * u;
        let radial = major_radius + p.x;
        points.push(Vec3::new(
            radial * math::cos(theta),
            radial * math::sin(theta),
            p.y,
        ));
    }
    Ok(SpaceCurve { label, points })
}

/// Gauss linking number of two closed, disjoint curves.
///
/// The curves must stay farther apart than 1e-6 times their extent or the
/// discretized kernel cannot be trusted; resample more finely or change the
/// major radius in that case.
pub fn linking_number(c1: &SpaceCurve, c2: &SpaceCurve) -> Result<LinkingNumber, Error> {
    validate_curve(c1)?;
    validate_curve(c2)?;
    let scale = c1.extent().max(c2.extent());
    let required = 1e-6 * scale;
    let min_distance = min_point_distance(c1, c2);
    if min_distance <= required {
        return Err(Error::CurvesTooClose {
            min_distance,
            required,
        });
    }

    let (mid1, tan1) = midpoints_tangents(c1);
    let (mid2, tan2) = midpoints_tangents(c2);
    let mut sum = 0.0;
    for (m1, t1) in mid1.iter().zip(&tan1) {
        for (m2, t2) in mid2.iter().zip(&tan2) {
            let r = *m2 - *m1;
            let dist = r.norm();
            sum += t1.cross(*t2).dot(r) / (dist * dist * dist);
        }
    }
    let raw = sum / (4.0 * core::f64::consts::PI);
    let lk = math::round(raw) as i64;
    Ok(LinkingNumber {
        lk,
        raw,
        residual: math::abs(raw - lk as f64),
    })
}

/// Full pairwise linking matrix with the default trust threshold.
///
/// `nontrivially_arranged` is a construction-time promise used only to
/// distinguish a Borromean-like set from three far-apart rings when every
/// pairwise number is zero.
pub fn tangle_report(
    curves: &[SpaceCurve],
    nontrivially_arranged: bool,
) -> Result<LinkReport, Error> {
    tangle_report_with(curves, nontrivially_arranged, RESIDUAL_TRUST_THRESHOLD)
}

/// [`tangle_report`] with an explicit residual trust threshold.
pub fn tangle_report_with(
    curves: &[SpaceCurve],
    nontrivially_arranged: bool,
    residual_threshold: f64,
) -> Result<LinkReport, Error> {
    let n = curves.len();
    let mut matrix = vec![vec![0_i64; n]; n];
    let mut raw = vec![vec![0.0_f64; n]; n];
    let mut residuals = vec![vec![0.0_f64; n]; n];
    let mut max_residual = 0.0_f64;
    for i in 0..n {
        for j in i + 1..n {
            let link = linking_number(&curves[i], &curves[j])?;
            matrix[i][j] = link.lk;
            matrix[j][i] = link.lk;
            raw[i][j] = link.raw;
            raw[j][i] = link.raw;
            residuals[i][j] = link.residual;
            residuals[j][i] = link.residual;
            max_residual = max_residual.max(link.residual);
        }
    }
    let reliable = max_residual <= residual_threshold;
    let classification = if !reliable {
        None
    } else if n == 3 {
        let pairwise = [matrix[0][1], matrix[0][2], matrix[1][2]];
        if pairwise.iter().all(|&lk| lk.abs() == 1) {
            Some(TangleClass::Hopf3Link)
        } else if pairwise.iter().all(|&lk| lk == 0) && nontrivially_arranged {
            Some(TangleClass::BorromeanLike)
        } else {
            Some(TangleClass::Other)
        }
    } else {
        Some(TangleClass::Other)
    };
    Ok(LinkReport {
        labels: curves.iter().map(|c| c.label).collect(),
        matrix,
        raw,
        residuals,
        max_residual,
        reliable,
        classification,
    })
}

fn validate_curve(c: &SpaceCurve) -> Result<(), Error> {
    if c.points.len() < 3 {
        return Err(Error::DegenerateCurve);
    }
    let n = c.points.len();
    for i in 0..n {
        if c.points[i].distance(c.points[(i + 1) % n]) == 0.0 {
            return Err(Error::DegenerateCurve);
        }
    }
    Ok(())
}

fn min_point_distance(c1: &SpaceCurve, c2: &SpaceCurve) -> f64 {
    let mut min = f64::INFINITY;
    for p in &c1.points {
        for q in &c2.points {
            min = min.min(p.distance(*q));
        }
    }
    min
}

fn midpoints_tangents(c: &SpaceCurve) -> (Vec<Vec3>, Vec<Vec3>) {
    let n = c.points.len();
    let mut mids = Vec::with_capacity(n);
    let mut tans = Vec::with_capacity(n);
    for i in 0..n {
        let p = c.points[i];
        let q = c.points[(i + 1) % n];
        mids.push((p + q) * 0.5);
        tans.push(q - p);
    }
    (mids, tans)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(center: Vec3, normal_axis: usize, radius: f64, n: usize) -> SpaceCurve {
        let mut points = Vec::with_capacity(n);
        for i in 0..n {
            let t = core::f64::consts::TAU * i as f64 / n as f64;
            let (c, s) = (t.cos() * radius, t.sin() * radius);
            let p = match normal_axis {
                2 => Vec3::new(c, s, 0.0),  // xy-plane circle
                1 => Vec3::new(c, 0.0, s),  // xz-plane circle
                _ => Vec3::new(0.0, c, s),
            };
            points.push(center + p);
        }
        SpaceCurve {
            label: CurveLabel::Vertex(1),
            points,
        }
    }

    #[test]
    fn hopf_circles_link_once() {
        // xy-plane unit circle at the origin; xz-plane unit circle through
        // its center: the canonical Hopf link.
        let c1 = circle(Vec3::ZERO, 2, 1.0, 512);
        let c2 = circle(Vec3::new(1.0, 0.0, 0.0), 1, 1.0, 512);
        let link = linking_number(&c1, &c2).unwrap();
        assert_eq!(link.lk.abs(), 1);
        assert!(link.residual <= 1e-3, "residual {}", link.residual);
    }

    #[test]
    fn distant_circles_are_unlinked() {
        let c1 = circle(Vec3::ZERO, 2, 1.0, 256);
        let c2 = circle(Vec3::new(10.0, 0.0, 0.0), 2, 1.0, 256);
        let link = linking_number(&c1, &c2).unwrap();
        assert_eq!(link.lk, 0);
        assert!(link.raw.abs() < 1e-3);
    }

    #[test]
    fn reversal_negates_linking_number() {
        let c1 = circle(Vec3::ZERO, 2, 1.0, 256);
        let c2 = circle(Vec3::new(1.0, 0.0, 0.0), 1, 1.0, 256);
        let forward = linking_number(&c1, &c2).unwrap();
        let backward = linking_number(&c1, &c2.reversed()).unwrap();
        assert_eq!(forward.lk, -backward.lk);
        assert!((forward.raw + backward.raw).abs() < 1e-12);
    }

    #[test]
    fn linking_is_symmetric() {
        let c1 = circle(Vec3::ZERO, 2, 1.0, 200);
        let c2 = circle(Vec3::new(1.0, 0.0, 0.0), 1, 1.0, 200);
        let a = linking_number(&c1, &c2).unwrap();
        let b = linking_number(&c2, &c1).unwrap();
        assert_eq!(a.lk, b.lk);
        assert!((a.raw - b.raw).abs() < 1e-12);
    }

    #[test]
    fn touching_curves_are_rejected() {
        let c1 = circle(Vec3::ZERO, 2, 1.0, 128);
        let c2 = circle(Vec3::new(1e-9, 0.0, 0.0), 2, 1.0, 128);
        assert!(matches!(
            linking_number(&c1, &c2),
            Err(Error::CurvesTooClose { .. })
        ));
    }

    #[test]
    fn degenerate_curves_are_rejected() {
        let c = SpaceCurve {
            label: CurveLabel::Incenter,
            points: alloc::vec![Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0)],
        };
        let ok = circle(Vec3::ZERO, 2, 1.0, 64);
        assert!(matches!(linking_number(&c, &ok), Err(Error::DegenerateCurve)));
    }

    #[test]
    fn sweep_requires_enough_samples() {
        let pair = ConfocalPair::from_caustic(1.0, 0.5).unwrap();
        assert!(sweep_curve(&pair, CurveLabel::Incenter, 32, 3.0).is_err());
        assert!(sweep_curve(&pair, CurveLabel::Vertex(5), 128, 3.0).is_err());
    }

    #[test]
    fn swept_vertex_curve_closes() {
        let pair = ConfocalPair::from_caustic(1.0, 0.5).unwrap();
        let (a, _) = pair.outer_semi_axes();
        let curve = sweep_curve(&pair, CurveLabel::Vertex(1), 256, 2.0 * a).unwrap();
        // first and last sample are one step apart on a closed loop
        let gap = curve.points[0].distance(curve.points[255]);
        let step = curve.points[0].distance(curve.points[1]);
        assert!(gap < 3.0 * step);
    }
}
