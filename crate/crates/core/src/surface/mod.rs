//! The ruled surface swept by the triangle sides of a Poncelet family.
//!
//! Facet i is the surface traced over one family period by the side
//! P_i(u)P_{i+1}(u): with Q_i(u, v) = (1−v)P_i(u) + vP_{i+1}(u), the straight
//! embedding places it in 3-space as σ(u, v) = (x, y, u) — the family
//! parameter is the third axis. The toroidal embedding instead wraps u once
//! around a circle of major radius R, identifying the u = 0 and u = 4K
//! cross-sections into a closed surface.
//!
//! Curvature comes out of two independent routes: the general
//! fundamental-form pipeline on sampled patches ([`fundamental_forms`],
//! [`curvature_numeric`]) and collapsed per-point expressions in the
//! elliptic values ([`closed_form::curvature_closed_form`]). The pipeline is
//! the ground truth; the closed form is validated against it.
//!
//! Since rulings are straight lines, g ≡ 0 and the Gaussian curvature
//! reduces to 𝒦 = −f²/(EG − F²): strictly negative wherever f ≠ 0, which
//! holds everywhere on these facets.

mod closed_form;
mod critical;

pub use closed_form::curvature_closed_form;
pub use critical::{find_critical_points, CriticalPoint, MorseType};

use alloc::vec::Vec;

use crate::confocal::ConfocalPair;
use crate::geom::{Vec2, Vec3};
use crate::math;
use crate::Error;

/// How the (u, x, y) data is placed in 3-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Embedding {
    /// σ(u, v) = (x, y, u): the family parameter is the z axis.
    Straight,
    /// (u, x, y) ↦ ((R + x)·cos θ, (R + x)·sin θ, y) with θ = 2πu/4K.
    /// R must exceed the largest |x| (R = 2a is a safe default) or the
    /// surface self-intersects.
    Toroidal { major_radius: f64 },
}

/// First- or second-form coefficient triple (E, F, G) or (e, f, g).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FormCoefficients {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

/// One grid node of a sampled patch.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SurfaceNode {
    pub position: Vec3,
    pub du: Vec3,
    pub dv: Vec3,
    pub duu: Vec3,
    pub duv: Vec3,
    pub dvv: Vec3,
    /// Unit normal du × dv / |du × dv|; filled by [`fundamental_forms`].
    pub normal: Vec3,
    /// E, F, G.
    pub first: FormCoefficients,
    /// e, f, g against the unit normal.
    pub second: FormCoefficients,
}

/// A sampled facet of the swept surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfacePatch {
    /// Facet index in 1..=3; facet i spans edge P_iP_{i+1}.
    pub facet: usize,
    pub embedding: Embedding,
    /// Number of u cells over one period.
    pub nu: usize,
    /// Number of v nodes across the ruling, v ∈ [0, 1].
    pub nv: usize,
    /// Family period 4K.
    pub u_period: f64,
    /// Node u values: nu+1 values 0..=4K for the straight embedding,
    /// nu values 0..<4K (welded) for the toroidal one.
    pub us: Vec<f64>,
    /// Node v values, nv of them, 0..=1.
    pub vs: Vec<f64>,
    /// Row-major: `nodes[iu * nv + iv]`.
    pub nodes: Vec<SurfaceNode>,
    forms_filled: bool,
}

impl SurfacePatch {
    pub fn node(&self, iu: usize, iv: usize) -> &SurfaceNode {
        &self.nodes[iu * self.nv + iv]
    }

    pub fn forms_filled(&self) -> bool {
        self.forms_filled
    }

    /// Assemble a patch directly from caller-provided nodes. Intended for
    /// fixtures and tests; [`patch`] is the production entry point.
    pub fn from_nodes(
        facet: usize,
        embedding: Embedding,
        u_period: f64,
        us: Vec<f64>,
        vs: Vec<f64>,
        nodes: Vec<SurfaceNode>,
    ) -> Self {
        assert_eq!(nodes.len(), us.len() * vs.len());
        Self {
            facet,
            embedding,
            nu: us.len().saturating_sub(1),
            nv: vs.len(),
            u_period,
            us,
            vs,
            nodes,
            forms_filled: false,
        }
    }
}

/// Scalar field sampled on the same grid as its source patch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvatureKind {
    Gaussian,
    Mean,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureField {
    pub kind: CurvatureKind,
    pub facet: usize,
    pub u_period: f64,
    /// True when the final u row duplicates u = 0 (straight grids).
    pub closes_in_u: bool,
    pub us: Vec<f64>,
    pub vs: Vec<f64>,
    /// Row-major: `values[iu * vs.len() + iv]`.
    pub values: Vec<f64>,
    pub critical_points: Vec<CriticalPoint>,
}

impl CurvatureField {
    pub fn value(&self, iu: usize, iv: usize) -> f64 {
        self.values[iu * self.vs.len() + iv]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Sample facet `facet` of the surface on an nu × nv grid with analytic
/// derivatives at every node.
///
/// `nu` counts u cells over one period (at least 8), `nv` counts v nodes
/// across the ruling (at least 2). The straight embedding keeps both ends
/// of the u interval, so its grid has nu+1 u rows; the toroidal embedding
/// welds them and has nu.
pub fn patch(
    pair: &ConfocalPair,
    facet: usize,
    nu: usize,
    nv: usize,
    embedding: Embedding,
) -> Result<SurfacePatch, Error> {
    check_facet(facet)?;
    if nu < 8 || nv < 2 {
        return Err(Error::GridTooSmall { nu, nv });
    }
    let period = pair.period();
    let u_rows = match embedding {
        Embedding::Straight => nu + 1,
        Embedding::Toroidal { .. } => nu,
    };
    let us: Vec<f64> = (0..u_rows)
        .map(|i| period * i as f64 / nu as f64)
        .collect();
    let vs: Vec<f64> = (0..nv).map(|i| i as f64 / (nv - 1) as f64).collect();

    let mut nodes = Vec::with_capacity(us.len() * vs.len());
    for &u in &us {
        let jets = facet_jets(pair, facet, u);
        for &v in &vs {
            nodes.push(build_node(&jets, u, v, period, embedding));
        }
    }
    Ok(SurfacePatch {
        facet,
        embedding,
        nu,
        nv,
        u_period: period,
        us,
        vs,
        nodes,
        forms_filled: false,
    })
}

/// Fill E, F, G, e, f, g and the unit normal at every node of the patch.
///
/// Fails with the offending (u, v) if EG − F² is not positive somewhere,
/// which would mean the parametrization stopped being an immersion.
pub fn fundamental_forms(patch: &mut SurfacePatch) -> Result<(), Error> {
    let nv = patch.nv;
    for (idx, node) in patch.nodes.iter_mut().enumerate() {
        let e_big = node.du.dot(node.du);
        let f_big = node.du.dot(node.dv);
        let g_big = node.dv.dot(node.dv);
        let n = node.du.cross(node.dv);
        if e_big * g_big - f_big * f_big <= 0.0 {
            return Err(Error::DegenerateMetric {
                u: patch.us[idx / nv],
                v: patch.vs[idx % nv],
            });
        }
        let unit = n.normalized();
        node.normal = unit;
        node.first = FormCoefficients {
            e: e_big,
            f: f_big,
            g: g_big,
        };
        node.second = FormCoefficients {
            e: node.duu.dot(unit),
            f: node.duv.dot(unit),
            g: node.dvv.dot(unit),
        };
    }
    patch.forms_filled = true;
    Ok(())
}

/// Gaussian and mean curvature fields of a patch with filled forms:
///
///   𝒦 = (eg − f²)/(EG − F²),   ℋ = (eG − 2fF + Eg)/(2(EG − F²)).
pub fn curvature_numeric(patch: &SurfacePatch) -> Result<(CurvatureField, CurvatureField), Error> {
    if !patch.forms_filled {
        return Err(Error::FormsNotFilled);
    }
    let mut gaussian = Vec::with_capacity(patch.nodes.len());
    let mut mean = Vec::with_capacity(patch.nodes.len());
    for node in &patch.nodes {
        let (big, small) = (node.first, node.second);
        let det = big.e * big.g - big.f * big.f;
        gaussian.push((small.e * small.g - small.f * small.f) / det);
        mean.push((small.e * big.g - 2.0 * small.f * big.f + big.e * small.g) / (2.0 * det));
    }
    let closes = matches!(patch.embedding, Embedding::Straight);
    let mk = |kind, values| CurvatureField {
        kind,
        facet: patch.facet,
        u_period: patch.u_period,
        closes_in_u: closes,
        us: patch.us.clone(),
        vs: patch.vs.clone(),
        values,
        critical_points: Vec::new(),
    };
    Ok((
        mk(CurvatureKind::Gaussian, gaussian),
        mk(CurvatureKind::Mean, mean),
    ))
}

/// Pointwise Gaussian and mean curvature of the straight embedding at an
/// arbitrary (u, v), through the same fundamental-form pipeline the grid
/// uses. This is the field the critical-point refinement works on.
pub fn curvature_at(pair: &ConfocalPair, facet: usize, u: f64, v: f64) -> Result<(f64, f64), Error> {
    check_facet(facet)?;
    let jets = facet_jets(pair, facet, u);
    let node = build_node(&jets, u, v, pair.period(), Embedding::Straight);
    let e_big = node.du.dot(node.du);
    let f_big = node.du.dot(node.dv);
    let g_big = node.dv.dot(node.dv);
    let det = e_big * g_big - f_big * f_big;
    if det <= 0.0 {
        return Err(Error::DegenerateMetric { u, v });
    }
    let unit = node.du.cross(node.dv).normalized();
    let e = node.duu.dot(unit);
    let f = node.duv.dot(unit);
    let g = node.dvv.dot(unit);
    Ok((
        (e * g - f * f) / det,
        (e * g_big - 2.0 * f * f_big + e_big * g) / (2.0 * det),
    ))
}

pub(crate) fn check_facet(facet: usize) -> Result<(), Error> {
    if (1..=3).contains(&facet) {
        Ok(())
    } else {
        Err(Error::InvalidFacet(facet))
    }
}

/// Position and first two u-derivatives of both boundary curves of a facet.
struct FacetJets {
    p1: (Vec2, Vec2, Vec2),
    p2: (Vec2, Vec2, Vec2),
}

fn facet_jets(pair: &ConfocalPair, facet: usize, u: f64) -> FacetJets {
    FacetJets {
        p1: pair.vertex_jet(facet, u),
        p2: pair.vertex_jet(facet + 1, u),
    }
}

fn build_node(jets: &FacetJets, u: f64, v: f64, period: f64, embedding: Embedding) -> SurfaceNode {
    let (p1, d1, dd1) = jets.p1;
    let (p2, d2, dd2) = jets.p2;
    let lerp = |a: Vec2, b: Vec2| a * (1.0 - v) + b * v;
    let q = lerp(p1, p2);
    let q_u = lerp(d1, d2);
    let q_uu = lerp(dd1, dd2);
    let q_v = p2 - p1;
    let q_uv = d2 - d1;

    match embedding {
        Embedding::Straight => SurfaceNode {
            position: Vec3::new(q.x, q.y, u),
            du: Vec3::new(q_u.x, q_u.y, 1.0),
            dv: Vec3::new(q_v.x, q_v.y, 0.0),
            duu: Vec3::new(q_uu.x, q_uu.y, 0.0),
            duv: Vec3::new(q_uv.x, q_uv.y, 0.0),
            dvv: Vec3::ZERO,
            ..SurfaceNode::default()
        },
        Embedding::Toroidal { major_radius: r } => {
            // θ advances by 2π over one period
            let rate = core::f64::consts::TAU / period;
            let theta = rate * u;
            let (st, ct) = (math::sin(theta), math::cos(theta));
            let radial = r + q.x;
            let pos = Vec3::new(radial * ct, radial * st, q.y);
            let du = Vec3::new(
                q_u.x * ct - radial * rate * st,
                q_u.x * st + radial * rate * ct,
                q_u.y,
            );
            let dv = Vec3::new(q_v.x * ct, q_v.x * st, q_v.y);
            let duu = Vec3::new(
                q_uu.x * ct - 2.0 * q_u.x * rate * st - radial * rate * rate * ct,
                q_uu.x * st + 2.0 * q_u.x * rate * ct - radial * rate * rate * st,
                q_uu.y,
            );
            let duv = Vec3::new(
                q_uv.x * ct - q_v.x * rate * st,
                q_uv.x * st + q_v.x * rate * ct,
                q_uv.y,
            );
            SurfaceNode {
                position: pos,
                du,
                dv,
                duu,
                duv,
                dvv: Vec3::ZERO,
                ..SurfaceNode::default()
            }
        }
    }
}
