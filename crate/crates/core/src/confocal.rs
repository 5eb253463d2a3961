//! Confocal Poncelet triangle families.
//!
//! Two confocal ellipses that admit one inscribed-circumscribed triangle
//! admit a one-parameter family of them. With semi-axes (a, b) outer and
//! (a_c, b_c) caustic, the family is parametrized by Jacobi elliptic
//! functions with parameter m and quarter period K:
//!
//!   m = (a_c² − b_c²)/a_c²,   Δu = 4K/3,
//!   b = b_c / cn(Δu/2, m),    a = √(b² + a_c² − b_c²),
//!   P_i(u) = (−a·sn(u + iΔu, m),  b·cn(u + iΔu, m)),   i = 1, 2, 3.
//!
//! One step of the Poncelet map is a shift of u by Δu, which is what makes
//! this parametrization homogeneous: all three vertices trace the same
//! angular-position curve, delayed by one third of the period.
//!
//! At u = 0 the triangle is isosceles with its apex P₃ on the top vertex
//! (0, b) of the outer ellipse; the four isosceles configurations of the
//! family occur at u = 0, K, 2K, 3K (apex on top, right, bottom, left).

use alloc::vec::Vec;

use crate::elliptic::{complete_k, jacobi_sn_cn_dn};
use crate::geom::Vec2;
use crate::math;
use crate::Error;

/// Number of sides of the closed orbit.
pub const SIDES: usize = 3;
/// Turning number of the orbit around the center.
pub const TURNING: usize = 1;

/// A confocal ellipse pair admitting a 3-periodic Poncelet family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfocalPair {
    outer_a: f64,
    outer_b: f64,
    caustic_a: f64,
    caustic_b: f64,
    m: f64,
    quarter_period: f64,
}

/// The triangle of the family at one value of the parameter u.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleState {
    /// Family parameter, wrapped to [0, 4K).
    pub u: f64,
    /// Vertices P₁, P₂, P₃ on the outer ellipse.
    pub vertices: [Vec2; 3],
    /// Contact points Q₁, Q₂, Q₃ of sides P₁P₂, P₂P₃, P₃P₁ with the caustic.
    pub contacts: [Vec2; 3],
    /// Side lengths |P₁P₂|, |P₂P₃|, |P₃P₁|.
    pub sides: [f64; 3],
    pub perimeter: f64,
}

/// Classical triangle centers used for the center space curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleCenter {
    /// X₁ in Kimberling's notation.
    Incenter,
    /// X₂ (centroid).
    Barycenter,
}

/// Worst-case deviations of the billiard invariants over a sweep of the
/// family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BilliardInvariants {
    pub samples: usize,
    pub perimeter_mean: f64,
    /// (max − min) / mean of the perimeter.
    pub perimeter_spread: f64,
    /// Largest |incidence angle − reflection angle| at any vertex, radians.
    pub reflection_max_dev: f64,
    pub cosine_sum_mean: f64,
    /// max − min of Σ cos(internal angles).
    pub cosine_sum_spread: f64,
}

/// One row of the angular-position table: the arguments t_i of
/// P_i = (a cos t_i, b sin t_i), unwrapped continuously in u.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularSample {
    pub u: f64,
    pub t: [f64; 3],
}

impl ConfocalPair {
    /// Build the pair from the caustic semi-axes. This is the direction the
    /// construction above works in, so it needs no root-finding.
    pub fn from_caustic(caustic_a: f64, caustic_b: f64) -> Result<Self, Error> {
        if !(caustic_a > caustic_b && caustic_b > 0.0) {
            return Err(Error::InvalidAxes {
                a: caustic_a,
                b: caustic_b,
            });
        }
        let m = (caustic_a * caustic_a - caustic_b * caustic_b) / (caustic_a * caustic_a);
        let quarter_period = complete_k(m)?;
        let du = 4.0 * quarter_period / SIDES as f64;
        let cn_half = jacobi_sn_cn_dn(0.5 * du, m)?.cn;
        let outer_b = caustic_b / cn_half;
        let outer_a =
            math::sqrt(outer_b * outer_b + caustic_a * caustic_a - caustic_b * caustic_b);
        Ok(Self {
            outer_a,
            outer_b,
            caustic_a,
            caustic_b,
            m,
            quarter_period,
        })
    }

    /// Build the pair from the outer semi-axes by solving for the caustic.
    ///
    /// The construction scales linearly, so only the caustic aspect ratio
    /// b_c/a_c is unknown; it is found by bisection on the outer aspect
    /// ratio, which is monotone in it.
    pub fn from_outer(outer_a: f64, outer_b: f64) -> Result<Self, Error> {
        if !(outer_a > outer_b && outer_b > 0.0) {
            return Err(Error::InvalidAxes {
                a: outer_a,
                b: outer_b,
            });
        }
        let target = outer_b / outer_a;
        let aspect = |rho: f64| -> Result<f64, Error> {
            let p = Self::from_caustic(1.0, rho)?;
            Ok(p.outer_b / p.outer_a)
        };
        let (mut lo, mut hi) = (1e-8, 1.0 - 1e-12);
        let f_lo = aspect(lo)? - target;
        let f_hi = aspect(hi)? - target;
        if f_lo * f_hi > 0.0 {
            return Err(Error::RootNotBracketed { lo, hi });
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let f_mid = aspect(mid)? - target;
            if f_mid * f_lo <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= f64::EPSILON * hi {
                break;
            }
        }
        let rho = 0.5 * (lo + hi);
        let unit = Self::from_caustic(1.0, rho)?;
        let scale = outer_a / unit.outer_a;
        Self::from_caustic(scale, scale * rho)
    }

    pub fn outer_semi_axes(&self) -> (f64, f64) {
        (self.outer_a, self.outer_b)
    }

    pub fn caustic_semi_axes(&self) -> (f64, f64) {
        (self.caustic_a, self.caustic_b)
    }

    /// Elliptic parameter m = k².
    pub fn parameter(&self) -> f64 {
        self.m
    }

    /// Quarter period K(m).
    pub fn quarter_period(&self) -> f64 {
        self.quarter_period
    }

    /// Full period 4K of the family parameter.
    pub fn period(&self) -> f64 {
        4.0 * self.quarter_period
    }

    /// Parameter shift Δu = 4K/3 of one Poncelet step.
    pub fn vertex_spacing(&self) -> f64 {
        self.period() / SIDES as f64
    }

    /// Vertex P_i(u) for i ∈ 1..=3.
    pub fn vertex(&self, index: usize, u: f64) -> Vec2 {
        let arg = u + index as f64 * self.vertex_spacing();
        let j = jacobi_sn_cn_dn(arg, self.m).expect("parameter is valid by construction");
        Vec2::new(-self.outer_a * j.sn, self.outer_b * j.cn)
    }

    /// Position and first two u-derivatives of the vertex curve P_i.
    ///
    /// Uses sn′ = cn·dn, cn′ = −sn·dn and the derived second derivatives;
    /// this is what the surface module builds its analytic tangents from.
    pub fn vertex_jet(&self, index: usize, u: f64) -> (Vec2, Vec2, Vec2) {
        let m = self.m;
        let arg = u + index as f64 * self.vertex_spacing();
        let j = jacobi_sn_cn_dn(arg, m).expect("parameter is valid by construction");
        let (sn, cn, dn) = (j.sn, j.cn, j.dn);
        let pos = Vec2::new(-self.outer_a * sn, self.outer_b * cn);
        let d1 = Vec2::new(-self.outer_a * cn * dn, -self.outer_b * sn * dn);
        // sn'' = -sn (dn² + m cn²),  cn'' = cn (m sn² - dn²)
        let d2 = Vec2::new(
            self.outer_a * sn * (dn * dn + m * cn * cn),
            self.outer_b * cn * (m * sn * sn - dn * dn),
        );
        (pos, d1, d2)
    }

    /// The family triangle at parameter u (wrapped modulo 4K).
    pub fn triangle_at(&self, u: f64) -> TriangleState {
        let period = self.period();
        let u_wrapped = u - period * math::floor(u / period);
        let vertices = [
            self.vertex(1, u_wrapped),
            self.vertex(2, u_wrapped),
            self.vertex(3, u_wrapped),
        ];
        let mut contacts = [Vec2::default(); 3];
        let mut sides = [0.0; 3];
        for i in 0..3 {
            let p = vertices[i];
            let q = vertices[(i + 1) % 3];
            contacts[i] = self.contact_point(p, q);
            sides[i] = p.distance(q);
        }
        TriangleState {
            u: u_wrapped,
            vertices,
            contacts,
            sides,
            perimeter: sides[0] + sides[1] + sides[2],
        }
    }

    /// Tangency point of the chord through p and q with the caustic, by the
    /// pole-polar relation: writing the line as ux + vy = 1, the tangent
    /// touches x²/a_c² + y²/b_c² = 1 at (a_c²·u, b_c²·v).
    fn contact_point(&self, p: Vec2, q: Vec2) -> Vec2 {
        let det = p.cross(q);
        let lu = (q.y - p.y) / det;
        let lv = (p.x - q.x) / det;
        Vec2::new(
            self.caustic_a * self.caustic_a * lu,
            self.caustic_b * self.caustic_b * lv,
        )
    }

    /// Outward unit normal of the outer ellipse at a boundary point.
    pub fn outer_normal(&self, p: Vec2) -> Vec2 {
        Vec2::new(
            p.x / (self.outer_a * self.outer_a),
            p.y / (self.outer_b * self.outer_b),
        )
        .normalized()
    }

    /// Sweep the family and report the worst deviation of the three
    /// billiard invariants: the reflection law at every vertex, the
    /// perimeter, and the sum of internal-angle cosines.
    pub fn billiard_invariants(&self, samples: usize) -> BilliardInvariants {
        let samples = samples.max(2);
        let period = self.period();
        let mut perim_min = f64::INFINITY;
        let mut perim_max = f64::NEG_INFINITY;
        let mut perim_sum = 0.0;
        let mut cos_min = f64::INFINITY;
        let mut cos_max = f64::NEG_INFINITY;
        let mut cos_sum = 0.0;
        let mut refl_max: f64 = 0.0;

        for s in 0..samples {
            let u = period * s as f64 / samples as f64;
            let tri = self.triangle_at(u);
            perim_min = perim_min.min(tri.perimeter);
            perim_max = perim_max.max(tri.perimeter);
            perim_sum += tri.perimeter;

            let mut cos_total = 0.0;
            for i in 0..3 {
                let at = tri.vertices[i];
                let prev = tri.vertices[(i + 2) % 3];
                let next = tri.vertices[(i + 1) % 3];
                let to_prev = (prev - at).normalized();
                let to_next = (next - at).normalized();
                cos_total += to_prev.dot(to_next);

                let n = self.outer_normal(at);
                let dev = math::abs(math::acos(to_prev.dot(-n)) - math::acos(to_next.dot(-n)));
                refl_max = refl_max.max(dev);
            }
            cos_min = cos_min.min(cos_total);
            cos_max = cos_max.max(cos_total);
            cos_sum += cos_total;
        }

        let perimeter_mean = perim_sum / samples as f64;
        BilliardInvariants {
            samples,
            perimeter_mean,
            perimeter_spread: (perim_max - perim_min) / perimeter_mean,
            reflection_max_dev: refl_max,
            cosine_sum_mean: cos_sum / samples as f64,
            cosine_sum_spread: cos_max - cos_min,
        }
    }

    /// Angular positions t_i of the three vertices, P_i = (a cos t_i,
    /// b sin t_i), continuously unwrapped along the grid. The grid must be
    /// fine enough that consecutive angles differ by less than π.
    pub fn angular_positions(&self, u_grid: &[f64]) -> Vec<AngularSample> {
        let mut out = Vec::with_capacity(u_grid.len());
        let mut prev: Option<[f64; 3]> = None;
        for &u in u_grid {
            let mut t = [0.0; 3];
            for i in 0..3 {
                let p = self.vertex(i + 1, u);
                let raw = math::atan2(p.y / self.outer_b, p.x / self.outer_a);
                t[i] = match prev {
                    None => raw,
                    Some(prev_t) => {
                        // wrap the increment to [-π, π] to keep t continuous
                        let mut delta = raw - prev_t[i];
                        delta -= 2.0
                            * core::f64::consts::PI
                            * math::round(delta / (2.0 * core::f64::consts::PI));
                        prev_t[i] + delta
                    }
                };
            }
            prev = Some(t);
            out.push(AngularSample { u, t });
        }
        out
    }
}

impl TriangleState {
    /// A classical triangle center of this state.
    pub fn center(&self, which: TriangleCenter) -> Vec2 {
        match which {
            TriangleCenter::Barycenter => {
                (self.vertices[0] + self.vertices[1] + self.vertices[2]) / 3.0
            }
            TriangleCenter::Incenter => {
                incenter(self.vertices[0], self.vertices[1], self.vertices[2])
            }
        }
    }
}

/// Incenter as the side-length-weighted vertex average,
/// (|s₁|P₁ + |s₂|P₂ + |s₃|P₃)/perimeter with s_i opposite P_i.
pub fn incenter(p1: Vec2, p2: Vec2, p3: Vec2) -> Vec2 {
    let s1 = p2.distance(p3);
    let s2 = p3.distance(p1);
    let s3 = p1.distance(p2);
    (p1 * s1 + p2 * s2 + p3 * s3) / (s1 + s2 + s3)
}

/// Barycenter (centroid) of three points.
pub fn barycenter(p1: Vec2, p2: Vec2, p3: Vec2) -> Vec2 {
    (p1 + p2 + p3) / 3.0
}
