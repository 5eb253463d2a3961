//! Two independent curvature routes held against each other, classical
//! fixtures for the fundamental-form pipeline, and the Morse critical-point
//! pattern of the curvature fields.

mod common;

use common::TestRng;
use poncelet_core::confocal::ConfocalPair;
use poncelet_core::elliptic::jacobi_sn_cn_dn;
use poncelet_core::geom::Vec3;
use poncelet_core::surface::{
    curvature_at, curvature_closed_form, curvature_numeric, find_critical_points,
    fundamental_forms, patch, CurvatureField, Embedding, MorseType, SurfaceNode, SurfacePatch,
};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-12)
}

fn reference_pair() -> ConfocalPair {
    ConfocalPair::from_caustic(1.0, 0.5).unwrap()
}

#[test]
fn analytic_derivatives_match_position_differences() {
    let pair = reference_pair();
    let h = 1e-6;
    for embedding in [
        Embedding::Straight,
        Embedding::Toroidal { major_radius: 3.2 },
    ] {
        let p = patch(&pair, 1, 24, 5, embedding).unwrap();
        let probe = |u: f64, v: f64| -> Vec3 { position_at(&pair, 1, u, v, embedding) };
        for iu in (0..p.us.len()).step_by(5) {
            for iv in 0..p.vs.len() {
                let (u, v) = (p.us[iu], p.vs[iv]);
                let node = p.node(iu, iv);
                let fd_u = (probe(u + h, v) - probe(u - h, v)) / (2.0 * h);
                let fd_v = (probe(u, v + h) - probe(u, v - h)) / (2.0 * h);
                for (got, want) in [
                    (node.du.x, fd_u.x),
                    (node.du.y, fd_u.y),
                    (node.du.z, fd_u.z),
                    (node.dv.x, fd_v.x),
                    (node.dv.y, fd_v.y),
                    (node.dv.z, fd_v.z),
                ] {
                    assert!(
                        (got - want).abs() / want.abs().max(1.0) <= 1e-6,
                        "derivative mismatch at u={u}, v={v}: {got} vs {want}"
                    );
                }
            }
        }
    }
}

/// Independent position evaluator for finite-difference probing: only the
/// vertex positions and the embedding map, no derivative machinery.
fn position_at(
    pair: &ConfocalPair,
    facet: usize,
    u: f64,
    v: f64,
    embedding: Embedding,
) -> Vec3 {
    let p1 = pair.vertex(facet, u);
    let p2 = pair.vertex(facet + 1, u);
    let q = p1 * (1.0 - v) + p2 * v;
    match embedding {
        Embedding::Straight => Vec3::new(q.x, q.y, u),
        Embedding::Toroidal { major_radius } => {
            let theta = core::f64::consts::TAU * u / pair.period();
            Vec3::new(
                (major_radius + q.x) * theta.cos(),
                (major_radius + q.x) * theta.sin(),
                q.y,
            )
        }
    }
}

#[test]
fn straight_patch_first_row_is_the_vertex_curve() {
    let pair = reference_pair();
    let p = patch(&pair, 2, 32, 5, Embedding::Straight).unwrap();
    for iu in 0..p.us.len() {
        let u = p.us[iu];
        let vertex = pair.vertex(2, u);
        let node = p.node(iu, 0);
        assert!((node.position.x - vertex.x).abs() < 1e-14);
        assert!((node.position.y - vertex.y).abs() < 1e-14);
        assert!((node.position.z - u).abs() < 1e-14);
    }
}

#[test]
fn straight_patch_closes_in_u() {
    let pair = reference_pair();
    let p = patch(&pair, 1, 64, 9, Embedding::Straight).unwrap();
    let last = p.us.len() - 1;
    for iv in 0..p.vs.len() {
        let a = p.node(0, iv).position;
        let b = p.node(last, iv).position;
        assert!((a.x - b.x).abs() <= 1e-11 && (a.y - b.y).abs() <= 1e-11);
    }
}

#[test]
fn ruling_second_form_coefficient_vanishes() {
    let pair = reference_pair();
    for facet in 1..=3 {
        let mut p = patch(&pair, facet, 48, 9, Embedding::Straight).unwrap();
        fundamental_forms(&mut p).unwrap();
        for node in &p.nodes {
            assert!(node.second.g.abs() <= 1e-10, "g = {}", node.second.g);
            // normal is unit and orthogonal to both tangents
            assert!((node.normal.norm() - 1.0).abs() <= 1e-12);
            assert!(node.normal.dot(node.du).abs() <= 1e-10 * node.du.norm());
            assert!(node.normal.dot(node.dv).abs() <= 1e-10 * node.dv.norm());
        }
    }
}

#[test]
fn first_form_at_origin_row() {
    // E at (u=0, v=0) is |dP1/du|² + 1: the straight embedding adds the
    // z-component of σ_u.
    let pair = reference_pair();
    let mut p = patch(&pair, 1, 32, 5, Embedding::Straight).unwrap();
    fundamental_forms(&mut p).unwrap();
    let (_, d1, _) = pair.vertex_jet(1, 0.0);
    let expected = d1.norm_squared() + 1.0;
    assert!(rel(p.node(0, 0).first.e, expected) <= 1e-12);
}

fn planar_strip() -> SurfacePatch {
    // σ(u, v) = (u, 2v − 1, u): a ruled strip inside the plane x = z.
    let us: Vec<f64> = (0..16).map(|i| i as f64 / 2.0).collect();
    let vs: Vec<f64> = (0..5).map(|i| i as f64 / 4.0).collect();
    let mut nodes = Vec::new();
    for &u in &us {
        for &v in &vs {
            nodes.push(SurfaceNode {
                position: Vec3::new(u, 2.0 * v - 1.0, u),
                du: Vec3::new(1.0, 0.0, 1.0),
                dv: Vec3::new(0.0, 2.0, 0.0),
                duu: Vec3::ZERO,
                duv: Vec3::ZERO,
                dvv: Vec3::ZERO,
                ..SurfaceNode::default()
            });
        }
    }
    SurfacePatch::from_nodes(1, Embedding::Straight, 8.0, us, vs, nodes)
}

#[test]
fn planar_strip_has_zero_curvature() {
    let mut p = planar_strip();
    fundamental_forms(&mut p).unwrap();
    for node in &p.nodes {
        assert_eq!(node.second.e, 0.0);
        assert_eq!(node.second.f, 0.0);
        assert_eq!(node.second.g, 0.0);
    }
    let (gauss, mean) = curvature_numeric(&p).unwrap();
    assert!(gauss.values.iter().all(|&k| k == 0.0));
    assert!(mean.values.iter().all(|&h| h == 0.0));
}

fn cylinder(radius: f64, height: f64) -> SurfacePatch {
    // σ(u, v) = (r cos u, r sin u, h v): rulings along the axis.
    let n = 24;
    let us: Vec<f64> = (0..n)
        .map(|i| core::f64::consts::TAU * i as f64 / n as f64)
        .collect();
    let vs: Vec<f64> = (0..5).map(|i| i as f64 / 4.0).collect();
    let mut nodes = Vec::new();
    for &u in &us {
        for &_v in &vs {
            nodes.push(SurfaceNode {
                position: Vec3::new(radius * u.cos(), radius * u.sin(), height * _v),
                du: Vec3::new(-radius * u.sin(), radius * u.cos(), 0.0),
                dv: Vec3::new(0.0, 0.0, height),
                duu: Vec3::new(-radius * u.cos(), -radius * u.sin(), 0.0),
                duv: Vec3::ZERO,
                dvv: Vec3::ZERO,
                ..SurfaceNode::default()
            });
        }
    }
    SurfacePatch::from_nodes(
        1,
        Embedding::Toroidal { major_radius: 0.0 },
        core::f64::consts::TAU,
        us,
        vs,
        nodes,
    )
}

#[test]
fn cylinder_fixture_curvatures() {
    let r = 1.7;
    let mut p = cylinder(r, 2.0);
    fundamental_forms(&mut p).unwrap();
    let (gauss, mean) = curvature_numeric(&p).unwrap();
    for &k in &gauss.values {
        assert!(k.abs() <= 1e-13, "cylinder K = {k}");
    }
    // with N = σu × σv the normal points outward, so H = −1/(2r)
    for &h in &mean.values {
        assert!((h + 1.0 / (2.0 * r)).abs() <= 1e-12, "cylinder H = {h}");
    }
}

#[test]
fn gaussian_curvature_is_negative_everywhere() {
    for &bc in &[0.3, 0.5, 0.8] {
        let pair = ConfocalPair::from_caustic(1.0, bc).unwrap();
        for facet in 1..=3 {
            let mut p = patch(&pair, facet, 128, 33, Embedding::Straight).unwrap();
            fundamental_forms(&mut p).unwrap();
            let (gauss, _) = curvature_numeric(&p).unwrap();
            let max = gauss.max();
            assert!(max < 0.0, "bc={bc}, facet {facet}: max K = {max}");
        }
    }
}

#[test]
fn closed_form_matches_numeric_pipeline() {
    let pair = reference_pair();
    let mut rng = TestRng::new(42);
    let mut worst_k = 0.0_f64;
    let mut worst_h = 0.0_f64;
    for _ in 0..1000 {
        let facet = 1 + (rng.next_u64() % 3) as usize;
        let u = rng.in_range(0.0, pair.period());
        let v = rng.in_range(0.01, 0.99);
        let (k_num, h_num) = curvature_at(&pair, facet, u, v).unwrap();
        let (k_cf, h_cf) = curvature_closed_form(&pair, facet, u, v).unwrap();
        worst_k = worst_k.max(rel(k_num, k_cf));
        worst_h = worst_h.max(rel(h_num, h_cf));
    }
    assert!(worst_k <= 1e-6, "worst K disagreement {worst_k}");
    assert!(worst_h <= 1e-6, "worst H disagreement {worst_h}");
}

#[test]
fn closed_form_gaussian_is_nonpositive() {
    let pair = reference_pair();
    let mut rng = TestRng::new(3);
    for _ in 0..500 {
        let facet = 1 + (rng.next_u64() % 3) as usize;
        let u = rng.in_range(0.0, pair.period());
        let v = rng.in_range(0.0, 1.0);
        let (k, _) = curvature_closed_form(&pair, facet, u, v).unwrap();
        assert!(k <= 0.0);
    }
}

#[test]
fn mixed_form_coefficient_reconstruction() {
    // The collapsed mixed coefficient ⟨σ_uv, σu×σv⟩ = a·b·(d₁+d₂)(1 − C)
    // with C = c₁c₂ + s₁s₂. The variant with d₁d₂ in place of c₁c₂ does
    // not reproduce the pipeline, which is how the convention was pinned.
    let pair = reference_pair();
    let (a, b) = pair.outer_semi_axes();
    let m = pair.parameter();
    let du = pair.vertex_spacing();
    let mut p = patch(&pair, 1, 64, 9, Embedding::Straight).unwrap();
    fundamental_forms(&mut p).unwrap();

    let mut worst_cc = 0.0_f64;
    let mut best_dd = f64::INFINITY;
    for iu in 0..p.us.len() {
        let u = p.us[iu];
        let j1 = jacobi_sn_cn_dn(u + du, m).unwrap();
        let j2 = jacobi_sn_cn_dn(u + 2.0 * du, m).unwrap();
        let with_cc = a * b * (j1.dn + j2.dn) * (1.0 - (j1.cn * j2.cn + j1.sn * j2.sn));
        let with_dd = -a * b * (j1.dn + j2.dn) * (j1.dn * j2.dn + j1.sn * j2.sn - 1.0);
        for iv in 0..p.vs.len() {
            let node = p.node(iu, iv);
            let raw = node.duv.dot(node.du.cross(node.dv));
            worst_cc = worst_cc.max(rel(raw, with_cc));
            best_dd = best_dd.min(rel(raw, with_dd));
        }
    }
    assert!(worst_cc <= 1e-10, "c-variant must match: {worst_cc}");
    assert!(best_dd > 1e-3, "d-variant must not match: {best_dd}");
}

fn straight_fields(pair: &ConfocalPair, facet: usize) -> (CurvatureField, CurvatureField) {
    let mut p = patch(pair, facet, 256, 33, Embedding::Straight).unwrap();
    fundamental_forms(&mut p).unwrap();
    curvature_numeric(&p).unwrap()
}

fn periodic_dist(a: f64, b: f64, period: f64) -> f64 {
    let d = (a - b).rem_euclid(period);
    d.min(period - d)
}

/// A pair on which all eight critical points are cleanly non-degenerate.
/// At caustic aspect ratio exactly 1:2 the mean-curvature points on the
/// top/bottom isosceles configurations have a vanishing Hessian
/// determinant (see `mean_curvature_points_degenerate_at_ratio_two`), and
/// for flatter caustics they turn into saddles; the classical
/// minimum/saddle pattern needs a rounder caustic.
fn morse_pair() -> ConfocalPair {
    ConfocalPair::from_caustic(1.0, 0.8).unwrap()
}

#[test]
fn mean_curvature_critical_points_follow_the_isosceles_pattern() {
    let pair = morse_pair();
    let k = pair.quarter_period();
    let (_, mut mean) = straight_fields(&pair, 1);
    find_critical_points(&mut mean, &pair).unwrap();
    let pts = &mean.critical_points;
    assert_eq!(pts.len(), 4, "{pts:?}");

    let cell_tol = 2.0 * pair.period() / 256.0;
    // minima at u = 0, 2K; saddles at u = K, 3K; everything on v = 1/2
    let expected = [
        (0.0, MorseType::Minimum),
        (k, MorseType::Saddle),
        (2.0 * k, MorseType::Minimum),
        (3.0 * k, MorseType::Saddle),
    ];
    for (u_want, ty) in expected {
        let found = pts
            .iter()
            .find(|p| periodic_dist(p.u, u_want, pair.period()) <= cell_tol)
            .unwrap_or_else(|| panic!("no critical point near u = {u_want}: {pts:?}"));
        assert_eq!(found.morse_type, ty, "at u = {u_want}");
        assert!((found.v - 0.5).abs() <= 1e-4);
        assert!(found.converged);
        assert!(found.gradient_norm <= 1e-7);
        let (l1, l2) = found.hessian_eigs;
        assert!((l1 * l2).abs() > 1e-3, "near-degenerate Hessian at u = {u_want}");
    }
}

#[test]
fn gaussian_curvature_shows_the_complementary_pattern() {
    // The Gaussian pattern is robust across aspect ratios, including the
    // reference 1:2 pair.
    for pair in [reference_pair(), morse_pair()] {
        let k = pair.quarter_period();
        let (mut gauss, _) = straight_fields(&pair, 1);
        find_critical_points(&mut gauss, &pair).unwrap();
        let pts = &gauss.critical_points;
        assert_eq!(pts.len(), 4, "{pts:?}");

        let cell_tol = 2.0 * pair.period() / 256.0;
        let expected = [
            (0.0, MorseType::Saddle),
            (k, MorseType::Minimum),
            (2.0 * k, MorseType::Saddle),
            (3.0 * k, MorseType::Minimum),
        ];
        for (u_want, ty) in expected {
            let found = pts
                .iter()
                .find(|p| periodic_dist(p.u, u_want, pair.period()) <= cell_tol)
                .unwrap_or_else(|| panic!("no critical point near u = {u_want}: {pts:?}"));
            assert_eq!(found.morse_type, ty, "at u = {u_want}");
            assert!((found.v - 0.5).abs() <= 1e-4);
            assert!(found.converged);
            let (l1, l2) = found.hessian_eigs;
            assert!((l1 * l2).abs() > 1e-3, "near-degenerate Hessian at u = {u_want}");
        }
    }
}

#[test]
fn other_facets_show_the_same_pattern_shape() {
    // Facets 2 and 3 are u-shifted copies of facet 1, so assert the shape
    // (counts, alternation, spacing K), not absolute positions.
    let pair = morse_pair();
    let k = pair.quarter_period();
    for facet in 2..=3 {
        let (_, mut mean) = straight_fields(&pair, facet);
        find_critical_points(&mut mean, &pair).unwrap();
        let pts = &mean.critical_points;
        assert_eq!(pts.len(), 4, "facet {facet}: {pts:?}");
        let minima = pts
            .iter()
            .filter(|p| p.morse_type == MorseType::Minimum)
            .count();
        let saddles = pts
            .iter()
            .filter(|p| p.morse_type == MorseType::Saddle)
            .count();
        assert_eq!((minima, saddles), (2, 2), "facet {facet}");
        for w in 0..4 {
            let a = &pts[w];
            let b = &pts[(w + 1) % 4];
            assert_ne!(a.morse_type, b.morse_type, "alternation on facet {facet}");
            let gap = periodic_dist(a.u, b.u, pair.period());
            assert!((gap - k).abs() <= 0.05 * k, "spacing {gap} vs K = {k}");
            assert!((a.v - 0.5).abs() <= 1e-4);
        }
    }
}

#[test]
fn mean_curvature_points_degenerate_at_ratio_two() {
    // At caustic semi-axes 1:0.5 the mean-curvature critical points on the
    // top/bottom configurations (u = 0, 2K) sit exactly at a type
    // transition: their Hessian determinant vanishes (the field grows
    // quartically along one direction), while the alternating points at
    // u = K, 3K stay honest saddles. Positions, the v = 1/2 midline, and
    // the count are unaffected.
    let pair = reference_pair();
    let k = pair.quarter_period();
    let (_, mut mean) = straight_fields(&pair, 1);
    find_critical_points(&mut mean, &pair).unwrap();
    let pts = &mean.critical_points;
    assert_eq!(pts.len(), 4, "{pts:?}");
    let cell_tol = 2.0 * pair.period() / 256.0;
    for p in pts {
        assert!((p.v - 0.5).abs() <= 1e-4);
        assert!(p.gradient_norm <= 1e-7);
        let near_flat = periodic_dist(p.u, 0.0, pair.period()) <= cell_tol
            || periodic_dist(p.u, 2.0 * k, pair.period()) <= cell_tol;
        let (l1, l2) = p.hessian_eigs;
        if near_flat {
            // the small eigenvalue is zero up to FD noise
            assert!(l1 > 0.1, "large eigenvalue {l1}");
            assert!(l2.abs() <= 1e-3, "expected near-zero eigenvalue, got {l2}");
        } else {
            assert_eq!(p.morse_type, MorseType::Saddle);
            assert!((l1 * l2).abs() > 1e-3);
        }
    }
}

#[test]
fn refinement_gradient_is_step_size_robust() {
    // The gradients driving the refinement must not depend on the FD step:
    // compare the production step against the reference h = 1e-6 wherever
    // the gradient is meaningfully nonzero.
    let pair = reference_pair();
    let period = pair.period();
    let field = |u: f64, v: f64| curvature_at(&pair, 1, u, v).unwrap().1;
    let grad = |h_u: f64, h_v: f64, u: f64, v: f64| {
        (
            (field(u + h_u, v) - field(u - h_u, v)) / (2.0 * h_u),
            (field(u, v + h_v) - field(u, v - h_v)) / (2.0 * h_v),
        )
    };
    let mut rng = TestRng::new(11);
    for _ in 0..200 {
        let u = rng.in_range(0.0, period);
        let v = rng.in_range(0.1, 0.9);
        let (au, av) = grad(2e-6 * period, 2e-6, u, v);
        let (bu, bv) = grad(1e-6, 1e-6, u, v);
        let norm = (au * au + av * av).sqrt();
        if norm > 1e-3 {
            assert!(
                ((au - bu).powi(2) + (av - bv).powi(2)).sqrt() / norm <= 1e-5,
                "gradient step sensitivity at u={u}, v={v}"
            );
        }
    }
}
