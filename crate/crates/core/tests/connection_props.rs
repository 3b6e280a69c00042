use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::Matrix3;
use proptest::prelude::*;

use triatomic::connection::{
    gauge_potential, holonomy_of_path, horizontal_gamma_rate, horizontal_lift_full,
    orthogonality_defect, zeta, CoordinatePlane, FrameState, Segment, ShapePath, ShapeRectangle,
};
use triatomic::kinematics::ShapePoint;

fn point() -> impl Strategy<Value = ShapePoint> {
    (0.5..2.0f64, 0.5..2.0f64, 0.3..PI - 0.3)
        .prop_map(|(r, s, phi)| ShapePoint::new(r, s, phi).unwrap())
}

fn open_path() -> impl Strategy<Value = ShapePath> {
    prop::collection::vec(point(), 2..5).prop_map(|v| {
        ShapePath::new(
            v.windows(2)
                .map(|w| Segment::Line {
                    from: w[0],
                    to: w[1],
                })
                .collect(),
        )
        .unwrap()
    })
}

fn rectangle() -> impl Strategy<Value = ShapeRectangle> {
    (
        any::<bool>(),
        0.5..2.0f64,
        0.5..1.5f64,
        0.1..1.0f64,
        0.2..1.5f64,
        0.1..1.2f64,
    )
        .prop_map(|(r_plane, fixed, u0, du, phi0, dphi)| ShapeRectangle {
            plane: if r_plane {
                CoordinatePlane::RPhi { s: fixed }
            } else {
                CoordinatePlane::SPhi { r: fixed }
            },
            u: (u0, u0 + du),
            phi: (phi0, (phi0 + dphi).min(PI - 0.1)),
        })
}

proptest! {
    #[test]
    fn horizontal_rate_annihilates_zeta(p in point(), dphi in -5.0..5.0f64) {
        // Exact algebraically; in floating point the two terms cancel to a few ulps.
        let z = zeta(&p, dphi, horizontal_gamma_rate(&p, dphi));
        prop_assert!(z.abs() <= 4.0 * f64::EPSILON * p.s * p.s * dphi.abs(), "zeta = {:e}", z);
    }

    #[test]
    fn holonomy_is_additive_and_odd(a in open_path(), tail in point()) {
        let b = ShapePath::new(vec![Segment::Line { from: a.end(), to: tail }]).unwrap();
        let ha = holonomy_of_path(&a, 64).unwrap();
        let hb = holonomy_of_path(&b, 64).unwrap();
        let hab = holonomy_of_path(&a.concat(&b).unwrap(), 64).unwrap();
        prop_assert!((hab - ha - hb).abs() < 1e-14);
        prop_assert!((holonomy_of_path(&a.reversed(), 64).unwrap() + ha).abs() < 1e-14);
    }

    #[test]
    fn line_integral_matches_curvature_flux(rect in rectangle()) {
        let line = holonomy_of_path(&rect.boundary().unwrap(), 64).unwrap();
        let surface = rect.curvature_flux(64).unwrap();
        prop_assert!((line - surface).abs() < 1e-6, "line {} surface {}", line, surface);
    }

    #[test]
    fn quadrature_doubling_is_stable(rect in rectangle()) {
        let path = rect.boundary().unwrap();
        let a = holonomy_of_path(&path, 64).unwrap();
        let b = holonomy_of_path(&path, 128).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn small_loop_holonomy_is_minus_half_area() {
    for eps in [1e-1, 3e-2, 1e-2] {
        let rect = ShapeRectangle {
            plane: CoordinatePlane::SPhi { r: 1.0 },
            u: (1.0, 1.0 + eps),
            phi: (1.0, 1.0 + eps),
        };
        let dg = holonomy_of_path(&rect.boundary().unwrap(), 64).unwrap();
        assert!(
            (dg + 0.5 * eps * eps).abs() < 2.0 * eps.powi(3),
            "eps {eps}: {dg}"
        );
    }
}

#[test]
fn analytic_and_polyline_routes_agree() {
    // phi sweeps a half-turn of an ellipse-like curve and back along a line.
    let curve = |t: f64| {
        let a = PI * t;
        (
            [
                1.5 + 0.3 * a.cos(),
                1.0 + 0.2 * a.sin(),
                1.2 + 0.4 * a.sin(),
            ],
            [-0.3 * PI * a.sin(), 0.2 * PI * a.cos(), 0.4 * PI * a.cos()],
        )
    };
    let analytic = ShapePath::new(vec![Segment::Analytic(Arc::new(curve))]).unwrap();
    let samples: Vec<ShapePoint> = (0..=400)
        .map(|k| {
            let q = curve(k as f64 / 400.0).0;
            ShapePoint::new(q[0], q[1], q[2]).unwrap()
        })
        .collect();
    let polyline = ShapePath::new(vec![Segment::Polyline(samples)]).unwrap();
    let a = holonomy_of_path(&analytic, 256).unwrap();
    let b = holonomy_of_path(&polyline, 256).unwrap();
    // Independent estimate: midpoint rule on -A_phi dphi/dt.
    let n = 100_000;
    let c: f64 = (0..n)
        .map(|k| {
            let (q, dq) = curve((k as f64 + 0.5) / n as f64);
            -gauge_potential(&ShapePoint::new(q[0], q[1], q[2]).unwrap()) * dq[2] / n as f64
        })
        .sum();
    assert!((a - c).abs() < 1e-9, "{a} vs {c}");
    assert!((b - c).abs() < 1e-5, "{b} vs {c}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn frame_lift_is_horizontal_and_rotates_by_holonomy(rect in rectangle()) {
        let path = rect.boundary().unwrap();
        let start = FrameState::new(path.start(), Matrix3::identity()).unwrap();
        let lift = horizontal_lift_full(&path, &start, 1e-3).unwrap();
        prop_assert!(lift.max_angular_momentum() < 1e-8);
        prop_assert!(lift.plane_drift() < 1e-10);
        for st in &lift.states {
            prop_assert!(orthogonality_defect(&st.frame) < 1e-8);
            prop_assert!((st.u3() - nalgebra::Vector3::z()).amax() < 1e-10);
        }
        let expected = holonomy_of_path(&path, 64).unwrap();
        prop_assert!((lift.net_rotation() - expected).abs() < 1e-6);
    }
}
