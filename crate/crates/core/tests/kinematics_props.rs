use std::f64::consts::PI;

use nalgebra::{Rotation3, Unit};
use proptest::prelude::*;

use triatomic::kinematics::{
    democracy_angle, interatomic_distances, Clustering, FullState, JacobiPair, MassTriple,
    ShapePoint, Vec3,
};

fn masses() -> impl Strategy<Value = MassTriple> {
    (0.2..10.0f64, 0.2..10.0f64, 0.2..10.0f64)
        .prop_map(|(a, b, c)| MassTriple::new(a, b, c).unwrap())
}

fn vec3() -> impl Strategy<Value = Vec3> {
    (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn triangle() -> impl Strategy<Value = [Vec3; 3]> {
    [vec3(), vec3(), vec3()].prop_filter("well separated, non-collinear", |x| {
        let (a, b) = (x[0] - x[2], x[1] - x[2]);
        (x[0] - x[1]).norm().min(a.norm()).min(b.norm()) > 0.1
            && a.cross(&b).norm() > 0.05 * a.norm() * b.norm()
    })
}

fn shape() -> impl Strategy<Value = ShapePoint> {
    (0.05..5.0f64, 0.05..5.0f64, 0.01..PI - 0.01)
        .prop_map(|(r, s, phi)| ShapePoint::new(r, s, phi).unwrap())
}

fn clustering() -> impl Strategy<Value = Clustering> {
    prop_oneof![
        Just(Clustering::Pair13),
        Just(Clustering::Pair12),
        Just(Clustering::Pair23)
    ]
}

fn rotation() -> impl Strategy<Value = Rotation3<f64>> {
    (vec3(), -PI..PI).prop_filter_map("nonzero axis", |(axis, angle)| {
        (axis.norm() > 1e-3).then(|| Rotation3::from_axis_angle(&Unit::new_normalize(axis), angle))
    })
}

proptest! {
    #[test]
    fn positions_round_trip_modulo_translation(m in masses(), x in triangle(), c in clustering()) {
        let pair = JacobiPair::from_positions(&m, &x, c).unwrap();
        let back = pair.to_positions(&m, c);
        let w = m.as_array();
        let com = (x[0] * w[0] + x[1] * w[1] + x[2] * w[2]) / m.total();
        for i in 0..3 {
            prop_assert!((back[i] - (x[i] - com)).amax() < 1e-12);
        }
    }

    #[test]
    fn shape_w_round_trip(p in shape()) {
        let q = p.to_w().to_shape().unwrap();
        prop_assert!((p.r - q.r).abs() < 1e-12 * p.r.max(1.0));
        prop_assert!((p.s - q.s).abs() < 1e-12 * p.s.max(1.0));
        prop_assert!((p.phi - q.phi).abs() < 1e-12);
    }

    #[test]
    fn w_norm_is_squared_hyperradius(p in shape()) {
        let rho2 = p.r * p.r + p.s * p.s;
        prop_assert!((p.to_w().norm() - rho2).abs() <= 1e-14 * rho2);
    }

    #[test]
    fn democracy_rotation_invariants(x in triangle(), m in masses(), theta in -PI..PI) {
        let pair = JacobiPair::from_positions(&m, &x, Clustering::Pair13).unwrap();
        let turned = pair.democracy_rotate(theta);
        let cross = pair.rvec().cross(pair.svec());
        prop_assert!((turned.rvec().cross(turned.svec()) - cross).amax() < 1e-14 * cross.norm().max(1.0));
        let scale = pair.hyperradius_squared();
        prop_assert!((turned.hyperradius_squared() - scale).abs() < 1e-14 * scale.max(1.0));

        let wa = pair.shape().unwrap().to_w();
        let wb = turned.shape().unwrap().to_w();
        let (sn, cs) = (2.0 * theta).sin_cos();
        prop_assert!((wa.w3 - wb.w3).abs() < 1e-12 * scale.max(1.0));
        prop_assert!((cs * wa.w1 - sn * wa.w2 - wb.w1).abs() < 1e-12 * scale.max(1.0));
        prop_assert!((sn * wa.w1 + cs * wa.w2 - wb.w2).abs() < 1e-12 * scale.max(1.0));
    }

    #[test]
    fn democracy_angle_maps_between_clusterings(x in triangle(), m in masses(), a in clustering(), b in clustering()) {
        let theta = democracy_angle(&m, &x, a, b).unwrap();
        let mapped = JacobiPair::from_positions(&m, &x, a).unwrap().democracy_rotate(theta);
        let target = JacobiPair::from_positions(&m, &x, b).unwrap();
        prop_assert!((mapped.rvec() - target.rvec()).amax() < 1e-10);
        prop_assert!((mapped.svec() - target.svec()).amax() < 1e-10);
    }

    #[test]
    fn angular_momentum_is_equivariant(x in triangle(), v in [vec3(), vec3(), vec3()], m in masses(), g in rotation()) {
        let st = FullState::from_cartesian(&m, &x, &v, Clustering::Pair13).unwrap();
        let gx = x.map(|p| g * p);
        let gv = v.map(|p| g * p);
        let rotated = FullState::from_cartesian(&m, &gx, &gv, Clustering::Pair13).unwrap();
        let expected = g * st.angular_momentum();
        prop_assert!((rotated.angular_momentum() - expected).amax() < 1e-12);
    }

    #[test]
    fn distances_match_cartesian(x in triangle(), m in masses(), c in clustering()) {
        let p = JacobiPair::from_positions(&m, &x, c).unwrap().shape().unwrap();
        let d = interatomic_distances(&m, c, &p);
        let direct = [(x[0] - x[1]).norm(), (x[0] - x[2]).norm(), (x[1] - x[2]).norm()];
        for k in 0..3 {
            prop_assert!((d[k] - direct[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn canonical_pair_reproduces_shape(p in shape()) {
        let q = p.canonical_pair().shape().unwrap();
        prop_assert!((p.r - q.r).abs() < 1e-12 * p.r.max(1.0));
        prop_assert!((p.s - q.s).abs() < 1e-12 * p.s.max(1.0));
        prop_assert!((p.phi - q.phi).abs() < 1e-12);
    }
}

#[test]
fn angular_momentum_of_cartesian_state_matches_particle_sum() {
    let m = MassTriple::new(1.0, 2.0, 3.0).unwrap();
    let x = [
        Vec3::new(0.1, 0.2, 0.3),
        Vec3::new(-0.5, 0.4, 0.0),
        Vec3::new(0.6, -0.3, 0.2),
    ];
    let v = [
        Vec3::new(0.3, 0.0, -0.1),
        Vec3::new(0.0, 0.2, 0.1),
        Vec3::new(-0.2, 0.1, 0.0),
    ];
    let st = FullState::from_cartesian(&m, &x, &v, Clustering::Pair12).unwrap();
    let w = m.as_array();
    let com = (x[0] * w[0] + x[1] * w[1] + x[2] * w[2]) / m.total();
    let vcom = (v[0] * w[0] + v[1] * w[1] + v[2] * w[2]) / m.total();
    let direct: Vec3 = (0..3)
        .map(|i| (x[i] - com).cross(&(v[i] - vcom)) * w[i])
        .sum();
    assert!((st.angular_momentum() - direct).amax() < 1e-14);
}
