// Acceptance suite: one line per criterion, non-zero exit if any fails.
//
// Reference quantities (energy, Jacobi vectors, angular momentum, shape
// coordinates) are recomputed here from planar Cartesian geometry rather
// than through the library.

use std::f64::consts::PI;
use std::process::ExitCode;

use nalgebra::{Matrix3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triatomic::connection::{
    holonomy_of_path, horizontal_lift_full, lift_with_body_spin, reference_rectangle, FrameState,
};
use triatomic::dynamics::{
    embed_reduced, hamiltonian, integrate, legendre_from_velocities, vector_field, FullFlow,
    Method, MuFlow, ReducedFlow, ReducedState,
};
use triatomic::kinematics::{democracy_angle, Clustering, JacobiPair, MassTriple, ShapePoint};
use triatomic::potentials::{pairwise_potential, PairForm, Pairwise, PairwiseSpec};

type V3 = Vector3<f64>;

fn morse_benchmark() -> Pairwise {
    let form = PairForm::Morse {
        depth: 1.0,
        width: 1.0,
        d0: 1.0,
    };
    pairwise_potential(PairwiseSpec::uniform(
        form,
        MassTriple::equal(),
        Clustering::Pair13,
    ))
    .unwrap()
}

fn benchmark_state(p_gamma: f64) -> ReducedState {
    ReducedState::new(
        ShapePoint::new(1.2, 1.0, 1.3).unwrap(),
        0.0,
        [0.1, -0.2, 0.3, p_gamma],
    )
}

// Morse energy of equal unit masses from the (13)+2 Jacobi vectors:
// x1 - x3 = rvec * sqrt(2), x2 - (x1 + x3)/2 = svec * sqrt(3/2).
fn oracle_morse(rvec: &V3, svec: &V3) -> f64 {
    let d13 = rvec * 2f64.sqrt();
    let c2 = svec * 1.5f64.sqrt();
    let d12 = c2 - d13 * 0.5;
    let d23 = c2 + d13 * 0.5;
    [d12.norm(), d13.norm(), d23.norm()]
        .iter()
        .map(|d| (1.0 - (-(d - 1.0)).exp()).powi(2))
        .sum()
}

// Planar Jacobi vectors and their time derivatives for shape (r, s, phi),
// fiber angle gamma and velocities (dr, ds, dphi, dgamma).
fn oracle_planar(r: f64, s: f64, phi: f64, gamma: f64, v: [f64; 4]) -> (V3, V3, V3, V3) {
    let [dr, ds, dphi, dgamma] = v;
    let (a, b) = (gamma, gamma + phi);
    let rvec = V3::new(r * a.cos(), r * a.sin(), 0.0);
    let svec = V3::new(s * b.cos(), s * b.sin(), 0.0);
    let rdot = V3::new(
        dr * a.cos() - r * dgamma * a.sin(),
        dr * a.sin() + r * dgamma * a.cos(),
        0.0,
    );
    let db = dgamma + dphi;
    let sdot = V3::new(
        ds * b.cos() - s * db * b.sin(),
        ds * b.sin() + s * db * b.cos(),
        0.0,
    );
    (rvec, svec, rdot, sdot)
}

// Velocities from momenta by solving the 2x2 block for (dphi, dgamma):
// p_phi = s^2 (dphi + dgamma), p_gamma = s^2 dphi + (r^2 + s^2) dgamma.
fn oracle_velocities(x: &[f64; 8]) -> [f64; 4] {
    let [r, s, _, _, p_r, p_s, p_phi, p_gamma] = *x;
    let dgamma = (p_gamma - p_phi) / (r * r);
    let dphi = p_phi / (s * s) - dgamma;
    [p_r, p_s, dphi, dgamma]
}

fn oracle_energy(x: &[f64; 8]) -> f64 {
    let v = oracle_velocities(x);
    let (rvec, svec, rdot, sdot) = oracle_planar(x[0], x[1], x[2], x[3], v);
    0.5 * (rdot.norm_squared() + sdot.norm_squared()) + oracle_morse(&rvec, &svec)
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

fn random_state(rng: &mut ChaCha8Rng) -> ReducedState {
    let shape = ShapePoint::new(
        rng.gen_range(0.6..2.0),
        rng.gen_range(0.6..2.0),
        rng.gen_range(0.25..PI - 0.25),
    )
    .unwrap();
    let p: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
    ReducedState::new(shape, rng.gen_range(-PI..PI), p)
}

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

// Max relative energy error of an rk4 run, energy from the oracle.
fn rk4_energy_error(dt: f64, steps: usize) -> (f64, f64) {
    let v = morse_benchmark();
    let traj = integrate(
        &ReducedFlow { potential: &v },
        benchmark_state(0.25),
        dt,
        steps,
        Method::Rk4,
    )
    .unwrap();
    let h0 = oracle_energy(&traj.states[0].to_array());
    let mut energy: f64 = 0.0;
    let mut p_gamma: f64 = 0.0;
    for st in &traj.states {
        energy = energy.max((oracle_energy(&st.to_array()) - h0).abs() / h0.abs());
        p_gamma = p_gamma.max((st.p_gamma - 0.25).abs());
    }
    (energy, p_gamma)
}

fn conservation() -> Verdict {
    let (de, dp) = rk4_energy_error(1e-3, 10_000);
    verdict(
        de < 1e-8 && dp < 1e-12,
        format!("max |dH|/|H0| = {de:.2e} (< 1e-8), max |dp_gamma| = {dp:.1e} (< 1e-12)"),
    )
}

fn vector_field_consistency() -> Verdict {
    let v = morse_benchmark();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let st = random_state(&mut rng);
        let field = vector_field(&st, &v).unwrap();
        let x = st.to_array();
        for k in 0..8 {
            let (mut plus, mut minus) = (x, x);
            plus[k] += h;
            minus[k] -= h;
            let d = (oracle_energy(&plus) - oracle_energy(&minus)) / (2.0 * h);
            let (i, expected) = if k < 4 { (k + 4, -d) } else { (k - 4, d) };
            worst = worst.max(rel_err(field[i], expected));
        }
    }
    verdict(
        worst < 1e-6,
        format!("max relative deviation {worst:.2e} over 100 states (< 1e-6)"),
    )
}

fn legendre_consistency() -> Verdict {
    let v = morse_benchmark();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let st = random_state(&mut rng);
        let p = st.shape();
        let vel: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let mapped = ReducedState::new(p, st.gamma, legendre_from_velocities(&p, &vel));
        let (rvec, svec, rdot, sdot) = oracle_planar(p.r, p.s, p.phi, st.gamma, vel);
        let expected =
            0.5 * (rdot.norm_squared() + sdot.norm_squared()) + oracle_morse(&rvec, &svec);
        worst = worst.max((hamiltonian(&mapped, &v).unwrap() - expected).abs());
    }
    verdict(
        worst < 1e-12,
        format!("max |H(legendre(v)) - (T + V)| = {worst:.2e} (< 1e-12)"),
    )
}

fn holonomy() -> Verdict {
    let rect = reference_rectangle();
    let path = rect.boundary().unwrap();
    let line = holonomy_of_path(&path, 64).unwrap();
    let surface = rect.curvature_flux(64).unwrap();
    let start = FrameState::new(path.start(), Matrix3::identity()).unwrap();
    let lift = horizontal_lift_full(&path, &start, 1e-4).unwrap();
    // In-plane rotation read off the first and last frames directly.
    let (a, b) = (
        lift.states[0].frame.column(0).into_owned(),
        lift.states.last().unwrap().frame.column(0).into_owned(),
    );
    let turned = a.cross(&b).z.atan2(a.dot(&b));
    let exact = PI / 10.0;
    let values = [line, surface, turned];
    let spread = values.iter().map(|x| (x - exact).abs()).fold(0.0, f64::max);
    verdict(
        spread < 1e-6,
        format!("line {line:.10}, surface {surface:.10}, lift {turned:.10}, max |dgamma - pi/10| = {spread:.1e} (< 1e-6)"),
    )
}

fn plane_drift() -> Verdict {
    let path = reference_rectangle().boundary().unwrap();
    let start = FrameState::new(path.start(), Matrix3::identity()).unwrap();
    let tilt = |states: &[FrameState]| {
        let n0 = states[0].frame.column(2).into_owned();
        states
            .iter()
            .map(|st| n0.cross(&st.frame.column(2)).norm())
            .fold(0.0, f64::max)
    };
    let lift = horizontal_lift_full(&path, &start, 1e-4).unwrap();
    let control = lift_with_body_spin(&path, &start, 1e-4, V3::new(1e-2, 0.0, 0.0)).unwrap();
    let (d, c) = (tilt(&lift.states), tilt(&control.states));
    verdict(
        d < 1e-8 && c > 1e-3,
        format!("plane drift {d:.2e} (< 1e-8), control drift {c:.2e} (> 1e-3)"),
    )
}

fn oracle_equivalence() -> Verdict {
    let v = morse_benchmark();
    let mut worst_shape: f64 = 0.0;
    let mut worst_j: f64 = 0.0;
    for p_gamma in [0.0, 0.25] {
        let reduced = benchmark_state(p_gamma);
        let full = embed_reduced(&reduced, &V3::x(), &V3::y()).unwrap();
        let a = integrate(
            &ReducedFlow { potential: &v },
            reduced,
            1e-4,
            10_000,
            Method::Rk4,
        )
        .unwrap();
        let b = integrate(&FullFlow { potential: &v }, full, 1e-4, 10_000, Method::Rk4).unwrap();
        for (x, y) in a.states.iter().zip(&b.states) {
            let (rv, sv) = (y.config.rvec(), y.config.svec());
            let phi = rv.cross(sv).norm().atan2(rv.dot(sv));
            worst_shape = worst_shape
                .max((x.r - rv.norm()).abs())
                .max((x.s - sv.norm()).abs())
                .max((x.phi - phi).abs());
            let j = rv.cross(&y.rdot) + sv.cross(&y.sdot);
            worst_j = worst_j.max((j.norm() - p_gamma).abs());
        }
    }
    verdict(
        worst_shape < 1e-6 && worst_j < 1e-8,
        format!("max shape deviation {worst_shape:.2e} (< 1e-6), max ||J| - p_gamma| = {worst_j:.2e} (< 1e-8)"),
    )
}

fn s1_reduction() -> Verdict {
    let v = morse_benchmark();
    let mut worst: f64 = 0.0;
    for mu in [0.0, 0.5] {
        let st = benchmark_state(mu);
        let a = integrate(&ReducedFlow { potential: &v }, st, 1e-3, 1000, Method::Rk4).unwrap();
        let b = integrate(
            &MuFlow { potential: &v, mu },
            st.to_mu(),
            1e-3,
            1000,
            Method::Rk4,
        )
        .unwrap();
        for (x, y) in a.states.iter().zip(&b.states) {
            for d in [
                x.r - y.r,
                x.s - y.s,
                x.phi - y.phi,
                x.p_r - y.p_r,
                x.p_s - y.p_s,
                x.p_phi - y.p_phi,
            ] {
                worst = worst.max(d.abs());
            }
        }
    }
    verdict(
        worst < 1e-10,
        format!("max deviation {worst:.2e} for mu in {{0, 0.5}} (< 1e-10)"),
    )
}

// Jacobi pair for clustering (a b)+c, zero-based indices.
fn oracle_jacobi(m: [f64; 3], x: &[V3; 3], (a, b, c): (usize, usize, usize)) -> (V3, V3) {
    let pair = m[a] + m[b];
    let cm = (x[a] * m[a] + x[b] * m[b]) / pair;
    let mu_ab = m[a] * m[b] / pair;
    let mu_c = m[c] * pair / (pair + m[c]);
    ((x[a] - x[b]) * mu_ab.sqrt(), (x[c] - cm) * mu_c.sqrt())
}

fn w_of(r: &V3, s: &V3) -> [f64; 3] {
    [
        r.norm_squared() - s.norm_squared(),
        2.0 * r.dot(s),
        2.0 * r.cross(s).norm(),
    ]
}

fn democracy() -> Verdict {
    let labels = [
        (Clustering::Pair13, (0, 2, 1)),
        (Clustering::Pair12, (1, 0, 2)),
        (Clustering::Pair23, (2, 1, 0)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut residual, mut invariant, mut rotation): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for trial in 0..200 {
        let m = if trial < 100 {
            [1.0; 3]
        } else {
            std::array::from_fn(|_| rng.gen_range(0.2..5.0))
        };
        let masses = MassTriple::new(m[0], m[1], m[2]).unwrap();
        let x: [V3; 3] = loop {
            let x: [V3; 3] = std::array::from_fn(|_| V3::from_fn(|_, _| rng.gen_range(-1.0..1.0)));
            let (u, w) = (x[0] - x[2], x[1] - x[2]);
            if (x[0] - x[1]).norm().min(u.norm()).min(w.norm()) > 0.1
                && u.cross(&w).norm() > 0.05 * u.norm() * w.norm()
            {
                break x;
            }
        };
        for (from, ia) in labels {
            for (to, ib) in labels {
                let theta = democracy_angle(&masses, &x, from, to).unwrap();
                let (ra, sa) = oracle_jacobi(m, &x, ia);
                let (rb, sb) = oracle_jacobi(m, &x, ib);
                let (sn, cs) = theta.sin_cos();
                let mapped = JacobiPair::new(ra * cs - sa * sn, ra * sn + sa * cs).unwrap();
                residual = residual
                    .max((mapped.rvec() - rb).amax())
                    .max((mapped.svec() - sb).amax());
                let (wa, wb) = (w_of(&ra, &sa), w_of(&rb, &sb));
                invariant = invariant.max((wa[2] - wb[2]).abs()).max(
                    ((ra.norm_squared() + sa.norm_squared())
                        - (rb.norm_squared() + sb.norm_squared()))
                    .abs(),
                );
                let (s2, c2) = (2.0 * theta).sin_cos();
                rotation = rotation
                    .max((c2 * wa[0] - s2 * wa[1] - wb[0]).abs())
                    .max((s2 * wa[0] + c2 * wa[1] - wb[1]).abs());
            }
        }
    }
    verdict(
        residual < 1e-10 && invariant < 1e-12 && rotation < 1e-10,
        format!(
            "residual {residual:.1e} (< 1e-10), w3/hyperradius change {invariant:.1e} (< 1e-12), 2-theta rotation error {rotation:.1e}"
        ),
    )
}

fn convergence_order() -> Verdict {
    let (coarse, _) = rk4_energy_error(1e-3, 10_000);
    let (fine, _) = rk4_energy_error(5e-4, 20_000);
    let ratio = coarse / fine;
    verdict(
        (12.0..=20.0).contains(&ratio),
        format!("energy error {coarse:.3e} at dt = 1e-3, {fine:.3e} at dt = 5e-4, ratio {ratio:.2} (in [12, 20])"),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Verdict);
    let criteria: [Criterion; 9] = [
        ("conservation", conservation),
        ("vector field vs Hamiltonian", vector_field_consistency),
        ("Legendre consistency", legendre_consistency),
        ("holonomy of the rectangle loop", holonomy),
        ("plane drift of horizontal lift", plane_drift),
        ("full-space oracle equivalence", oracle_equivalence),
        ("S1 reduction", s1_reduction),
        ("democracy group", democracy),
        ("rk4 convergence order", convergence_order),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        println!(
            "[{}] {}. {name}: {}",
            if v.passed { "PASS" } else { "FAIL" },
            i + 1,
            v.detail
        );
        failed += usize::from(!v.passed);
    }
    println!(
        "{} of {} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
