//! Randomized self-checks behind the `checks` experiment.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{
    hamiltonian, kinetic_energy, legendre_from_velocities, vector_field, ReducedState,
};
use crate::kinematics::{democracy_angle, Clustering, JacobiPair, MassTriple, ShapePoint, Vec3};
use crate::potentials::{gradient_error, PotentialModel, ShapeSampler};
use crate::Result;

/// Outcome of one randomized check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

pub fn random_reduced_state<R: Rng + ?Sized>(rng: &mut R) -> ReducedState {
    let shape = ShapeSampler::default().sample(rng);
    let mut p = [0.0; 4];
    for x in &mut p {
        *x = rng.gen_range(-1.0..1.0);
    }
    ReducedState::new(shape, rng.gen_range(-PI..PI), p)
}

/// Three random points in `[-1, 1]^3` that are comfortably non-collinear.
pub fn random_configuration<R: Rng + ?Sized>(rng: &mut R) -> [Vec3; 3] {
    loop {
        let x: [Vec3; 3] = std::array::from_fn(|_| {
            Vec3::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
        });
        let (a, b) = (x[0] - x[2], x[1] - x[2]);
        let min_side = (x[0] - x[1]).norm().min(a.norm()).min(b.norm());
        if min_side > 0.1 && a.cross(&b).norm() > 0.05 * a.norm() * b.norm() {
            return x;
        }
    }
}

/// Compares each component of the reduced vector field against central
/// differences of the Hamiltonian.
pub fn vector_field_check(
    v: &dyn PotentialModel,
    samples: usize,
    step: f64,
    seed: u64,
) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let st = random_reduced_state(&mut rng);
        let field = vector_field(&st, v)?;
        let x = st.to_array();
        for k in 0..8 {
            let mut plus = x;
            let mut minus = x;
            plus[k] += step;
            minus[k] -= step;
            let dh = (hamiltonian(&ReducedState::from_array(plus), v)?
                - hamiltonian(&ReducedState::from_array(minus), v)?)
                / (2.0 * step);
            // dp/dt = -dH/dq, dq/dt = dH/dp
            let (component, expected) = if k < 4 { (k + 4, -dh) } else { (k - 4, dh) };
            worst = worst.max(gradient_error(field[component], expected));
        }
    }
    Ok(worst)
}

/// `H(legendre(v)) - V` against the kinetic energy of the metric.
pub fn legendre_check(v: &dyn PotentialModel, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let shape = ShapeSampler::default().sample(&mut rng);
        let vel: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let st = ReducedState::new(shape, 0.0, legendre_from_velocities(&shape, &vel));
        let lhs = hamiltonian(&st, v)?;
        let rhs = kinetic_energy(&shape, &vel) + v.evaluate(&shape)?;
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

/// Residual of the democracy angle between every ordered pair of
/// clusterings at random configurations.
pub fn democracy_check(masses: &MassTriple, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x = random_configuration(&mut rng);
        for from in Clustering::ALL {
            for to in Clustering::ALL {
                let theta = democracy_angle(masses, &x, from, to)?;
                let a = JacobiPair::from_positions(masses, &x, from)?.democracy_rotate(theta);
                let b = JacobiPair::from_positions(masses, &x, to)?;
                worst = worst
                    .max((a.rvec() - b.rvec()).amax())
                    .max((a.svec() - b.svec()).amax());
            }
        }
    }
    Ok(worst)
}

/// `shape_from_w(w_from_shape(p)) = p`.
pub fn w_round_trip_check(samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let p = ShapeSampler::default().sample(&mut rng);
        let q: ShapePoint = p.to_w().to_shape()?;
        worst = worst
            .max((p.r - q.r).abs())
            .max((p.s - q.s).abs())
            .max((p.phi - q.phi).abs());
    }
    Ok(worst)
}
