//! Rotationally invariant potentials `V(r, s, phi)` with analytic gradients.
//!
//! Everything here is defined on [`ShapePoint`]s, so invariance under
//! overall rotations holds by construction. Pairwise models are evaluated
//! through the interatomic distances implied by a mass triple and a
//! clustering.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kinematics::{distance_forms, Clustering, DistanceForm, MassTriple, ShapePoint};

/// Pair distances below this are reported as a pole of the potential.
const MIN_PAIR_DISTANCE: f64 = 1e-12;

/// A potential on shape space.
pub trait PotentialModel: Send + Sync {
    fn evaluate(&self, p: &ShapePoint) -> Result<f64>;

    /// `(dV/dr, dV/ds, dV/dphi)`.
    fn gradient(&self, p: &ShapePoint) -> Result<[f64; 3]>;
}

impl<T: PotentialModel + ?Sized> PotentialModel for &T {
    fn evaluate(&self, p: &ShapePoint) -> Result<f64> {
        (**self).evaluate(p)
    }

    fn gradient(&self, p: &ShapePoint) -> Result<[f64; 3]> {
        (**self).gradient(p)
    }
}

impl<T: PotentialModel + ?Sized> PotentialModel for Box<T> {
    fn evaluate(&self, p: &ShapePoint) -> Result<f64> {
        (**self).evaluate(p)
    }

    fn gradient(&self, p: &ShapePoint) -> Result<[f64; 3]> {
        (**self).gradient(p)
    }
}

/// `V = 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ZeroPotential;

impl PotentialModel for ZeroPotential {
    fn evaluate(&self, _: &ShapePoint) -> Result<f64> {
        Ok(0.0)
    }

    fn gradient(&self, _: &ShapePoint) -> Result<[f64; 3]> {
        Ok([0.0; 3])
    }
}

/// Quadratic well in the shape coordinates about a reference shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeHarmonic {
    reference: ShapePoint,
    stiffness: [f64; 3],
}

impl ShapeHarmonic {
    pub fn new(reference: ShapePoint, stiffness: [f64; 3]) -> Result<Self> {
        reference.validate()?;
        if stiffness.iter().any(|k| !(k.is_finite() && *k > 0.0)) {
            return Err(Error::DomainError(format!(
                "harmonic stiffness {stiffness:?} must be positive"
            )));
        }
        Ok(Self {
            reference,
            stiffness,
        })
    }

    fn displacement(&self, p: &ShapePoint) -> [f64; 3] {
        [
            p.r - self.reference.r,
            p.s - self.reference.s,
            p.phi - self.reference.phi,
        ]
    }
}

/// Shorthand for [`ShapeHarmonic::new`].
pub fn shape_harmonic(reference: ShapePoint, stiffness: [f64; 3]) -> Result<ShapeHarmonic> {
    ShapeHarmonic::new(reference, stiffness)
}

impl PotentialModel for ShapeHarmonic {
    fn evaluate(&self, p: &ShapePoint) -> Result<f64> {
        let d = self.displacement(p);
        Ok((0..3).map(|i| 0.5 * self.stiffness[i] * d[i] * d[i]).sum())
    }

    fn gradient(&self, p: &ShapePoint) -> Result<[f64; 3]> {
        let d = self.displacement(p);
        Ok([
            self.stiffness[0] * d[0],
            self.stiffness[1] * d[1],
            self.stiffness[2] * d[2],
        ])
    }
}

/// Functional form of a single pair interaction `v(d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PairForm {
    /// `k (d - d0)^2 / 2`
    Harmonic { k: f64, d0: f64 },
    /// `D (1 - exp(-a (d - d0)))^2`
    Morse { depth: f64, width: f64, d0: f64 },
    /// `4 eps ((sigma/d)^12 - (sigma/d)^6)`
    LennardJones { epsilon: f64, sigma: f64 },
}

impl PairForm {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            PairForm::Harmonic { k, d0 } => k > 0.0 && d0 > 0.0,
            PairForm::Morse { depth, width, d0 } => depth > 0.0 && width > 0.0 && d0 > 0.0,
            PairForm::LennardJones { epsilon, sigma } => epsilon > 0.0 && sigma > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::DomainError(format!(
                "invalid pair parameters {self:?}"
            )))
        }
    }

    /// `(v(d), v'(d))`.
    pub fn energy_and_derivative(&self, d: f64) -> (f64, f64) {
        match *self {
            PairForm::Harmonic { k, d0 } => {
                let x = d - d0;
                (0.5 * k * x * x, k * x)
            }
            PairForm::Morse { depth, width, d0 } => {
                let e = (-width * (d - d0)).exp();
                let one_minus = 1.0 - e;
                (
                    depth * one_minus * one_minus,
                    2.0 * depth * width * e * one_minus,
                )
            }
            PairForm::LennardJones { epsilon, sigma } => {
                let sr6 = (sigma / d).powi(6);
                let sr12 = sr6 * sr6;
                (
                    4.0 * epsilon * (sr12 - sr6),
                    4.0 * epsilon * (6.0 * sr6 - 12.0 * sr12) / d,
                )
            }
        }
    }
}

/// Pair forms for `(12, 13, 23)` together with the mass weighting that maps
/// shape coordinates to distances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairwiseSpec {
    pub forms: [PairForm; 3],
    pub masses: MassTriple,
    pub clustering: Clustering,
}

impl PairwiseSpec {
    pub fn uniform(form: PairForm, masses: MassTriple, clustering: Clustering) -> Self {
        Self {
            forms: [form; 3],
            masses,
            clustering,
        }
    }
}

/// Sum of pair interactions `sum v_ij(d_ij(r, s, phi))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pairwise {
    spec: PairwiseSpec,
    distances: [DistanceForm; 3],
}

const PAIR_LABELS: [&str; 3] = ["12", "13", "23"];

impl Pairwise {
    pub fn new(spec: PairwiseSpec) -> Result<Self> {
        for form in &spec.forms {
            form.validate()?;
        }
        Ok(Self {
            distances: distance_forms(&spec.masses, spec.clustering),
            spec,
        })
    }

    pub fn spec(&self) -> &PairwiseSpec {
        &self.spec
    }

    fn pair_distance(&self, i: usize, p: &ShapePoint) -> Result<f64> {
        let d = self.distances[i].squared(p).max(0.0).sqrt();
        if d < MIN_PAIR_DISTANCE {
            return Err(Error::PotentialDomain(format!(
                "pair {} distance {d:e} at a pole",
                PAIR_LABELS[i]
            )));
        }
        Ok(d)
    }
}

/// Shorthand for [`Pairwise::new`].
pub fn pairwise_potential(spec: PairwiseSpec) -> Result<Pairwise> {
    Pairwise::new(spec)
}

impl PotentialModel for Pairwise {
    fn evaluate(&self, p: &ShapePoint) -> Result<f64> {
        let mut total = 0.0;
        for i in 0..3 {
            let d = self.pair_distance(i, p)?;
            total += self.spec.forms[i].energy_and_derivative(d).0;
        }
        Ok(total)
    }

    fn gradient(&self, p: &ShapePoint) -> Result<[f64; 3]> {
        let mut grad = [0.0; 3];
        for i in 0..3 {
            let d = self.pair_distance(i, p)?;
            let dv = self.spec.forms[i].energy_and_derivative(d).1;
            // dd/dq = (d d^2/dq) / (2 d)
            let dd2 = self.distances[i].squared_gradient(p);
            for k in 0..3 {
                grad[k] += dv * dd2[k] / (2.0 * d);
            }
        }
        Ok(grad)
    }
}

/// Box of shapes from which random test points are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeSampler {
    pub r: (f64, f64),
    pub s: (f64, f64),
    pub phi: (f64, f64),
}

impl Default for ShapeSampler {
    fn default() -> Self {
        Self {
            r: (0.6, 2.0),
            s: (0.6, 2.0),
            phi: (0.25, PI - 0.25),
        }
    }
}

impl ShapeSampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ShapePoint {
        ShapePoint {
            r: rng.gen_range(self.r.0..self.r.1),
            s: rng.gen_range(self.s.0..self.s.1),
            phi: rng.gen_range(self.phi.0..self.phi.1),
        }
    }
}

/// Central-difference gradient of `V` in the shape coordinates.
pub fn numerical_gradient(v: &dyn PotentialModel, p: &ShapePoint, step: f64) -> Result<[f64; 3]> {
    let mut grad = [0.0; 3];
    for (k, g) in grad.iter_mut().enumerate() {
        let mut plus = *p;
        let mut minus = *p;
        match k {
            0 => {
                plus.r += step;
                minus.r -= step;
            }
            1 => {
                plus.s += step;
                minus.s -= step;
            }
            _ => {
                plus.phi += step;
                minus.phi -= step;
            }
        }
        *g = (v.evaluate(&plus)? - v.evaluate(&minus)?) / (2.0 * step);
    }
    Ok(grad)
}

/// A sample whose analytic gradient disagrees with finite differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientMismatch {
    pub point: ShapePoint,
    pub analytic: [f64; 3],
    pub numerical: [f64; 3],
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradientReport {
    pub samples: usize,
    pub step: f64,
    pub tolerance: f64,
    pub max_error: f64,
    pub failures: Vec<GradientMismatch>,
}

impl GradientReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for GradientReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gradient check: {} samples, step {:e}, max error {:.3e} (tol {:e}), {} failing",
            self.samples,
            self.step,
            self.max_error,
            self.tolerance,
            self.failures.len()
        )
    }
}

/// Error between two gradient components, relative to `max(1, |a|, |b|)`.
pub fn gradient_error(analytic: f64, numerical: f64) -> f64 {
    (analytic - numerical).abs() / 1f64.max(analytic.abs()).max(numerical.abs())
}

/// Compares analytic and central-difference gradients at random shapes.
///
/// Points where the potential itself fails to evaluate are recorded as
/// failures with an infinite error.
pub fn gradient_check(
    v: &dyn PotentialModel,
    sampler: &ShapeSampler,
    samples: usize,
    step: f64,
    tolerance: f64,
    seed: u64,
) -> GradientReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_error: f64 = 0.0;
    let mut failures = Vec::new();
    for _ in 0..samples {
        let point = sampler.sample(&mut rng);
        let (analytic, numerical) = match (v.gradient(&point), numerical_gradient(v, &point, step))
        {
            (Ok(a), Ok(n)) => (a, n),
            _ => {
                max_error = f64::INFINITY;
                failures.push(GradientMismatch {
                    point,
                    analytic: [f64::NAN; 3],
                    numerical: [f64::NAN; 3],
                    error: f64::INFINITY,
                });
                continue;
            }
        };
        let error = (0..3)
            .map(|k| gradient_error(analytic[k], numerical[k]))
            .fold(0.0, f64::max);
        max_error = max_error.max(error);
        if error.is_nan() || error > tolerance {
            failures.push(GradientMismatch {
                point,
                analytic,
                numerical,
                error,
            });
        }
    }
    GradientReport {
        samples,
        step,
        tolerance,
        max_error,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{JacobiPair, Vec3};
    use approx::assert_relative_eq;

    fn morse() -> Pairwise {
        Pairwise::new(PairwiseSpec::uniform(
            PairForm::Morse {
                depth: 1.0,
                width: 1.0,
                d0: 1.0,
            },
            MassTriple::equal(),
            Clustering::Pair13,
        ))
        .unwrap()
    }

    #[test]
    fn harmonic_vanishes_at_reference() {
        let reference = ShapePoint::new(1.0, 1.2, 1.4).unwrap();
        let v = shape_harmonic(reference, [1.0, 2.0, 3.0]).unwrap();
        assert_eq!(v.evaluate(&reference).unwrap(), 0.0);
        assert_eq!(v.gradient(&reference).unwrap(), [0.0; 3]);
    }

    #[test]
    fn harmonic_small_displacement() {
        let reference = ShapePoint::new(1.0, 1.0, 1.0).unwrap();
        let v = shape_harmonic(reference, [1.0; 3]).unwrap();
        let p = ShapePoint::new(1.1, 1.0, 1.0).unwrap();
        assert_relative_eq!(v.evaluate(&p).unwrap(), 0.005, epsilon = 1e-15);
    }

    #[test]
    fn harmonic_rejects_nonpositive_stiffness() {
        let reference = ShapePoint::new(1.0, 1.0, 1.0).unwrap();
        assert!(shape_harmonic(reference, [1.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn harmonic_is_exactly_quadratic() {
        let reference = ShapePoint::new(1.0, 1.3, 1.1).unwrap();
        let v = shape_harmonic(reference, [0.7, 1.9, 2.3]).unwrap();
        for axis in 0..3 {
            let shifted = |scale: f64| {
                let mut p = reference;
                let delta = 0.125 * scale;
                match axis {
                    0 => p.r += delta,
                    1 => p.s += delta,
                    _ => p.phi += delta,
                }
                p
            };
            let one = v.evaluate(&shifted(1.0)).unwrap();
            let two = v.evaluate(&shifted(2.0)).unwrap();
            assert_relative_eq!(two, 4.0 * one, max_relative = 1e-14);
        }
    }

    #[test]
    fn harmonic_pairs_vanish_at_their_rest_lengths() {
        let m = MassTriple::equal();
        let x = [
            Vec3::new(1.0, 0.2, 0.0),
            Vec3::new(-0.3, 1.1, 0.4),
            Vec3::new(0.1, -0.5, 0.2),
        ];
        let d0 = [
            (x[0] - x[1]).norm(),
            (x[0] - x[2]).norm(),
            (x[1] - x[2]).norm(),
        ];
        let forms = d0.map(|d0| PairForm::Harmonic { k: 2.0, d0 });
        let v = Pairwise::new(PairwiseSpec {
            forms,
            masses: m,
            clustering: Clustering::Pair12,
        })
        .unwrap();
        let shape = JacobiPair::from_positions(&m, &x, Clustering::Pair12)
            .unwrap()
            .shape()
            .unwrap();
        assert!(v.evaluate(&shape).unwrap().abs() < 1e-28);
    }

    #[test]
    fn lennard_jones_minimum_at_two_to_sixth_sigma() {
        let form = PairForm::LennardJones {
            epsilon: 1.5,
            sigma: 0.8,
        };
        let (e, de) = form.energy_and_derivative(2f64.powf(1.0 / 6.0) * 0.8);
        assert_relative_eq!(e, -1.5, max_relative = 1e-14);
        assert!(de.abs() < 1e-12);
    }

    #[test]
    fn invalid_pair_parameters_rejected() {
        let spec = PairwiseSpec::uniform(
            PairForm::Morse {
                depth: 1.0,
                width: -1.0,
                d0: 1.0,
            },
            MassTriple::equal(),
            Clustering::Pair13,
        );
        assert!(Pairwise::new(spec).is_err());
    }

    #[test]
    fn morse_gradient_check_passes() {
        let report = gradient_check(&morse(), &ShapeSampler::default(), 100, 1e-5, 1e-6, 7);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn harmonic_gradient_check_is_tight() {
        let reference = ShapePoint::new(1.0, 1.0, 1.2).unwrap();
        let v = shape_harmonic(reference, [1.0, 2.0, 0.5]).unwrap();
        let report = gradient_check(&v, &ShapeSampler::default(), 100, 1e-5, 1e-6, 3);
        assert!(report.max_error < 1e-10, "{report}");
    }

    struct FlippedGradient<V>(V);

    impl<V: PotentialModel> PotentialModel for FlippedGradient<V> {
        fn evaluate(&self, p: &ShapePoint) -> Result<f64> {
            self.0.evaluate(p)
        }

        fn gradient(&self, p: &ShapePoint) -> Result<[f64; 3]> {
            Ok(self.0.gradient(p)?.map(|g| -g))
        }
    }

    #[test]
    fn sign_flipped_gradient_is_reported() {
        let reference = ShapePoint::new(1.0, 1.0, 1.2).unwrap();
        let v = FlippedGradient(shape_harmonic(reference, [3.0, 3.0, 3.0]).unwrap());
        let report = gradient_check(&v, &ShapeSampler::default(), 50, 1e-5, 1e-6, 11);
        assert!(!report.passed());
        assert!(report.max_error > 0.5, "{report}");
    }
}
