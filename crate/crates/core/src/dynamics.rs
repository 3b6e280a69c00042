//! Holonomy-reduced Hamiltonian dynamics on `T*Q`, `Q = R^3_+ x S^1`.
//!
//! The reduced Hamiltonian is
//!
//! ```text
//! H = p_r^2/2 + p_s^2/2 + (1/r^2 + 1/s^2) p_phi^2/2
//!     - p_phi p_gamma / r^2 + p_gamma^2 / (2 r^2) + V(r, s, phi)
//! ```
//!
//! `gamma` is cyclic, so `p_gamma` (the angular momentum about the plane
//! normal) is conserved. Fixing `p_gamma = mu` and dropping `gamma` gives
//! the three-degree-of-freedom system of [`MuFlow`]. [`FullFlow`] integrates
//! Newton's equations for the Jacobi vectors directly and serves as an
//! independent check on both.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::connection::gauge_potential;
use crate::error::{Error, Result};
use crate::kinematics::{wrap_angle, FullState, JacobiPair, ShapePoint, Vec3};
use crate::potentials::PotentialModel;

/// Distance of `phi` from `{0, pi}` at which integration stops.
pub const PHI_MARGIN: f64 = 1e-6;
/// Smallest `r` or `s` accepted during integration.
pub const LENGTH_MARGIN: f64 = 1e-9;
/// Convergence tolerance of the implicit midpoint fixed-point iteration.
pub const MIDPOINT_TOLERANCE: f64 = 1e-13;
pub const MIDPOINT_MAX_ITERATIONS: usize = 50;
/// Central-difference step of the full-space force.
pub const FULL_FORCE_STEP: f64 = 1e-6;
/// Allowed off-normal angular momentum in [`project_full_to_reduced`].
pub const PLANARITY_TOLERANCE: f64 = 1e-8;

/// A point of `T*Q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedState {
    pub r: f64,
    pub s: f64,
    pub phi: f64,
    /// Unwrapped fiber angle.
    pub gamma: f64,
    pub p_r: f64,
    pub p_s: f64,
    pub p_phi: f64,
    pub p_gamma: f64,
}

impl ReducedState {
    pub fn new(shape: ShapePoint, gamma: f64, momenta: [f64; 4]) -> Self {
        Self {
            r: shape.r,
            s: shape.s,
            phi: shape.phi,
            gamma,
            p_r: momenta[0],
            p_s: momenta[1],
            p_phi: momenta[2],
            p_gamma: momenta[3],
        }
    }

    pub fn shape(&self) -> ShapePoint {
        ShapePoint {
            r: self.r,
            s: self.s,
            phi: self.phi,
        }
    }

    pub fn momenta(&self) -> [f64; 4] {
        [self.p_r, self.p_s, self.p_phi, self.p_gamma]
    }

    pub fn to_array(&self) -> [f64; 8] {
        [
            self.r,
            self.s,
            self.phi,
            self.gamma,
            self.p_r,
            self.p_s,
            self.p_phi,
            self.p_gamma,
        ]
    }

    pub fn from_array(x: [f64; 8]) -> Self {
        Self {
            r: x[0],
            s: x[1],
            phi: x[2],
            gamma: x[3],
            p_r: x[4],
            p_s: x[5],
            p_phi: x[6],
            p_gamma: x[7],
        }
    }

    /// The same state on the `p_gamma` level set, with `gamma` dropped.
    pub fn to_mu(&self) -> ReducedStateMu {
        ReducedStateMu {
            r: self.r,
            s: self.s,
            phi: self.phi,
            p_r: self.p_r,
            p_s: self.p_s,
            p_phi: self.p_phi,
            mu: self.p_gamma,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.shape().validate()?;
        if !self.to_array().iter().all(|x| x.is_finite()) {
            return Err(Error::DomainError("non-finite reduced state".into()));
        }
        Ok(())
    }
}

/// A point of the `S^1`-reduced phase space at momentum level `mu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedStateMu {
    pub r: f64,
    pub s: f64,
    pub phi: f64,
    pub p_r: f64,
    pub p_s: f64,
    pub p_phi: f64,
    pub mu: f64,
}

impl ReducedStateMu {
    pub fn shape(&self) -> ShapePoint {
        ShapePoint {
            r: self.r,
            s: self.s,
            phi: self.phi,
        }
    }

    /// Lifts back to `T*Q` with the given fiber angle.
    pub fn with_gamma(&self, gamma: f64) -> ReducedState {
        ReducedState {
            r: self.r,
            s: self.s,
            phi: self.phi,
            gamma,
            p_r: self.p_r,
            p_s: self.p_s,
            p_phi: self.p_phi,
            p_gamma: self.mu,
        }
    }
}

fn kinetic(r: f64, s: f64, p_r: f64, p_s: f64, p_phi: f64, p_gamma: f64) -> f64 {
    let (ir2, is2) = (1.0 / (r * r), 1.0 / (s * s));
    0.5 * p_r * p_r + 0.5 * p_s * p_s + 0.5 * (ir2 + is2) * p_phi * p_phi - ir2 * p_phi * p_gamma
        + 0.5 * ir2 * p_gamma * p_gamma
}

/// Holonomy-reduced Hamiltonian.
pub fn hamiltonian(st: &ReducedState, v: &dyn PotentialModel) -> Result<f64> {
    Ok(kinetic(st.r, st.s, st.p_r, st.p_s, st.p_phi, st.p_gamma) + v.evaluate(&st.shape())?)
}

/// Hamiltonian of zero angular momentum motion. Rejects `p_gamma != 0`.
pub fn zero_momentum_hamiltonian(st: &ReducedState, v: &dyn PotentialModel) -> Result<f64> {
    if st.p_gamma != 0.0 {
        return Err(Error::DomainError(format!(
            "zero-momentum Hamiltonian evaluated at p_gamma = {}",
            st.p_gamma
        )));
    }
    let (ir2, is2) = (1.0 / (st.r * st.r), 1.0 / (st.s * st.s));
    Ok(0.5 * st.p_r * st.p_r
        + 0.5 * st.p_s * st.p_s
        + 0.5 * (ir2 + is2) * st.p_phi * st.p_phi
        + v.evaluate(&st.shape())?)
}

/// Hamiltonian of the `mu` system.
pub fn hamiltonian_mu(st: &ReducedStateMu, v: &dyn PotentialModel) -> Result<f64> {
    Ok(kinetic(st.r, st.s, st.p_r, st.p_s, st.p_phi, st.mu) + v.evaluate(&st.shape())?)
}

/// Configuration velocities `(dr, ds, dphi, dgamma)` implied by the
/// momenta.
pub fn velocities_from_momenta(st: &ReducedState) -> [f64; 4] {
    let (ir2, is2) = (1.0 / (st.r * st.r), 1.0 / (st.s * st.s));
    [
        st.p_r,
        st.p_s,
        (ir2 + is2) * st.p_phi - ir2 * st.p_gamma,
        ir2 * (st.p_gamma - st.p_phi),
    ]
}

/// Hamiltonian vector field on `T*Q`, ordered like [`ReducedState::to_array`].
pub fn vector_field(st: &ReducedState, v: &dyn PotentialModel) -> Result<[f64; 8]> {
    let [dr, ds, dphi, dgamma] = velocities_from_momenta(st);
    let [v_r, v_s, v_phi] = v.gradient(&st.shape())?;
    let lever = st.p_gamma - st.p_phi;
    Ok([
        dr,
        ds,
        dphi,
        dgamma,
        lever * lever / (st.r * st.r * st.r) - v_r,
        st.p_phi * st.p_phi / (st.s * st.s * st.s) - v_s,
        -v_phi,
        0.0,
    ])
}

/// Vector field of the `mu` system, ordered `(r, s, phi, p_r, p_s, p_phi)`.
pub fn vector_field_mu(st: &ReducedStateMu, v: &dyn PotentialModel) -> Result<[f64; 6]> {
    let x = vector_field(&st.with_gamma(0.0), v)?;
    Ok([x[0], x[1], x[2], x[4], x[5], x[6]])
}

/// Kinetic energy `dq^2(v, v) / 2` of the induced metric on `Q`.
pub fn kinetic_energy(p: &ShapePoint, velocity: &[f64; 4]) -> f64 {
    let [dr, ds, dphi, dgamma] = *velocity;
    let rho2 = p.r * p.r + p.s * p.s;
    let z = crate::connection::zeta(p, dphi, dgamma);
    0.5 * (dr * dr + ds * ds + p.r * p.r * p.s * p.s / rho2 * dphi * dphi + z * z / rho2)
}

/// Momenta `(p_r, p_s, p_phi, p_gamma)` conjugate to the velocity
/// `(dr, ds, dphi, dgamma)`.
pub fn legendre_from_velocities(p: &ShapePoint, velocity: &[f64; 4]) -> [f64; 4] {
    let [dr, ds, dphi, dgamma] = *velocity;
    let s2 = p.s * p.s;
    [
        dr,
        ds,
        s2 * (dphi + dgamma),
        s2 * dphi + (p.r * p.r + s2) * dgamma,
    ]
}

/// Kaluza-Klein form of the kinetic energy: the shape metric plus the
/// squared fiber velocity `A_phi dphi + dgamma`, weighted by `r^2 + s^2`.
pub fn kaluza_klein_lagrangian(p: &ShapePoint, velocity: &[f64; 4]) -> f64 {
    let [dr, ds, dphi, dgamma] = *velocity;
    let rho2 = p.r * p.r + p.s * p.s;
    let fiber = gauge_potential(p) * dphi + dgamma;
    0.5 * (dr * dr + ds * ds + p.r * p.r * p.s * p.s / rho2 * dphi * dphi)
        + 0.5 * rho2 * fiber * fiber
}

/// Charge of the equivalent particle in the magnetic field `dA`:
/// `e = c p_gamma`.
pub fn kk_charge(st: &ReducedState, c_light: f64) -> f64 {
    c_light * st.p_gamma
}

/// Newtonian energy `(|rvec'|^2 + |svec'|^2)/2 + V`.
pub fn full_energy(st: &FullState, v: &dyn PotentialModel) -> Result<f64> {
    Ok(
        0.5 * (st.rdot.norm_squared() + st.sdot.norm_squared())
            + v.evaluate(&st.config.shape()?)?,
    )
}

/// `V(shape(rvec, svec))` for raw vectors.
pub fn cartesian_potential(v: &dyn PotentialModel, rvec: &Vec3, svec: &Vec3) -> Result<f64> {
    v.evaluate(&JacobiPair::new(*rvec, *svec)?.shape()?)
}

/// Newtonian vector field on the 12-dimensional space of Jacobi vectors and
/// velocities, ordered `(rvec, svec, rvec', svec')`. The force is a central
/// difference of `V` over the six Cartesian components, so it shares no code
/// with the analytic shape gradients.
pub fn full_vector_field(st: &FullState, v: &dyn PotentialModel) -> Result<[f64; 12]> {
    let mut q = [0.0; 6];
    q[..3].copy_from_slice(st.config.rvec().as_slice());
    q[3..].copy_from_slice(st.config.svec().as_slice());
    let energy = |q: &[f64; 6]| {
        cartesian_potential(
            v,
            &Vec3::new(q[0], q[1], q[2]),
            &Vec3::new(q[3], q[4], q[5]),
        )
    };
    let mut out = [0.0; 12];
    out[..3].copy_from_slice(st.rdot.as_slice());
    out[3..6].copy_from_slice(st.sdot.as_slice());
    for k in 0..6 {
        let mut plus = q;
        let mut minus = q;
        plus[k] += FULL_FORCE_STEP;
        minus[k] -= FULL_FORCE_STEP;
        out[6 + k] = -(energy(&plus)? - energy(&minus)?) / (2.0 * FULL_FORCE_STEP);
    }
    Ok(out)
}

/// Orthonormal basis `(e1, e2, n)` of the plane spanned by the Jacobi
/// vectors, with `e1` along the reference direction projected into the
/// plane.
fn plane_basis(pair: &JacobiPair, reference: &Vec3) -> Result<(Vec3, Vec3, Vec3)> {
    let n = pair.plane_normal();
    let in_plane = reference - n * n.dot(reference);
    if in_plane.norm() < 1e-12 * reference.norm().max(1.0) {
        return Err(Error::DomainError(
            "reference direction is normal to the plane".into(),
        ));
    }
    let e1 = in_plane.normalize();
    Ok((e1, n.cross(&e1), n))
}

/// Reduced coordinates of a planar full-space state.
///
/// `gamma` is the angle of `rvec` from `reference` (projected into the plane
/// of motion) about the plane normal, in `(-pi, pi]`.
pub fn project_full_to_reduced(st: &FullState, reference: &Vec3) -> Result<ReducedState> {
    let pair = st.config;
    let shape = pair.shape()?;
    let (e1, e2, n) = plane_basis(&pair, reference)?;
    let j = st.angular_momentum();
    let off_normal = (j - n * j.dot(&n)).norm();
    if off_normal > PLANARITY_TOLERANCE * j.norm().max(1.0) {
        return Err(Error::NonPlanarState { off_normal });
    }
    let rvec = pair.rvec();
    let svec = pair.svec();
    let gamma = rvec.dot(&e2).atan2(rvec.dot(&e1));
    let dr = rvec.dot(&st.rdot) / shape.r;
    let ds = svec.dot(&st.sdot) / shape.s;
    let dgamma = rvec.cross(&st.rdot).dot(&n) / (shape.r * shape.r);
    let dtheta = svec.cross(&st.sdot).dot(&n) / (shape.s * shape.s);
    let momenta = legendre_from_velocities(&shape, &[dr, ds, dtheta - dgamma, dgamma]);
    Ok(ReducedState::new(shape, gamma, momenta))
}

/// Inverse of [`project_full_to_reduced`]: places the state in the plane
/// spanned by orthonormal `e1, e2` with `gamma` measured from `e1`.
pub fn embed_reduced(st: &ReducedState, e1: &Vec3, e2: &Vec3) -> Result<FullState> {
    st.validate()?;
    let [dr, ds, dphi, dgamma] = velocities_from_momenta(st);
    let dir = |angle: f64| e1 * angle.cos() + e2 * angle.sin();
    let theta = st.gamma + st.phi;
    let rvec = dir(st.gamma) * st.r;
    let svec = dir(theta) * st.s;
    let rdot = dir(st.gamma) * dr + dir(st.gamma + 0.5 * PI) * (st.r * dgamma);
    let sdot = dir(theta) * ds + dir(theta + 0.5 * PI) * (st.s * (dgamma + dphi));
    Ok(FullState::new(JacobiPair::new(rvec, svec)?, rdot, sdot))
}

/// Integration scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Rk4,
    ImplicitMidpoint,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Rk4 => "rk4",
            Method::ImplicitMidpoint => "implicit-midpoint",
        })
    }
}

/// Conserved quantities recorded at each sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub energy: f64,
    pub p_gamma: f64,
    /// Full angular momentum vector; only for full-space runs.
    pub angular_momentum: Option<Vec3>,
}

/// A first-order system on `R^N` with a state type and diagnostics.
pub trait PhaseFlow<const N: usize> {
    type State: Copy;

    fn pack(&self, st: &Self::State) -> [f64; N];
    fn unpack(&self, x: &[f64; N]) -> Result<Self::State>;
    fn velocity(&self, st: &Self::State) -> Result<[f64; N]>;
    /// Fails with [`Error::DomainExit`] once the state leaves the domain.
    fn check_domain(&self, st: &Self::State) -> Result<()>;
    fn diagnostics(&self, st: &Self::State) -> Result<Diagnostics>;
}

fn check_shape_domain(p: &ShapePoint) -> Result<()> {
    if !(p.r >= LENGTH_MARGIN && p.s >= LENGTH_MARGIN) {
        return Err(Error::DomainExit(format!("r = {}, s = {}", p.r, p.s)));
    }
    if !(p.phi >= PHI_MARGIN && p.phi <= PI - PHI_MARGIN) {
        return Err(Error::DomainExit(format!(
            "phi = {} reached the collinear set",
            p.phi
        )));
    }
    Ok(())
}

/// The eight-dimensional reduced flow.
pub struct ReducedFlow<'a> {
    pub potential: &'a dyn PotentialModel,
}

impl PhaseFlow<8> for ReducedFlow<'_> {
    type State = ReducedState;

    fn pack(&self, st: &ReducedState) -> [f64; 8] {
        st.to_array()
    }

    fn unpack(&self, x: &[f64; 8]) -> Result<ReducedState> {
        Ok(ReducedState::from_array(*x))
    }

    fn velocity(&self, st: &ReducedState) -> Result<[f64; 8]> {
        check_shape_domain(&st.shape())?;
        vector_field(st, self.potential)
    }

    fn check_domain(&self, st: &ReducedState) -> Result<()> {
        check_shape_domain(&st.shape())
    }

    fn diagnostics(&self, st: &ReducedState) -> Result<Diagnostics> {
        Ok(Diagnostics {
            energy: hamiltonian(st, self.potential)?,
            p_gamma: st.p_gamma,
            angular_momentum: None,
        })
    }
}

/// The six-dimensional flow at a fixed momentum level `mu`.
pub struct MuFlow<'a> {
    pub potential: &'a dyn PotentialModel,
    pub mu: f64,
}

impl PhaseFlow<6> for MuFlow<'_> {
    type State = ReducedStateMu;

    fn pack(&self, st: &ReducedStateMu) -> [f64; 6] {
        [st.r, st.s, st.phi, st.p_r, st.p_s, st.p_phi]
    }

    fn unpack(&self, x: &[f64; 6]) -> Result<ReducedStateMu> {
        Ok(ReducedStateMu {
            r: x[0],
            s: x[1],
            phi: x[2],
            p_r: x[3],
            p_s: x[4],
            p_phi: x[5],
            mu: self.mu,
        })
    }

    fn velocity(&self, st: &ReducedStateMu) -> Result<[f64; 6]> {
        check_shape_domain(&st.shape())?;
        vector_field_mu(st, self.potential)
    }

    fn check_domain(&self, st: &ReducedStateMu) -> Result<()> {
        check_shape_domain(&st.shape())
    }

    fn diagnostics(&self, st: &ReducedStateMu) -> Result<Diagnostics> {
        Ok(Diagnostics {
            energy: hamiltonian_mu(st, self.potential)?,
            p_gamma: st.mu,
            angular_momentum: None,
        })
    }
}

/// Newtonian flow of the Jacobi vectors with finite-difference forces.
pub struct FullFlow<'a> {
    pub potential: &'a dyn PotentialModel,
}

impl PhaseFlow<12> for FullFlow<'_> {
    type State = FullState;

    fn pack(&self, st: &FullState) -> [f64; 12] {
        let mut x = [0.0; 12];
        x[..3].copy_from_slice(st.config.rvec().as_slice());
        x[3..6].copy_from_slice(st.config.svec().as_slice());
        x[6..9].copy_from_slice(st.rdot.as_slice());
        x[9..].copy_from_slice(st.sdot.as_slice());
        x
    }

    fn unpack(&self, x: &[f64; 12]) -> Result<FullState> {
        let v = |i: usize| Vec3::new(x[i], x[i + 1], x[i + 2]);
        Ok(FullState::new(JacobiPair::new(v(0), v(3))?, v(6), v(9)))
    }

    fn velocity(&self, st: &FullState) -> Result<[f64; 12]> {
        full_vector_field(st, self.potential)
    }

    fn check_domain(&self, st: &FullState) -> Result<()> {
        let shape = st
            .config
            .shape()
            .map_err(|e| Error::DomainExit(e.to_string()))?;
        check_shape_domain(&shape)
    }

    fn diagnostics(&self, st: &FullState) -> Result<Diagnostics> {
        let j = st.angular_momentum();
        Ok(Diagnostics {
            energy: full_energy(st, self.potential)?,
            p_gamma: j.dot(&st.config.plane_normal()),
            angular_momentum: Some(j),
        })
    }
}

/// Time-ordered samples with diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<S> {
    pub times: Vec<f64>,
    pub states: Vec<S>,
    pub diagnostics: Vec<Diagnostics>,
}

impl<S> Trajectory<S> {
    fn empty() -> Self {
        Self {
            times: Vec::new(),
            states: Vec::new(),
            diagnostics: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn last(&self) -> Option<&S> {
        self.states.last()
    }

    /// `max |H(t) - H(0)| / |H(0)|` (absolute when `H(0) = 0`).
    pub fn max_relative_energy_error(&self) -> f64 {
        let Some(first) = self.diagnostics.first() else {
            return 0.0;
        };
        let scale = if first.energy == 0.0 {
            1.0
        } else {
            first.energy.abs()
        };
        self.diagnostics
            .iter()
            .map(|d| (d.energy - first.energy).abs() / scale)
            .fold(0.0, f64::max)
    }

    pub fn max_p_gamma_deviation(&self) -> f64 {
        let Some(first) = self.diagnostics.first() else {
            return 0.0;
        };
        self.diagnostics
            .iter()
            .map(|d| (d.p_gamma - first.p_gamma).abs())
            .fold(0.0, f64::max)
    }

    /// Largest `|J(t) - J(0)|` for full-space runs.
    pub fn max_angular_momentum_drift(&self) -> Option<f64> {
        let j0 = self.diagnostics.first()?.angular_momentum?;
        self.diagnostics
            .iter()
            .map(|d| d.angular_momentum.map(|j| (j - j0).norm()))
            .try_fold(0.0, |acc: f64, x| x.map(|x| acc.max(x)))
    }
}

/// Integration stopped early; `partial` holds every accepted sample.
#[derive(Debug, Clone, ThisError)]
#[error("integration stopped at t = {time}: {cause}")]
pub struct IntegrationError<S: fmt::Debug> {
    pub cause: Error,
    pub time: f64,
    pub partial: Trajectory<S>,
}

fn axpy<const N: usize>(x: &[f64; N], a: f64, y: &[f64; N]) -> [f64; N] {
    std::array::from_fn(|i| x[i] + a * y[i])
}

fn rk4_step<const N: usize, F: PhaseFlow<N>>(flow: &F, x: &[f64; N], dt: f64) -> Result<[f64; N]> {
    let f = |y: &[f64; N]| -> Result<[f64; N]> { flow.velocity(&flow.unpack(y)?) };
    let k1 = f(x)?;
    let k2 = f(&axpy(x, 0.5 * dt, &k1))?;
    let k3 = f(&axpy(x, 0.5 * dt, &k2))?;
    let k4 = f(&axpy(x, dt, &k3))?;
    Ok(std::array::from_fn(|i| {
        x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
    }))
}

fn midpoint_step<const N: usize, F: PhaseFlow<N>>(
    flow: &F,
    x: &[f64; N],
    dt: f64,
) -> Result<[f64; N]> {
    let f = |y: &[f64; N]| -> Result<[f64; N]> { flow.velocity(&flow.unpack(y)?) };
    let mut next = axpy(x, dt, &f(x)?);
    let mut update = f64::INFINITY;
    for _ in 0..MIDPOINT_MAX_ITERATIONS {
        let mid: [f64; N] = std::array::from_fn(|i| 0.5 * (x[i] + next[i]));
        let candidate = axpy(x, dt, &f(&mid)?);
        let scale = candidate.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        update = (0..N)
            .map(|i| (candidate[i] - next[i]).abs())
            .fold(0.0, f64::max)
            / scale;
        next = candidate;
        if update <= MIDPOINT_TOLERANCE {
            return Ok(next);
        }
    }
    Err(Error::ConvergenceFailure {
        iterations: MIDPOINT_MAX_ITERATIONS,
        update,
    })
}

/// Integrates `n_steps` fixed steps, returning `n_steps + 1` samples.
pub fn integrate<const N: usize, F>(
    flow: &F,
    initial: F::State,
    dt: f64,
    n_steps: usize,
    method: Method,
) -> std::result::Result<Trajectory<F::State>, IntegrationError<F::State>>
where
    F: PhaseFlow<N>,
    F::State: fmt::Debug,
{
    let mut traj = Trajectory::empty();
    let fail = |cause: Error, time: f64, partial: Trajectory<F::State>| IntegrationError {
        cause,
        time,
        partial,
    };

    if !(dt > 0.0 && dt.is_finite()) {
        return Err(fail(
            Error::DomainError(format!("step {dt} must be positive")),
            0.0,
            traj,
        ));
    }
    let record = |traj: &mut Trajectory<F::State>, t: f64, st: F::State| -> Result<()> {
        flow.check_domain(&st)?;
        let diag = flow.diagnostics(&st)?;
        traj.times.push(t);
        traj.states.push(st);
        traj.diagnostics.push(diag);
        Ok(())
    };
    if let Err(e) = record(&mut traj, 0.0, initial) {
        return Err(fail(e, 0.0, traj));
    }

    let mut x = flow.pack(&initial);
    for step in 1..=n_steps {
        let t = step as f64 * dt;
        let next = match method {
            Method::Rk4 => rk4_step(flow, &x, dt),
            Method::ImplicitMidpoint => midpoint_step(flow, &x, dt),
        }
        .and_then(|y| flow.unpack(&y).map(|st| (y, st)))
        .and_then(|(y, st)| record(&mut traj, t, st).map(|_| y));
        match next {
            Ok(y) => x = y,
            Err(e) => return Err(fail(e, t, traj)),
        }
    }
    Ok(traj)
}

/// Projects every sample of a planar full-space run, unwrapping `gamma`.
pub fn project_trajectory(
    traj: &Trajectory<FullState>,
    reference: &Vec3,
) -> Result<Trajectory<ReducedState>> {
    let mut out = Trajectory::empty();
    let mut previous: Option<f64> = None;
    for (i, st) in traj.states.iter().enumerate() {
        let mut reduced = project_full_to_reduced(st, reference)?;
        if let Some(prev) = previous {
            reduced.gamma = prev + wrap_angle(reduced.gamma - prev);
        }
        previous = Some(reduced.gamma);
        out.times.push(traj.times[i]);
        out.states.push(reduced);
        out.diagnostics.push(traj.diagnostics[i]);
    }
    Ok(out)
}
