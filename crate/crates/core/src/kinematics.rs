//! Cartesian positions, mass-weighted Jacobi vectors and shape coordinates.
//!
//! Three particles at `x1, x2, x3` are reduced by translation to a pair of
//! mass-weighted Jacobi vectors `(rvec, svec)`. For the clustering `(1,3)+2`
//!
//! ```text
//! rvec = sqrt(m1 m3 / (m1 + m3)) (x1 - x3)
//! svec = sqrt(m2 (m1 + m3) / M) (x2 - (m1 x1 + m3 x3) / (m1 + m3))
//! ```
//!
//! and the other two clusterings follow by the cyclic relabeling
//! `1 -> 2 -> 3 -> 1`. With this weighting the kinetic energy of the
//! relative motion is `(|rvec'|^2 + |svec'|^2) / 2`.
//!
//! Shape space is parametrized by `(r, s, phi)` with `r = |rvec|`,
//! `s = |svec|` and `phi` the angle between the vectors, or equivalently by
//! `w = (r^2 - s^2, 2 r s cos phi, 2 r s sin phi)` with `w3 > 0`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Configurations with `|sin phi|` below this are treated as collinear.
pub const COLLINEAR_TOLERANCE: f64 = 1e-12;

/// Residual allowed when checking that a democracy rotation maps one
/// clustering onto another.
pub const DEMOCRACY_TOLERANCE: f64 = 1e-10;

/// Positive masses of the three particles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassTriple {
    m1: f64,
    m2: f64,
    m3: f64,
}

impl MassTriple {
    pub fn new(m1: f64, m2: f64, m3: f64) -> Result<Self> {
        for (i, m) in [m1, m2, m3].into_iter().enumerate() {
            if !(m.is_finite() && m > 0.0) {
                return Err(Error::InvalidMasses(format!(
                    "m{} = {m} must be positive and finite",
                    i + 1
                )));
            }
        }
        Ok(Self { m1, m2, m3 })
    }

    pub fn equal() -> Self {
        Self {
            m1: 1.0,
            m2: 1.0,
            m3: 1.0,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.m1, self.m2, self.m3]
    }

    pub fn total(&self) -> f64 {
        self.m1 + self.m2 + self.m3
    }
}

/// Which pair the first Jacobi vector connects.
///
/// Each variant is described by an ordered triple `(a, b, c)` of zero-based
/// particle indices: `rvec` points from `x_b` to `x_a` and `svec` from the
/// center of mass of `{a, b}` to `x_c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Clustering {
    /// `rvec ~ x1 - x3`, `svec ~ x2 - cm(1,3)`.
    #[serde(rename = "13+2")]
    Pair13,
    /// `rvec ~ x2 - x1`, `svec ~ x3 - cm(1,2)`.
    #[serde(rename = "12+3")]
    Pair12,
    /// `rvec ~ x3 - x2`, `svec ~ x1 - cm(2,3)`.
    #[serde(rename = "23+1")]
    Pair23,
}

impl Clustering {
    pub const ALL: [Clustering; 3] = [Clustering::Pair13, Clustering::Pair12, Clustering::Pair23];

    /// Zero-based `(a, b, c)` particle indices.
    pub fn indices(self) -> (usize, usize, usize) {
        match self {
            Clustering::Pair13 => (0, 2, 1),
            Clustering::Pair12 => (1, 0, 2),
            Clustering::Pair23 => (2, 1, 0),
        }
    }

    fn reduced_masses(self, masses: &MassTriple) -> JacobiMasses {
        let m = masses.as_array();
        let (a, b, c) = self.indices();
        let pair_total = m[a] + m[b];
        JacobiMasses {
            pair: m[a] * m[b] / pair_total,
            third: m[c] * pair_total / masses.total(),
            pair_total,
        }
    }
}

impl fmt::Display for Clustering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            Clustering::Pair13 => "13+2",
            Clustering::Pair12 => "12+3",
            Clustering::Pair23 => "23+1",
        };
        f.write_str(label)
    }
}

impl FromStr for Clustering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "13+2" | "(1,3)+2" => Ok(Clustering::Pair13),
            "12+3" | "(1,2)+3" => Ok(Clustering::Pair12),
            "23+1" | "(2,3)+1" => Ok(Clustering::Pair23),
            other => Err(Error::DomainError(format!("unknown clustering '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct JacobiMasses {
    pair: f64,
    third: f64,
    pair_total: f64,
}

/// A point of the translation-reduced configuration space: two non-parallel,
/// non-zero mass-weighted Jacobi vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiPair {
    rvec: Vec3,
    svec: Vec3,
}

fn sin_between(a: &Vec3, b: &Vec3) -> f64 {
    let scale = a.norm() * b.norm();
    if scale == 0.0 {
        0.0
    } else {
        a.cross(b).norm() / scale
    }
}

impl JacobiPair {
    pub fn new(rvec: Vec3, svec: Vec3) -> Result<Self> {
        let sin_phi = sin_between(&rvec, &svec);
        if sin_phi.is_nan() || sin_phi < COLLINEAR_TOLERANCE {
            return Err(Error::CollinearConfiguration { sin_phi });
        }
        Ok(Self { rvec, svec })
    }

    pub fn rvec(&self) -> &Vec3 {
        &self.rvec
    }

    pub fn svec(&self) -> &Vec3 {
        &self.svec
    }

    /// Mass-weighted Jacobi vectors of three Cartesian positions.
    ///
    /// Fails if the clustered pair coincides or the points are collinear.
    pub fn from_positions(
        masses: &MassTriple,
        positions: &[Vec3; 3],
        clustering: Clustering,
    ) -> Result<Self> {
        let (a, b, c) = clustering.indices();
        let separation = positions[a] - positions[b];
        let extent = positions
            .iter()
            .map(|x| (x - positions[c]).norm())
            .fold(separation.norm(), f64::max);
        if separation.norm() <= f64::EPSILON * extent.max(f64::MIN_POSITIVE) {
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            return Err(Error::CollisionalPair(i + 1, j + 1));
        }

        let (rvec, svec) = jacobi_map(masses, positions, clustering);
        Self::new(rvec, svec)
    }

    /// Positions with the center of mass at the origin.
    pub fn to_positions(&self, masses: &MassTriple, clustering: Clustering) -> [Vec3; 3] {
        let (a, b, c) = clustering.indices();
        let m = masses.as_array();
        let jm = clustering.reduced_masses(masses);

        let pair_separation = self.rvec / jm.pair.sqrt();
        let third_offset = self.svec / jm.third.sqrt();
        let pair_center = -third_offset * (m[c] / masses.total());

        let mut x = [Vec3::zeros(); 3];
        x[a] = pair_center + pair_separation * (m[b] / jm.pair_total);
        x[b] = pair_center - pair_separation * (m[a] / jm.pair_total);
        x[c] = pair_center + third_offset;
        x
    }

    pub fn shape(&self) -> Result<ShapePoint> {
        let r = self.rvec.norm();
        let s = self.svec.norm();
        let sin_part = self.rvec.cross(&self.svec).norm();
        let cos_part = self.rvec.dot(&self.svec);
        if sin_part / (r * s) < COLLINEAR_TOLERANCE {
            return Err(Error::CollinearConfiguration {
                sin_phi: sin_part / (r * s),
            });
        }
        ShapePoint::new(r, s, sin_part.atan2(cos_part))
    }

    /// Rotation of the pair inside the democracy group:
    /// `(rvec, svec) -> (cos t rvec - sin t svec, sin t rvec + cos t svec)`.
    pub fn democracy_rotate(&self, theta: f64) -> Self {
        let (sn, cs) = theta.sin_cos();
        Self {
            rvec: self.rvec * cs - self.svec * sn,
            svec: self.rvec * sn + self.svec * cs,
        }
    }

    /// Plane normal `rvec x svec / |rvec x svec|`.
    pub fn plane_normal(&self) -> Vec3 {
        self.rvec.cross(&self.svec).normalize()
    }

    /// `|rvec|^2 + |svec|^2`, the squared hyperradius.
    pub fn hyperradius_squared(&self) -> f64 {
        self.rvec.norm_squared() + self.svec.norm_squared()
    }

    fn max_deviation(&self, other: &JacobiPair) -> f64 {
        (self.rvec - other.rvec)
            .amax()
            .max((self.svec - other.svec).amax())
    }
}

/// Internal coordinates `(r, s, phi)` with `r, s > 0` and `0 < phi < pi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapePoint {
    pub r: f64,
    pub s: f64,
    pub phi: f64,
}

impl ShapePoint {
    pub fn new(r: f64, s: f64, phi: f64) -> Result<Self> {
        let p = Self { r, s, phi };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r.is_finite() && self.r > 0.0 && self.s.is_finite() && self.s > 0.0) {
            return Err(Error::DomainError(format!(
                "shape lengths must be positive (r = {}, s = {})",
                self.r, self.s
            )));
        }
        if !(self.phi > 0.0 && self.phi < PI) {
            return Err(Error::DomainError(format!(
                "shape angle phi = {} outside (0, pi)",
                self.phi
            )));
        }
        Ok(())
    }

    pub fn to_w(&self) -> WPoint {
        let (sn, cs) = self.phi.sin_cos();
        WPoint {
            w1: self.r * self.r - self.s * self.s,
            w2: 2.0 * self.r * self.s * cs,
            w3: 2.0 * self.r * self.s * sn,
        }
    }

    /// Canonical planar embedding: `rvec` along `e1`, `svec` in the
    /// `e1, e2` half plane with positive `e2` component.
    pub fn canonical_pair(&self) -> JacobiPair {
        let (sn, cs) = self.phi.sin_cos();
        JacobiPair {
            rvec: Vec3::new(self.r, 0.0, 0.0),
            svec: Vec3::new(self.s * cs, self.s * sn, 0.0),
        }
    }
}

/// Shape coordinates `w = (r^2 - s^2, 2 r s cos phi, 2 r s sin phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WPoint {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

impl WPoint {
    pub fn new(w1: f64, w2: f64, w3: f64) -> Result<Self> {
        if w3.is_nan() || w3 <= 0.0 || !w1.is_finite() || !w2.is_finite() || !w3.is_finite() {
            return Err(Error::DomainError(format!("w3 = {w3} must be positive")));
        }
        Ok(Self { w1, w2, w3 })
    }

    pub fn norm(&self) -> f64 {
        self.w1.hypot(self.w2).hypot(self.w3)
    }

    pub fn to_shape(&self) -> Result<ShapePoint> {
        if self.w3.is_nan() || self.w3 <= 0.0 {
            return Err(Error::DomainError(format!(
                "w3 = {} must be positive",
                self.w3
            )));
        }
        // r^2 + s^2 = |w|, r^2 - s^2 = w1
        let rho2 = self.norm();
        let r = (0.5 * (rho2 + self.w1)).sqrt();
        let s = (0.5 * (rho2 - self.w1)).max(0.0).sqrt();
        ShapePoint::new(r, s, self.w3.atan2(self.w2))
    }
}

/// Configuration plus Jacobi-vector velocities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullState {
    pub config: JacobiPair,
    pub rdot: Vec3,
    pub sdot: Vec3,
}

impl FullState {
    pub fn new(config: JacobiPair, rdot: Vec3, sdot: Vec3) -> Self {
        Self { config, rdot, sdot }
    }

    /// `J = rvec x rvec' + svec x svec'`.
    pub fn angular_momentum(&self) -> Vec3 {
        self.config.rvec.cross(&self.rdot) + self.config.svec.cross(&self.sdot)
    }

    /// Jacobi vectors and velocities of three particles.
    pub fn from_cartesian(
        masses: &MassTriple,
        positions: &[Vec3; 3],
        velocities: &[Vec3; 3],
        clustering: Clustering,
    ) -> Result<Self> {
        let config = JacobiPair::from_positions(masses, positions, clustering)?;
        let (rdot, sdot) = jacobi_map(masses, velocities, clustering);
        Ok(Self { config, rdot, sdot })
    }

    /// Applies the democracy rotation to positions and velocities together.
    pub fn democracy_rotate(&self, theta: f64) -> Self {
        let (sn, cs) = theta.sin_cos();
        Self {
            config: self.config.democracy_rotate(theta),
            rdot: self.rdot * cs - self.sdot * sn,
            sdot: self.rdot * sn + self.sdot * cs,
        }
    }
}

/// The linear Jacobi map, applied to positions or velocities alike.
fn jacobi_map(masses: &MassTriple, x: &[Vec3; 3], clustering: Clustering) -> (Vec3, Vec3) {
    let (a, b, c) = clustering.indices();
    let m = masses.as_array();
    let jm = clustering.reduced_masses(masses);
    let pair_center = (x[a] * m[a] + x[b] * m[b]) / jm.pair_total;
    (
        (x[a] - x[b]) * jm.pair.sqrt(),
        (x[c] - pair_center) * jm.third.sqrt(),
    )
}

/// Angle `theta` with `democracy_rotate(jacobi(from), theta) == jacobi(to)`.
///
/// `(w1, w2)` rotates by `2 theta`, which fixes `theta` modulo `pi`; the
/// remaining sign is resolved by comparing both candidates directly.
pub fn democracy_angle(
    masses: &MassTriple,
    positions: &[Vec3; 3],
    from: Clustering,
    to: Clustering,
) -> Result<f64> {
    let a = JacobiPair::from_positions(masses, positions, from)?;
    let b = JacobiPair::from_positions(masses, positions, to)?;
    if from == to {
        return Ok(0.0);
    }
    let wa = a.shape()?.to_w();
    let wb = b.shape()?.to_w();
    let scale = a.hyperradius_squared();

    let half = if wa.w1.hypot(wa.w2) > 1e-8 * scale {
        0.5 * (wb.w2.atan2(wb.w1) - wa.w2.atan2(wa.w1))
    } else {
        // (w1, w2) vanishes at the equal-length right-angle shape; fall back
        // to the least-squares angle between the two pairs.
        let sn = b.svec.dot(&a.rvec) - b.rvec.dot(&a.svec);
        let cs = b.rvec.dot(&a.rvec) + b.svec.dot(&a.svec);
        sn.atan2(cs)
    };

    let residual_of =
        |theta: f64| a.democracy_rotate(theta).max_deviation(&b) / scale.sqrt().max(1.0);
    let (theta, residual) = [half, half + PI]
        .into_iter()
        .map(|t| (wrap_angle(t), residual_of(t)))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("two candidates");

    if residual > DEMOCRACY_TOLERANCE {
        return Err(Error::NoSuchRotation { residual });
    }
    Ok(theta)
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// Squared pair distance as a quadratic form in the shape coordinates:
/// `d^2 = rr r^2 + ss s^2 + rs r s cos phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceForm {
    pub rr: f64,
    pub ss: f64,
    pub rs: f64,
}

impl DistanceForm {
    pub fn squared(&self, p: &ShapePoint) -> f64 {
        self.rr * p.r * p.r + self.ss * p.s * p.s + self.rs * p.r * p.s * p.phi.cos()
    }

    /// Gradient of `d^2` with respect to `(r, s, phi)`.
    pub fn squared_gradient(&self, p: &ShapePoint) -> [f64; 3] {
        let (sn, cs) = p.phi.sin_cos();
        [
            2.0 * self.rr * p.r + self.rs * p.s * cs,
            2.0 * self.ss * p.s + self.rs * p.r * cs,
            -self.rs * p.r * p.s * sn,
        ]
    }
}

/// Quadratic forms for `(d12, d13, d23)` under the given clustering.
pub fn distance_forms(masses: &MassTriple, clustering: Clustering) -> [DistanceForm; 3] {
    let (a, b, c) = clustering.indices();
    let m = masses.as_array();
    let jm = clustering.reduced_masses(masses);
    let cross = 1.0 / (jm.pair * jm.third).sqrt();

    // x_a - x_c = alpha_a R - S and x_b - x_c = alpha_b R - S with
    // R = rvec / sqrt(mu_pair), S = svec / sqrt(mu_third).
    let to_third = |alpha: f64| DistanceForm {
        rr: alpha * alpha / jm.pair,
        ss: 1.0 / jm.third,
        rs: -2.0 * alpha * cross,
    };
    let mut forms = [DistanceForm {
        rr: 0.0,
        ss: 0.0,
        rs: 0.0,
    }; 3];
    let slot = |i: usize, j: usize| match (i.min(j), i.max(j)) {
        (0, 1) => 0,
        (0, 2) => 1,
        _ => 2,
    };
    forms[slot(a, b)] = DistanceForm {
        rr: 1.0 / jm.pair,
        ss: 0.0,
        rs: 0.0,
    };
    forms[slot(a, c)] = to_third(m[b] / jm.pair_total);
    forms[slot(b, c)] = to_third(-m[a] / jm.pair_total);
    forms
}

/// Interatomic distances `(d12, d13, d23)` of a shape under a clustering.
pub fn interatomic_distances(
    masses: &MassTriple,
    clustering: Clustering,
    p: &ShapePoint,
) -> [f64; 3] {
    distance_forms(masses, clustering).map(|f| f.squared(p).max(0.0).sqrt())
}
