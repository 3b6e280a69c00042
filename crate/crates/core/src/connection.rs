//! The mechanical connection restricted to the holonomy bundle.
//!
//! Horizontal motion (zero angular momentum) forces a rotation of the
//! Jacobi plane about its normal at the rate
//!
//! ```text
//! dgamma/dt = -A_phi dphi/dt,   A_phi = s^2 / (r^2 + s^2)
//! ```
//!
//! so the holonomy of a closed shape loop is `-∮ A_phi dphi`. The
//! full-space [`horizontal_lift_full`] reaches the same rotation without
//! using `A_phi`: it solves the zero-angular-momentum condition for the
//! frame's angular velocity from the inertia tensor at every instant.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::kinematics::{JacobiPair, ShapePoint, Vec3};

/// Gauge potential coefficient `A_phi = s^2 / (r^2 + s^2)`.
pub fn gauge_potential(p: &ShapePoint) -> f64 {
    let s2 = p.s * p.s;
    s2 / (p.r * p.r + s2)
}

/// Fiber rate of the horizontal lift of a shape velocity with angular
/// component `dphi_dt`.
pub fn horizontal_gamma_rate(p: &ShapePoint, dphi_dt: f64) -> f64 {
    -gauge_potential(p) * dphi_dt
}

/// The one-form `zeta = s^2 dphi + (r^2 + s^2) dgamma` on a velocity.
pub fn zeta(p: &ShapePoint, dphi_dt: f64, dgamma_dt: f64) -> f64 {
    p.s * p.s * dphi_dt + (p.r * p.r + p.s * p.s) * dgamma_dt
}

/// Curvature components `(dA_phi/dr, dA_phi/ds)`.
pub fn curvature(p: &ShapePoint) -> (f64, f64) {
    let (r, s) = (p.r, p.s);
    let rho2 = r * r + s * s;
    let denom = rho2 * rho2;
    (-2.0 * r * s * s / denom, 2.0 * r * r * s / denom)
}

type CurveFn = dyn Fn(f64) -> ([f64; 3], [f64; 3]) + Send + Sync;

/// One piece of a [`ShapePath`], parametrized over `t in [0, 1]`.
#[derive(Clone)]
pub enum Segment {
    /// Straight line in `(r, s, phi)`.
    Line { from: ShapePoint, to: ShapePoint },
    /// Smooth curve returning `((r, s, phi), d/dt (r, s, phi))`.
    Analytic(Arc<CurveFn>),
    /// Samples at uniform parameter spacing; derivatives by centered
    /// differences.
    Polyline(Vec<ShapePoint>),
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segment::Line { from, to } => f
                .debug_struct("Line")
                .field("from", from)
                .field("to", to)
                .finish(),
            Segment::Analytic(_) => f.write_str("Analytic(..)"),
            Segment::Polyline(points) => f.debug_tuple("Polyline").field(&points.len()).finish(),
        }
    }
}

fn to_array(p: &ShapePoint) -> [f64; 3] {
    [p.r, p.s, p.phi]
}

fn from_array(a: [f64; 3]) -> ShapePoint {
    ShapePoint {
        r: a[0],
        s: a[1],
        phi: a[2],
    }
}

impl Segment {
    pub fn analytic<F>(curve: F) -> Self
    where
        F: Fn(f64) -> ([f64; 3], [f64; 3]) + Send + Sync + 'static,
    {
        Segment::Analytic(Arc::new(curve))
    }

    /// Point and parameter derivative at `t`.
    pub fn eval(&self, t: f64) -> (ShapePoint, [f64; 3]) {
        match self {
            Segment::Line { from, to } => {
                let a = to_array(from);
                let b = to_array(to);
                let d = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
                (
                    from_array([a[0] + t * d[0], a[1] + t * d[1], a[2] + t * d[2]]),
                    d,
                )
            }
            Segment::Analytic(curve) => {
                let (x, dx) = curve(t);
                (from_array(x), dx)
            }
            Segment::Polyline(points) => {
                let n = points.len() - 1;
                let u = (t.clamp(0.0, 1.0) * n as f64).min(n as f64);
                let i = (u.floor() as usize).min(n - 1);
                let w = u - i as f64;
                let a = to_array(&points[i]);
                let b = to_array(&points[i + 1]);
                let da = polyline_derivative(points, i);
                let db = polyline_derivative(points, i + 1);
                let lerp = |x: f64, y: f64| x + w * (y - x);
                (
                    from_array([lerp(a[0], b[0]), lerp(a[1], b[1]), lerp(a[2], b[2])]),
                    [lerp(da[0], db[0]), lerp(da[1], db[1]), lerp(da[2], db[2])],
                )
            }
        }
    }

    pub fn start(&self) -> ShapePoint {
        match self {
            Segment::Polyline(points) => points[0],
            _ => self.eval(0.0).0,
        }
    }

    pub fn end(&self) -> ShapePoint {
        match self {
            Segment::Polyline(points) => points[points.len() - 1],
            _ => self.eval(1.0).0,
        }
    }

    pub fn reversed(&self) -> Self {
        match self {
            Segment::Line { from, to } => Segment::Line {
                from: *to,
                to: *from,
            },
            Segment::Analytic(curve) => {
                let curve = Arc::clone(curve);
                Segment::analytic(move |t| {
                    let (x, dx) = curve(1.0 - t);
                    (x, [-dx[0], -dx[1], -dx[2]])
                })
            }
            Segment::Polyline(points) => Segment::Polyline(points.iter().rev().copied().collect()),
        }
    }

    /// `-∫ A_phi dphi` over the segment.
    fn holonomy(&self, intervals: usize) -> Result<f64> {
        match self {
            Segment::Polyline(points) => {
                if points.len() < 3 {
                    return Err(Error::QuadratureFailure(format!(
                        "polyline with {} points; at least 3 are needed",
                        points.len()
                    )));
                }
                let h = 1.0 / (points.len() - 1) as f64;
                let values: Vec<f64> = (0..points.len())
                    .map(|i| horizontal_gamma_rate(&points[i], polyline_derivative(points, i)[2]))
                    .collect();
                Ok(sampled_simpson(&values, h))
            }
            _ => {
                let n = intervals + intervals % 2;
                let h = 1.0 / n as f64;
                let values: Vec<f64> = (0..=n)
                    .map(|i| {
                        let (p, dp) = self.eval(i as f64 * h);
                        horizontal_gamma_rate(&p, dp[2])
                    })
                    .collect();
                Ok(sampled_simpson(&values, h))
            }
        }
    }
}

/// Derivative with respect to the segment parameter at node `i`: centered in
/// the interior, second-order one-sided at the ends.
fn polyline_derivative(points: &[ShapePoint], i: usize) -> [f64; 3] {
    let n = points.len() - 1;
    let h = 1.0 / n as f64;
    let x = |k: usize| to_array(&points[k]);
    let mut d = [0.0; 3];
    for (c, dc) in d.iter_mut().enumerate() {
        *dc = if n == 1 {
            (x(1)[c] - x(0)[c]) / h
        } else if i == 0 {
            (-3.0 * x(0)[c] + 4.0 * x(1)[c] - x(2)[c]) / (2.0 * h)
        } else if i == n {
            (3.0 * x(n)[c] - 4.0 * x(n - 1)[c] + x(n - 2)[c]) / (2.0 * h)
        } else {
            (x(i + 1)[c] - x(i - 1)[c]) / (2.0 * h)
        };
    }
    d
}

/// Composite Simpson on uniformly spaced samples. An odd number of
/// intervals closes with the 3/8 rule on the last three.
fn sampled_simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    let simpson = |v: &[f64]| -> f64 {
        let m = v.len() - 1;
        let mut acc = v[0] + v[m];
        for (k, x) in v.iter().enumerate().take(m).skip(1) {
            acc += if k % 2 == 1 { 4.0 * x } else { 2.0 * x };
        }
        acc * h / 3.0
    };
    match n {
        0 => 0.0,
        1 => 0.5 * h * (values[0] + values[1]),
        _ if n.is_multiple_of(2) => simpson(values),
        3 => 3.0 * h / 8.0 * (values[0] + 3.0 * values[1] + 3.0 * values[2] + values[3]),
        _ => {
            let tail = &values[n - 3..];
            simpson(&values[..=n - 3])
                + 3.0 * h / 8.0 * (tail[0] + 3.0 * tail[1] + 3.0 * tail[2] + tail[3])
        }
    }
}

/// A piecewise path through shape space; segment `i` occupies the
/// parameter interval `[i, i + 1]`.
#[derive(Clone, Debug)]
pub struct ShapePath {
    segments: Vec<Segment>,
}

/// Endpoint mismatch tolerated between consecutive segments.
const JOIN_TOLERANCE: f64 = 1e-12;
const VALIDATION_SAMPLES: usize = 32;

impl ShapePath {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidPath("path has no segments".into()));
        }
        for (i, seg) in segments.iter().enumerate() {
            if let Segment::Polyline(points) = seg {
                if points.len() < 2 {
                    return Err(Error::InvalidPath(format!(
                        "polyline segment {i} has fewer than 2 points"
                    )));
                }
                for p in points {
                    p.validate()?;
                }
            } else {
                for k in 0..=VALIDATION_SAMPLES {
                    seg.eval(k as f64 / VALIDATION_SAMPLES as f64)
                        .0
                        .validate()?;
                }
            }
        }
        for (i, pair) in segments.windows(2).enumerate() {
            let a = to_array(&pair[0].end());
            let b = to_array(&pair[1].start());
            let gap = (0..3).map(|c| (a[c] - b[c]).abs()).fold(0.0, f64::max);
            if gap > JOIN_TOLERANCE * (1.0 + a[0].abs() + a[1].abs()) {
                return Err(Error::InvalidPath(format!(
                    "segment {i} ends {gap:e} away from the start of segment {}",
                    i + 1
                )));
            }
        }
        Ok(Self { segments })
    }

    /// Closed polygon with straight edges through the given vertices.
    pub fn polygon(vertices: &[ShapePoint]) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidPath(
                "polygon needs at least 2 vertices".into(),
            ));
        }
        let segments = (0..vertices.len())
            .map(|i| Segment::Line {
                from: vertices[i],
                to: vertices[(i + 1) % vertices.len()],
            })
            .collect();
        Self::new(segments)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn start(&self) -> ShapePoint {
        self.segments[0].start()
    }

    pub fn end(&self) -> ShapePoint {
        self.segments[self.segments.len() - 1].end()
    }

    pub fn is_closed(&self) -> bool {
        let a = to_array(&self.start());
        let b = to_array(&self.end());
        (0..3).all(|c| (a[c] - b[c]).abs() <= JOIN_TOLERANCE * (1.0 + a[0].abs() + a[1].abs()))
    }

    /// Parameter length (number of segments).
    pub fn duration(&self) -> f64 {
        self.segments.len() as f64
    }

    /// Point and velocity at global parameter `t`; an integer `t` belongs to
    /// the segment starting there unless it is the path's end.
    pub fn eval(&self, t: f64) -> (ShapePoint, [f64; 3]) {
        let n = self.segments.len();
        let i = (t.floor().max(0.0) as usize).min(n - 1);
        self.segments[i].eval(t - i as f64)
    }

    pub fn reversed(&self) -> Self {
        Self {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
        }
    }

    pub fn concat(&self, other: &ShapePath) -> Result<Self> {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        Self::new(segments)
    }
}

/// `Δγ = -∫ A_phi dphi` along the path by composite Simpson,
/// `intervals_per_segment` subintervals (rounded up to even) per smooth
/// segment. Polyline segments integrate over their own samples.
pub fn holonomy_of_path(path: &ShapePath, intervals_per_segment: usize) -> Result<f64> {
    if intervals_per_segment < 2 {
        return Err(Error::QuadratureFailure(format!(
            "{intervals_per_segment} quadrature intervals per segment; at least 2 are needed"
        )));
    }
    path.segments
        .iter()
        .map(|seg| seg.holonomy(intervals_per_segment))
        .sum()
}

/// Which coordinate varies together with `phi` in a [`ShapeRectangle`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoordinatePlane {
    /// `(r, phi)` varies, `s` fixed.
    RPhi { s: f64 },
    /// `(s, phi)` varies, `r` fixed.
    SPhi { r: f64 },
}

/// Coordinate rectangle `[u0, u1] x [phi0, phi1]`, traversed
/// `(u0, phi0) -> (u1, phi0) -> (u1, phi1) -> (u0, phi1) -> (u0, phi0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeRectangle {
    pub plane: CoordinatePlane,
    pub u: (f64, f64),
    pub phi: (f64, f64),
}

impl ShapeRectangle {
    fn point(&self, u: f64, phi: f64) -> Result<ShapePoint> {
        match self.plane {
            CoordinatePlane::RPhi { s } => ShapePoint::new(u, s, phi),
            CoordinatePlane::SPhi { r } => ShapePoint::new(r, u, phi),
        }
    }

    pub fn corners(&self) -> Result<[ShapePoint; 4]> {
        let (u0, u1) = self.u;
        let (p0, p1) = self.phi;
        Ok([
            self.point(u0, p0)?,
            self.point(u1, p0)?,
            self.point(u1, p1)?,
            self.point(u0, p1)?,
        ])
    }

    pub fn boundary(&self) -> Result<ShapePath> {
        ShapePath::polygon(&self.corners()?)
    }

    /// Holonomy of the boundary as the surface integral `-∬ F_{u phi} du dphi`
    /// (2-D composite Simpson, `n` intervals per side).
    pub fn curvature_flux(&self, n: usize) -> Result<f64> {
        self.corners()?;
        let n = n.max(2) + n % 2;
        let (u0, u1) = self.u;
        let (p0, p1) = self.phi;
        let hu = (u1 - u0) / n as f64;
        let hp = (p1 - p0) / n as f64;
        let weight = |k: usize| match k {
            0 => 1.0,
            k if k == n => 1.0,
            k if k % 2 == 1 => 4.0,
            _ => 2.0,
        };
        let mut acc = 0.0;
        for i in 0..=n {
            for j in 0..=n {
                let p = self.point(u0 + i as f64 * hu, p0 + j as f64 * hp)?;
                let (f_r, f_s) = curvature(&p);
                let f = match self.plane {
                    CoordinatePlane::RPhi { .. } => f_r,
                    CoordinatePlane::SPhi { .. } => f_s,
                };
                acc += weight(i) * weight(j) * f;
            }
        }
        Ok(-acc * hu * hp / 9.0)
    }
}

/// Shape plus a body frame whose columns are `u1, u2, u3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameState {
    pub shape: ShapePoint,
    pub frame: Matrix3<f64>,
}

/// Orthogonality and determinant tolerance for [`FrameState::new`].
pub const FRAME_TOLERANCE: f64 = 1e-10;

/// Orthogonality drift within one lift step that triggers
/// [`Error::StepTooLarge`].
pub const STEP_DRIFT_TOLERANCE: f64 = 1e-8;

pub fn orthogonality_defect(u: &Matrix3<f64>) -> f64 {
    (u.transpose() * u - Matrix3::identity()).amax()
}

impl FrameState {
    pub fn new(shape: ShapePoint, frame: Matrix3<f64>) -> Result<Self> {
        shape.validate()?;
        let defect = orthogonality_defect(&frame);
        let det = frame.determinant();
        if defect > FRAME_TOLERANCE || (det - 1.0).abs() > FRAME_TOLERANCE {
            return Err(Error::DomainError(format!(
                "frame is not a rotation (orthogonality defect {defect:e}, det {det})"
            )));
        }
        Ok(Self { shape, frame })
    }

    pub fn u1(&self) -> Vec3 {
        self.frame.column(0).into_owned()
    }

    pub fn u3(&self) -> Vec3 {
        self.frame.column(2).into_owned()
    }

    /// `rvec = r u1`, `svec = s cos(phi) u1 + s sin(phi) u2`.
    pub fn jacobi_pair(&self) -> JacobiPair {
        let body = self.shape.canonical_pair();
        JacobiPair::new(self.frame * body.rvec(), self.frame * body.svec())
            .expect("rotation of a valid shape is non-collinear")
    }
}

fn skew(w: &Vec3) -> Matrix3<f64> {
    Matrix3::new(0.0, -w.z, w.y, w.z, 0.0, -w.x, -w.y, w.x, 0.0)
}

/// Body-frame angular velocity that cancels the angular momentum generated
/// by the shape velocity `dq = (dr, ds, dphi)`.
pub fn compensating_angular_velocity(p: &ShapePoint, dq: &[f64; 3]) -> Vec3 {
    let (sn, cs) = p.phi.sin_cos();
    let r_body = Vec3::new(p.r, 0.0, 0.0);
    let s_body = Vec3::new(p.s * cs, p.s * sn, 0.0);
    let r_dot = Vec3::new(dq[0], 0.0, 0.0);
    let s_dot = Vec3::new(
        dq[1] * cs - p.s * sn * dq[2],
        dq[1] * sn + p.s * cs * dq[2],
        0.0,
    );
    let shape_momentum = r_body.cross(&r_dot) + s_body.cross(&s_dot);

    let inertia = [r_body, s_body].iter().fold(Matrix3::zeros(), |acc, x| {
        acc + Matrix3::identity() * x.norm_squared() - x * x.transpose()
    });
    let inverse = inertia
        .try_inverse()
        .expect("inertia tensor of a non-collinear shape is invertible");
    -(inverse * shape_momentum)
}

/// Frames sampled along a lifted path.
#[derive(Debug, Clone)]
pub struct FrameLift {
    pub times: Vec<f64>,
    pub states: Vec<FrameState>,
    /// Angular momentum of the lifted curve at each sample.
    pub angular_momentum: Vec<Vec3>,
}

impl FrameLift {
    /// Accumulated rotation of `u1` about `u3(0)`.
    pub fn net_rotation(&self) -> f64 {
        net_in_plane_rotation(&self.states)
    }

    pub fn plane_drift(&self) -> f64 {
        plane_drift(&self.states)
    }

    pub fn max_angular_momentum(&self) -> f64 {
        self.angular_momentum
            .iter()
            .map(|j| j.norm())
            .fold(0.0, f64::max)
    }
}

/// Integrates the horizontal lift of `path` starting from `initial`.
///
/// The frame obeys `dU/dt = U [omega]x` with `omega` from
/// [`compensating_angular_velocity`]; each step is a classical fourth-order
/// update followed by projection back onto SO(3). Steps never straddle
/// segment boundaries.
pub fn horizontal_lift_full(path: &ShapePath, initial: &FrameState, dt: f64) -> Result<FrameLift> {
    lift_with_body_spin(path, initial, dt, Vec3::zeros())
}

/// Like [`horizontal_lift_full`] but adds a constant body-frame angular
/// velocity `spin` to the horizontal one. A nonzero in-plane spin breaks
/// horizontality.
pub fn lift_with_body_spin(
    path: &ShapePath,
    initial: &FrameState,
    dt: f64,
    spin: Vec3,
) -> Result<FrameLift> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::DomainError(format!(
            "lift step {dt} must be positive"
        )));
    }
    let start = path.start();
    let gap = (start.r - initial.shape.r)
        .abs()
        .max((start.s - initial.shape.s).abs())
        .max((start.phi - initial.shape.phi).abs());
    if gap > JOIN_TOLERANCE * (1.0 + start.r + start.s) {
        return Err(Error::InvalidPath(format!(
            "initial frame shape is {gap:e} away from the path start"
        )));
    }
    FrameState::new(initial.shape, initial.frame)?;

    let omega_at = |t: f64| -> Vec3 {
        let (p, dq) = path.eval(t);
        compensating_angular_velocity(&p, &dq) + spin
    };
    let momentum_at = |t: f64, u: &Matrix3<f64>, omega: &Vec3| -> Vec3 {
        let (p, dq) = path.eval(t);
        let (sn, cs) = p.phi.sin_cos();
        let r_body = Vec3::new(p.r, 0.0, 0.0);
        let s_body = Vec3::new(p.s * cs, p.s * sn, 0.0);
        let r_dot = Vec3::new(dq[0], 0.0, 0.0) + omega.cross(&r_body);
        let s_dot = Vec3::new(
            dq[1] * cs - p.s * sn * dq[2],
            dq[1] * sn + p.s * cs * dq[2],
            0.0,
        ) + omega.cross(&s_body);
        u * (r_body.cross(&r_dot) + s_body.cross(&s_dot))
    };

    let mut u = initial.frame;
    let mut times = vec![0.0];
    let mut states = vec![FrameState {
        shape: initial.shape,
        frame: u,
    }];
    let mut momenta = vec![momentum_at(0.0, &u, &omega_at(0.0))];

    for seg in 0..path.segments.len() {
        let steps = (1.0 / dt - 1e-9).ceil().max(1.0) as usize;
        let h = 1.0 / steps as f64;
        for k in 0..steps {
            let t0 = seg as f64 + k as f64 * h;
            // Stay inside the segment at its right end.
            let t1 = if k + 1 == steps {
                seg as f64 + 1.0 - f64::EPSILON * (seg + 1) as f64
            } else {
                t0 + h
            };
            let w1 = omega_at(t0);
            let w2 = omega_at(t0 + 0.5 * h);
            let w4 = omega_at(t1);
            let k1 = u * skew(&w1);
            let k2 = (u + k1 * (0.5 * h)) * skew(&w2);
            let k3 = (u + k2 * (0.5 * h)) * skew(&w2);
            let k4 = (u + k3 * h) * skew(&w4);
            let next = u + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);

            let drift = orthogonality_defect(&next);
            if drift > STEP_DRIFT_TOLERANCE {
                return Err(Error::StepTooLarge { drift });
            }
            u = nearest_rotation(&next);

            let shape = path.eval(t1).0;
            times.push(seg as f64 + (k + 1) as f64 * h);
            states.push(FrameState { shape, frame: u });
            momenta.push(momentum_at(t1, &u, &w4));
        }
    }
    Ok(FrameLift {
        times,
        states,
        angular_momentum: momenta,
    })
}

/// Polar projection onto SO(3).
pub fn nearest_rotation(m: &Matrix3<f64>) -> Matrix3<f64> {
    let svd = m.svd(true, true);
    let (u, v_t) = (svd.u.expect("u requested"), svd.v_t.expect("v_t requested"));
    let mut r = u * v_t;
    if r.determinant() < 0.0 {
        let mut flip = Matrix3::identity();
        flip[(2, 2)] = -1.0;
        r = u * flip * v_t;
    }
    r
}

fn angle_between(a: &Vec3, b: &Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Largest angle between the plane normal `u3(t)` and `u3(0)`.
pub fn plane_drift(states: &[FrameState]) -> f64 {
    let Some(first) = states.first() else {
        return 0.0;
    };
    let n0 = first.u3();
    states
        .iter()
        .map(|st| angle_between(&n0, &st.u3()))
        .fold(0.0, f64::max)
}

/// Unwrapped rotation of `u1` about the initial plane normal, accumulated
/// sample to sample.
pub fn net_in_plane_rotation(states: &[FrameState]) -> f64 {
    let Some(first) = states.first() else {
        return 0.0;
    };
    let normal = first.u3();
    states
        .windows(2)
        .map(|w| {
            let a = w[0].u1();
            let b = w[1].u1();
            a.cross(&b).dot(&normal).atan2(a.dot(&b))
        })
        .sum()
}

/// Closed loop of the reference benchmark: `s = 1`, `r in [1, 2]`,
/// `phi in [pi/3, 2pi/3]`. Its holonomy is `pi/10`.
pub fn reference_rectangle() -> ShapeRectangle {
    ShapeRectangle {
        plane: CoordinatePlane::RPhi { s: 1.0 },
        u: (1.0, 2.0),
        phi: (PI / 3.0, 2.0 * PI / 3.0),
    }
}
