use std::f64::consts::TAU;

use nalgebra::Matrix3;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::checks::{self, CheckResult};
use super::config::{ExperimentConfig, InitialState};
use super::{CliError, ExperimentKind, Failure, Outcome, Table};
use crate::connection::{
    holonomy_of_path, horizontal_lift_full, lift_with_body_spin, FrameLift, FrameState,
};
use crate::dynamics::{
    embed_reduced, integrate, project_full_to_reduced, project_trajectory, FullFlow,
    IntegrationError, MuFlow, ReducedFlow, ReducedState, ReducedStateMu, Trajectory,
};
use crate::kinematics::{democracy_angle, FullState, JacobiPair, Vec3};
use crate::potentials::{gradient_check, PotentialModel, ShapeSampler};

/// Plane drift allowed by `lemma-check`.
pub const PLANE_DRIFT_LIMIT: f64 = 1e-8;
/// Drift the non-horizontal control lift must exceed.
pub const CONTROL_DRIFT_FLOOR: f64 = 1e-3;

pub const REDUCED_COLUMNS: [&str; 11] = [
    "t",
    "r",
    "s",
    "phi",
    "gamma",
    "gamma_mod_2pi",
    "p_r",
    "p_s",
    "p_phi",
    "p_gamma",
    "energy",
];

pub const MU_COLUMNS: [&str; 9] = [
    "t", "r", "s", "phi", "p_r", "p_s", "p_phi", "p_gamma", "energy",
];

pub const FULL_COLUMNS: [&str; 26] = [
    "t",
    "rx",
    "ry",
    "rz",
    "sx",
    "sy",
    "sz",
    "vrx",
    "vry",
    "vrz",
    "vsx",
    "vsy",
    "vsz",
    "r",
    "s",
    "phi",
    "gamma",
    "gamma_mod_2pi",
    "p_r",
    "p_s",
    "p_phi",
    "p_gamma",
    "energy",
    "jx",
    "jy",
    "jz",
];

fn reduced_table(traj: &Trajectory<ReducedState>) -> Table {
    let mut table = Table::new(&REDUCED_COLUMNS);
    for ((t, st), d) in traj.times.iter().zip(&traj.states).zip(&traj.diagnostics) {
        table.push(vec![
            *t,
            st.r,
            st.s,
            st.phi,
            st.gamma,
            st.gamma.rem_euclid(TAU),
            st.p_r,
            st.p_s,
            st.p_phi,
            st.p_gamma,
            d.energy,
        ]);
    }
    table
}

fn mu_table(traj: &Trajectory<ReducedStateMu>) -> Table {
    let mut table = Table::new(&MU_COLUMNS);
    for ((t, st), d) in traj.times.iter().zip(&traj.states).zip(&traj.diagnostics) {
        table.push(vec![
            *t, st.r, st.s, st.phi, st.p_r, st.p_s, st.p_phi, st.mu, d.energy,
        ]);
    }
    table
}

fn full_table(traj: &Trajectory<FullState>, reference: &Vec3) -> Table {
    let mut table = Table::new(&FULL_COLUMNS);
    let projected = project_trajectory(traj, reference).ok();
    for (i, st) in traj.states.iter().enumerate() {
        let d = &traj.diagnostics[i];
        let j = d.angular_momentum.unwrap_or_else(|| st.angular_momentum());
        let (r, s) = (st.config.rvec(), st.config.svec());
        let mut row = vec![traj.times[i], r.x, r.y, r.z, s.x, s.y, s.z];
        row.extend_from_slice(st.rdot.as_slice());
        row.extend_from_slice(st.sdot.as_slice());
        match &projected {
            Some(p) => {
                let red = &p.states[i];
                row.extend_from_slice(&[
                    red.r,
                    red.s,
                    red.phi,
                    red.gamma,
                    red.gamma.rem_euclid(TAU),
                    red.p_r,
                    red.p_s,
                    red.p_phi,
                    red.p_gamma,
                ]);
            }
            None => {
                // Tumbling motion has no fiber angle; shape columns only.
                let shape = st
                    .config
                    .shape()
                    .expect("accepted states are non-collinear");
                row.extend_from_slice(&[shape.r, shape.s, shape.phi]);
                row.extend_from_slice(&[f64::NAN; 5]);
                row.push(d.p_gamma);
            }
        }
        row.push(d.energy);
        row.extend_from_slice(j.as_slice());
        table.push(row);
    }
    table
}

fn conservation_summary<S>(outcome: &mut Outcome, traj: &Trajectory<S>) {
    let (Some(first), Some(last)) = (traj.diagnostics.first(), traj.diagnostics.last()) else {
        return;
    };
    outcome.note("samples", traj.len());
    outcome.note("final_time", traj.times.last().copied().unwrap_or(0.0));
    outcome.note("initial_energy", format!("{:.17e}", first.energy));
    outcome.note("final_energy", format!("{:.17e}", last.energy));
    outcome.note(
        "max_rel_energy_error",
        format!("{:.3e}", traj.max_relative_energy_error()),
    );
    outcome.note(
        "max_p_gamma_deviation",
        format!("{:.3e}", traj.max_p_gamma_deviation()),
    );
    if let Some(drift) = traj.max_angular_momentum_drift() {
        outcome.note("max_angular_momentum_drift", format!("{drift:.3e}"));
    }
}

fn finish<S, F>(
    kind: ExperimentKind,
    result: Result<Trajectory<S>, IntegrationError<S>>,
    to_table: F,
) -> Result<Outcome, Failure>
where
    S: std::fmt::Debug,
    F: Fn(&Trajectory<S>) -> Table,
{
    let mut outcome = Outcome::new(kind);
    match result {
        Ok(traj) => {
            conservation_summary(&mut outcome, &traj);
            outcome.table = Some(to_table(&traj));
            Ok(outcome)
        }
        Err(err) => {
            conservation_summary(&mut outcome, &err.partial);
            outcome.note("stopped_at", err.time);
            outcome.table = Some(to_table(&err.partial));
            outcome.passed = false;
            Err(Failure {
                error: CliError::Integration(err.to_string()),
                partial: Some(outcome),
            })
        }
    }
}

fn reference_for(config: &ExperimentConfig, fallback: Vec3) -> Vec3 {
    config.output.reference.map(Vec3::from).unwrap_or(fallback)
}

pub fn simulate(config: &ExperimentConfig) -> Result<Outcome, Failure> {
    let potential = config.potential()?;
    let v: &dyn PotentialModel = potential.as_ref();
    let integ = config.integrator;
    let kind = ExperimentKind::Simulate;
    match config.initial_state()? {
        InitialState::Reduced(st) => finish(
            kind,
            integrate(
                &ReducedFlow { potential: v },
                st,
                integ.dt,
                integ.n_steps,
                integ.method,
            ),
            reduced_table,
        ),
        InitialState::ReducedMu(st) => finish(
            kind,
            integrate(
                &MuFlow {
                    potential: v,
                    mu: st.mu,
                },
                st,
                integ.dt,
                integ.n_steps,
                integ.method,
            ),
            mu_table,
        ),
        InitialState::Cartesian {
            positions,
            velocities,
        } => {
            let full = FullState::from_cartesian(
                &config.masses()?,
                &positions,
                &velocities,
                config.clustering,
            )?;
            let reference = reference_for(config, full.config.rvec().normalize());
            let st = project_full_to_reduced(&full, &reference)?;
            finish(
                kind,
                integrate(
                    &ReducedFlow { potential: v },
                    st,
                    integ.dt,
                    integ.n_steps,
                    integ.method,
                ),
                reduced_table,
            )
        }
    }
}

pub fn simulate_full(config: &ExperimentConfig) -> Result<Outcome, Failure> {
    let potential = config.potential()?;
    let v: &dyn PotentialModel = potential.as_ref();
    let integ = config.integrator;
    let (initial, reference) = match config.initial_state()? {
        InitialState::Reduced(st) => (embed_reduced(&st, &Vec3::x(), &Vec3::y())?, Vec3::x()),
        InitialState::ReducedMu(st) => (
            embed_reduced(&st.with_gamma(0.0), &Vec3::x(), &Vec3::y())?,
            Vec3::x(),
        ),
        InitialState::Cartesian {
            positions,
            velocities,
        } => {
            let full = FullState::from_cartesian(
                &config.masses()?,
                &positions,
                &velocities,
                config.clustering,
            )?;
            let dir = full.config.rvec().normalize();
            (full, dir)
        }
    };
    let reference = reference_for(config, reference);
    finish(
        ExperimentKind::SimulateFull,
        integrate(
            &FullFlow { potential: v },
            initial,
            integ.dt,
            integ.n_steps,
            integ.method,
        ),
        |traj| full_table(traj, &reference),
    )
}

fn lift_table(lift: &FrameLift) -> Table {
    let mut table = Table::new(&[
        "t", "r", "s", "phi", "rotation", "u1x", "u1y", "u1z", "u3x", "u3y", "u3z",
    ]);
    let mut rotation = 0.0;
    for (i, st) in lift.states.iter().enumerate() {
        if i > 0 {
            rotation += crate::connection::net_in_plane_rotation(&lift.states[i - 1..=i]);
        }
        let (u1, u3) = (st.u1(), st.u3());
        table.push(vec![
            lift.times[i],
            st.shape.r,
            st.shape.s,
            st.shape.phi,
            rotation,
            u1.x,
            u1.y,
            u1.z,
            u3.x,
            u3.y,
            u3.z,
        ]);
    }
    table
}

pub fn holonomy(config: &ExperimentConfig) -> Result<Outcome, Failure> {
    let spec = config.loop_section()?;
    let (path, rect) = config.shape_loop()?;
    let mut outcome = Outcome::new(ExperimentKind::Holonomy);

    let line = holonomy_of_path(&path, spec.quadrature_points)?;
    let refined = holonomy_of_path(&path, 2 * spec.quadrature_points)?;
    outcome.note("closed", path.is_closed());
    outcome.note("delta_gamma_line_integral", format!("{line:.10}"));
    outcome.note(
        "quadrature_doubling_change",
        format!("{:.3e}", (refined - line).abs()),
    );
    if let Some(rect) = rect {
        let surface = rect.curvature_flux(spec.quadrature_points)?;
        outcome.note("delta_gamma_surface_integral", format!("{surface:.10}"));
    }
    let initial = FrameState::new(path.start(), Matrix3::identity())?;
    let lift = horizontal_lift_full(&path, &initial, spec.lift_dt)?;
    outcome.note(
        "delta_gamma_frame_lift",
        format!("{:.10}", lift.net_rotation()),
    );
    outcome.note("plane_drift", format!("{:.3e}", lift.plane_drift()));
    outcome.table = Some(lift_table(&lift));
    Ok(outcome)
}

pub fn lemma_check(config: &ExperimentConfig) -> Result<Outcome, Failure> {
    let spec = config.loop_section()?;
    let (path, _) = config.shape_loop()?;
    let mut outcome = Outcome::new(ExperimentKind::LemmaCheck);

    let initial = FrameState::new(path.start(), Matrix3::identity())?;
    let lift = horizontal_lift_full(&path, &initial, spec.lift_dt)?;
    let control = lift_with_body_spin(
        &path,
        &initial,
        spec.lift_dt,
        Vec3::new(spec.control_spin, 0.0, 0.0),
    )?;
    let drift = lift.plane_drift();
    let control_drift = control.plane_drift();

    outcome.note("plane_drift", format!("{drift:.3e}"));
    outcome.note(
        "max_lifted_angular_momentum",
        format!("{:.3e}", lift.max_angular_momentum()),
    );
    outcome.note("net_rotation", format!("{:.10}", lift.net_rotation()));
    outcome.note("control_spin", spec.control_spin);
    outcome.note("control_plane_drift", format!("{control_drift:.3e}"));
    outcome.passed = drift < PLANE_DRIFT_LIMIT
        && (spec.control_spin == 0.0 || control_drift > CONTROL_DRIFT_FLOOR);
    outcome.table = Some(lift_table(&lift));
    Ok(outcome)
}

pub fn democracy(config: &ExperimentConfig, seed: u64) -> Result<Outcome, Failure> {
    let spec = config
        .democracy
        .as_ref()
        .ok_or_else(|| CliError::Config("missing [democracy] section".into()))?;
    let masses = config.masses()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let configurations: Vec<[Vec3; 3]> = match spec.positions {
        Some(x) => vec![x.map(Vec3::from)],
        None => (0..spec.samples.max(1))
            .map(|_| checks::random_configuration(&mut rng))
            .collect(),
    };

    let mut table = Table::new(&[
        "t",
        "theta",
        "residual",
        "w3_change",
        "hyperradius_change",
        "w12_rotation_error",
    ]);
    let mut outcome = Outcome::new(ExperimentKind::Democracy);
    for (i, x) in configurations.iter().enumerate() {
        let theta = democracy_angle(&masses, x, spec.from, spec.to)?;
        let a = JacobiPair::from_positions(&masses, x, spec.from)?;
        let b = JacobiPair::from_positions(&masses, x, spec.to)?;
        let mapped = a.democracy_rotate(theta);
        let residual = (mapped.rvec() - b.rvec())
            .amax()
            .max((mapped.svec() - b.svec()).amax());
        let (wa, wb) = (a.shape()?.to_w(), b.shape()?.to_w());
        let (sn, cs) = (2.0 * theta).sin_cos();
        let rotated = (cs * wa.w1 - sn * wa.w2, sn * wa.w1 + cs * wa.w2);
        let w12_error = (rotated.0 - wb.w1).abs().max((rotated.1 - wb.w2).abs());
        table.push(vec![
            i as f64,
            theta,
            residual,
            (wa.w3 - wb.w3).abs(),
            (a.hyperradius_squared() - b.hyperradius_squared()).abs(),
            w12_error,
        ]);
    }
    let max_of = |col: &str| {
        table
            .column(col)
            .unwrap_or_default()
            .into_iter()
            .fold(0.0, f64::max)
    };
    outcome.note("from", spec.from);
    outcome.note("to", spec.to);
    outcome.note("samples", configurations.len());
    if configurations.len() == 1 {
        outcome.note("theta", format!("{:.15}", table.rows[0][1]));
    }
    outcome.note("max_residual", format!("{:.3e}", max_of("residual")));
    outcome.note("max_w3_change", format!("{:.3e}", max_of("w3_change")));
    outcome.note(
        "max_w12_rotation_error",
        format!("{:.3e}", max_of("w12_rotation_error")),
    );
    outcome.passed = max_of("residual") < crate::kinematics::DEMOCRACY_TOLERANCE;
    outcome.table = Some(table);
    Ok(outcome)
}

pub fn checks(config: &ExperimentConfig, seed: u64) -> Result<Outcome, Failure> {
    let spec = config.checks.unwrap_or_default();
    let potential = config.potential()?;
    let v: &dyn PotentialModel = potential.as_ref();
    let masses = config.masses()?;

    let gradient = gradient_check(
        v,
        &ShapeSampler::default(),
        spec.samples,
        spec.step,
        spec.tolerance,
        seed,
    );
    let results = [
        CheckResult {
            name: "potential_gradient",
            max_error: gradient.max_error,
            tolerance: spec.tolerance,
        },
        CheckResult {
            name: "vector_field_vs_hamiltonian",
            max_error: checks::vector_field_check(
                v,
                spec.samples,
                spec.step,
                seed.wrapping_add(1),
            )?,
            tolerance: spec.tolerance,
        },
        CheckResult {
            name: "legendre_consistency",
            max_error: checks::legendre_check(v, spec.samples, seed.wrapping_add(2))?,
            tolerance: 1e-12,
        },
        CheckResult {
            name: "democracy_residual",
            max_error: checks::democracy_check(&masses, spec.samples, seed.wrapping_add(3))?,
            tolerance: crate::kinematics::DEMOCRACY_TOLERANCE,
        },
        CheckResult {
            name: "w_round_trip",
            max_error: checks::w_round_trip_check(spec.samples, seed.wrapping_add(4))?,
            tolerance: 1e-12,
        },
    ];

    let mut outcome = Outcome::new(ExperimentKind::Checks);
    for r in &results {
        outcome.note(
            r.name,
            format!(
                "max error {:.3e} (tol {:e}) {}",
                r.max_error,
                r.tolerance,
                if r.passed() { "ok" } else { "FAILED" }
            ),
        );
    }
    outcome.passed = results.iter().all(CheckResult::passed);
    Ok(outcome)
}
