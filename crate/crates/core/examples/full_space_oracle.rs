// Cartesian integration of the Jacobi vectors checked against the reduced flow.

use triatomic::dynamics::{embed_reduced, integrate, FullFlow, Method, ReducedFlow, ReducedState};
use triatomic::kinematics::{Clustering, MassTriple, ShapePoint, Vec3};
use triatomic::potentials::{pairwise_potential, PairForm, PairwiseSpec};

pub fn run_example() -> triatomic::Result<()> {
    let morse = PairForm::Morse {
        depth: 1.0,
        width: 1.0,
        d0: 1.0,
    };
    let v = pairwise_potential(PairwiseSpec::uniform(
        morse,
        MassTriple::equal(),
        Clustering::Pair13,
    ))?;
    let (dt, steps) = (1e-3, 200);

    for p_gamma in [0.0, 0.25] {
        let reduced = ReducedState::new(
            ShapePoint::new(1.2, 1.0, 1.3)?,
            0.0,
            [0.1, -0.2, 0.3, p_gamma],
        );
        let full = embed_reduced(&reduced, &Vec3::x(), &Vec3::y())?;
        let a = integrate(
            &ReducedFlow { potential: &v },
            reduced,
            dt,
            steps,
            Method::Rk4,
        )
        .map_err(|e| e.cause)?;
        let b = integrate(&FullFlow { potential: &v }, full, dt, steps, Method::Rk4)
            .map_err(|e| e.cause)?;

        let mut gap: f64 = 0.0;
        for (x, y) in a.states.iter().zip(&b.states) {
            let shape = y.config.shape()?;
            gap = gap
                .max((x.r - shape.r).abs())
                .max((x.s - shape.s).abs())
                .max((x.phi - shape.phi).abs());
        }
        let j = b.last().unwrap().angular_momentum();
        println!(
            "p_gamma = {p_gamma}: max shape deviation {gap:.2e}, final J = ({:.2e}, {:.2e}, {:.6})",
            j.x, j.y, j.z
        );
        assert!(gap < 1e-6);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> triatomic::Result<()> {
    run_example()
}
