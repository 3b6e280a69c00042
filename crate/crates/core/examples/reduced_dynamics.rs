// Morse triatomic on the reduced phase space with both integrators.

use triatomic::dynamics::{integrate, Method, ReducedFlow, ReducedState};
use triatomic::kinematics::{Clustering, MassTriple, ShapePoint};
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
    let flow = ReducedFlow { potential: &v };
    let initial = ReducedState::new(ShapePoint::new(1.2, 1.0, 1.3)?, 0.0, [0.1, -0.2, 0.3, 0.25]);

    for method in [Method::Rk4, Method::ImplicitMidpoint] {
        let traj = integrate(&flow, initial, 1e-2, 500, method).map_err(|e| e.cause)?;
        let end = traj.last().expect("samples");
        println!(
            "{method}: t = 5, (r, s, phi) = ({:.5}, {:.5}, {:.5}), gamma = {:.5}, max |dH|/|H0| = {:.2e}, max |dp_gamma| = {:.1e}",
            end.r,
            end.s,
            end.phi,
            end.gamma,
            traj.max_relative_energy_error(),
            traj.max_p_gamma_deviation()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> triatomic::Result<()> {
    run_example()
}
