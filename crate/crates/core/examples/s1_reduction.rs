// Dropping gamma: at fixed p_gamma the 6-dimensional flow reproduces the 8-dimensional one.

use triatomic::dynamics::{integrate, Method, MuFlow, ReducedFlow, ReducedState};
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

    for mu in [0.0, 0.5] {
        let full = ReducedState::new(ShapePoint::new(1.2, 1.0, 1.3)?, 0.0, [0.1, -0.2, 0.3, mu]);
        let a = integrate(
            &ReducedFlow { potential: &v },
            full,
            1e-3,
            1000,
            Method::Rk4,
        )
        .map_err(|e| e.cause)?;
        let b = integrate(
            &MuFlow { potential: &v, mu },
            full.to_mu(),
            1e-3,
            1000,
            Method::Rk4,
        )
        .map_err(|e| e.cause)?;
        let gap = a
            .states
            .iter()
            .zip(&b.states)
            .map(|(x, y)| {
                [
                    x.r - y.r,
                    x.s - y.s,
                    x.phi - y.phi,
                    x.p_r - y.p_r,
                    x.p_s - y.p_s,
                    x.p_phi - y.p_phi,
                ]
                .iter()
                .fold(0.0f64, |m, d| m.max(d.abs()))
            })
            .fold(0.0, f64::max);
        println!(
            "mu = {mu}: max deviation {gap:.2e}, final gamma {:.6}",
            a.last().unwrap().gamma
        );
        assert!(gap < 1e-10);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> triatomic::Result<()> {
    run_example()
}
