// Analytic potential gradients against central differences.

use triatomic::kinematics::{Clustering, MassTriple, ShapePoint};
use triatomic::potentials::{
    gradient_check, pairwise_potential, shape_harmonic, PairForm, PairwiseSpec, PotentialModel,
    ShapeSampler,
};

pub fn run_example() -> triatomic::Result<()> {
    let masses = MassTriple::new(1.0, 2.0, 3.0)?;
    let forms = [
        PairForm::Harmonic { k: 2.0, d0: 1.1 },
        PairForm::Morse {
            depth: 1.0,
            width: 1.3,
            d0: 1.0,
        },
        PairForm::LennardJones {
            epsilon: 0.5,
            sigma: 0.6,
        },
    ];
    let models: Vec<(&str, Box<dyn PotentialModel>)> = vec![
        (
            "shape harmonic",
            Box::new(shape_harmonic(
                ShapePoint::new(1.0, 1.0, 1.5)?,
                [1.0, 2.0, 0.5],
            )?),
        ),
        (
            "mixed pairwise",
            Box::new(pairwise_potential(PairwiseSpec {
                forms,
                masses,
                clustering: Clustering::Pair12,
            })?),
        ),
    ];
    for (name, v) in &models {
        let report = gradient_check(v.as_ref(), &ShapeSampler::default(), 100, 1e-5, 1e-6, 42);
        println!("{name}: {report}");
        assert!(report.passed());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> triatomic::Result<()> {
    run_example()
}
