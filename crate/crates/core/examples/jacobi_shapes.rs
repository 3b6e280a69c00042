// Positions to Jacobi vectors to shape coordinates and back.

use triatomic::kinematics::{interatomic_distances, Clustering, JacobiPair, MassTriple, Vec3};

pub fn run_example() -> triatomic::Result<()> {
    let masses = MassTriple::new(1.0, 16.0, 1.0)?;
    let x = [
        Vec3::new(0.96, 0.0, 0.0),
        Vec3::new(0.0, 0.0, 0.0),
        Vec3::new(-0.24, 0.93, 0.0),
    ];

    for clustering in Clustering::ALL {
        let pair = JacobiPair::from_positions(&masses, &x, clustering)?;
        let shape = pair.shape()?;
        let w = shape.to_w();
        println!(
            "{clustering}: r = {:.6}, s = {:.6}, phi = {:.6}, w = ({:.6}, {:.6}, {:.6})",
            shape.r, shape.s, shape.phi, w.w1, w.w2, w.w3
        );

        let d = interatomic_distances(&masses, clustering, &shape);
        let direct = [
            (x[0] - x[1]).norm(),
            (x[0] - x[2]).norm(),
            (x[1] - x[2]).norm(),
        ];
        let gap = d
            .iter()
            .zip(&direct)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        println!("    distances {d:.6?}, deviation from positions {gap:.1e}");
        assert!(gap < 1e-12);
    }

    let pair = JacobiPair::from_positions(&masses, &x, Clustering::Pair13)?;
    let back = pair.to_positions(&masses, Clustering::Pair13);
    let com = (x[0] * 1.0 + x[1] * 16.0 + x[2] * 1.0) / masses.total();
    let err = (0..3)
        .map(|i| (back[i] - (x[i] - com)).amax())
        .fold(0.0, f64::max);
    println!("round trip through the Jacobi pair: {err:.1e}");
    assert!(err < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> triatomic::Result<()> {
    run_example()
}
