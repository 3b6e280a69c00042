// Relabeling which pair is clustered is a rotation of the Jacobi pair.

use triatomic::kinematics::{democracy_angle, Clustering, JacobiPair, MassTriple, Vec3};

pub fn run_example() -> triatomic::Result<()> {
    let x = [
        Vec3::new(0.3, -0.2, 0.1),
        Vec3::new(-0.7, 0.4, 0.0),
        Vec3::new(0.5, 0.9, -0.3),
    ];
    for masses in [MassTriple::equal(), MassTriple::new(1.0, 16.0, 1.0)?] {
        println!("masses {:?}", masses.as_array());
        for (from, to) in [
            (Clustering::Pair13, Clustering::Pair12),
            (Clustering::Pair13, Clustering::Pair23),
            (Clustering::Pair12, Clustering::Pair23),
        ] {
            let theta = democracy_angle(&masses, &x, from, to)?;
            let a = JacobiPair::from_positions(&masses, &x, from)?;
            let b = JacobiPair::from_positions(&masses, &x, to)?;
            let mapped = a.democracy_rotate(theta);
            let residual = (mapped.rvec() - b.rvec())
                .amax()
                .max((mapped.svec() - b.svec()).amax());
            let (wa, wb) = (a.shape()?.to_w(), b.shape()?.to_w());
            println!(
                "  {from} -> {to}: theta = {theta:+.6}, residual {residual:.1e}, w3 {:.6} vs {:.6}",
                wa.w3, wb.w3
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> triatomic::Result<()> {
    run_example()
}
