// The fiber velocity recast as a charge in the curvature field.

use triatomic::connection::{curvature, gauge_potential};
use triatomic::dynamics::{
    kaluza_klein_lagrangian, kinetic_energy, kk_charge, legendre_from_velocities, ReducedState,
};
use triatomic::kinematics::ShapePoint;

pub fn run_example() -> triatomic::Result<()> {
    let p = ShapePoint::new(1.2, 0.8, 1.1)?;
    let velocity = [0.3, -0.1, 0.7, 0.2];

    let metric = kinetic_energy(&p, &velocity);
    let kk = kaluza_klein_lagrangian(&p, &velocity);
    println!(
        "A_phi = {:.6}, F = {:?}",
        gauge_potential(&p),
        curvature(&p)
    );
    println!("metric kinetic energy {metric:.12}, Kaluza-Klein form {kk:.12}");
    assert!((metric - kk).abs() < 1e-12);

    let st = ReducedState::new(p, 0.0, legendre_from_velocities(&p, &velocity));
    for c in [1.0, 2.0] {
        println!("c = {c}: charge {:.6}", kk_charge(&st, c));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> triatomic::Result<()> {
    run_example()
}
