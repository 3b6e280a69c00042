// Net rotation after a closed shape loop, three ways.

use nalgebra::Matrix3;
use triatomic::connection::{
    holonomy_of_path, horizontal_lift_full, reference_rectangle, FrameState,
};

pub fn run_example() -> triatomic::Result<()> {
    let rect = reference_rectangle();
    let path = rect.boundary()?;

    let line = holonomy_of_path(&path, 64)?;
    let surface = rect.curvature_flux(64)?;
    let lift = horizontal_lift_full(
        &path,
        &FrameState::new(path.start(), Matrix3::identity())?,
        1e-3,
    )?;

    let exact = std::f64::consts::PI / 10.0;
    println!("line integral    {line:.10}");
    println!("surface integral {surface:.10}");
    println!("frame lift       {:.10}", lift.net_rotation());
    println!("pi / 10          {exact:.10}");
    for value in [line, surface, lift.net_rotation()] {
        assert!((value - exact).abs() < 1e-6);
    }

    let back = holonomy_of_path(&path.reversed(), 64)?;
    println!("reversed loop    {back:.10}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> triatomic::Result<()> {
    run_example()
}
