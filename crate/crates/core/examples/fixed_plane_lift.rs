// A horizontal lift keeps the molecular plane fixed; a spinning one does not.

use nalgebra::Matrix3;
use triatomic::connection::{
    horizontal_lift_full, lift_with_body_spin, reference_rectangle, FrameState,
};
use triatomic::kinematics::Vec3;

pub fn run_example() -> triatomic::Result<()> {
    let path = reference_rectangle().boundary()?;
    let start = FrameState::new(path.start(), Matrix3::identity())?;

    let horizontal = horizontal_lift_full(&path, &start, 1e-3)?;
    println!(
        "horizontal: plane drift {:.2e}, max |J| {:.2e}",
        horizontal.plane_drift(),
        horizontal.max_angular_momentum()
    );
    assert!(horizontal.plane_drift() < 1e-8);

    let spun = lift_with_body_spin(&path, &start, 1e-3, Vec3::new(1e-2, 0.0, 0.0))?;
    println!(
        "with body spin: plane drift {:.2e}, max |J| {:.2e}",
        spun.plane_drift(),
        spun.max_angular_momentum()
    );
    assert!(spun.plane_drift() > 1e-3);
    Ok(())
}

#[allow(dead_code)]
fn main() -> triatomic::Result<()> {
    run_example()
}
