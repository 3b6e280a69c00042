mod jacobi_shapes {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/jacobi_shapes.rs"
    ));
}

#[test]
fn jacobi_shapes_example_runs() {
    jacobi_shapes::run_example().expect("jacobi_shapes example should run");
}

mod holonomy_loop {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/holonomy_loop.rs"
    ));
}

#[test]
fn holonomy_loop_example_runs() {
    holonomy_loop::run_example().expect("holonomy_loop example should run");
}

mod fixed_plane_lift {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/fixed_plane_lift.rs"
    ));
}

#[test]
fn fixed_plane_lift_example_runs() {
    fixed_plane_lift::run_example().expect("fixed_plane_lift example should run");
}

mod reduced_dynamics {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/reduced_dynamics.rs"
    ));
}

#[test]
fn reduced_dynamics_example_runs() {
    reduced_dynamics::run_example().expect("reduced_dynamics example should run");
}

mod s1_reduction {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/s1_reduction.rs"
    ));
}

#[test]
fn s1_reduction_example_runs() {
    s1_reduction::run_example().expect("s1_reduction example should run");
}

mod full_space_oracle {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/full_space_oracle.rs"
    ));
}

#[test]
fn full_space_oracle_example_runs() {
    full_space_oracle::run_example().expect("full_space_oracle example should run");
}

mod democracy_group {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/democracy_group.rs"
    ));
}

#[test]
fn democracy_group_example_runs() {
    democracy_group::run_example().expect("democracy_group example should run");
}

mod gradient_check {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/gradient_check.rs"
    ));
}

#[test]
fn gradient_check_example_runs() {
    gradient_check::run_example().expect("gradient_check example should run");
}

mod kaluza_klein {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/kaluza_klein.rs"
    ));
}

#[test]
fn kaluza_klein_example_runs() {
    kaluza_klein::run_example().expect("kaluza_klein example should run");
}
