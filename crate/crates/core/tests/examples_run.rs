mod affine_institutions_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/affine_institutions.rs"
    ));
}

#[test]
fn affine_institutions_example_runs() {
    affine_institutions_example::run_example().expect("affine_institutions example should run");
}

mod affine_spaces_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/affine_spaces.rs"
    ));
}

#[test]
fn affine_spaces_example_runs() {
    affine_spaces_example::run_example().expect("affine_spaces example should run");
}

mod affine_systems_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/affine_systems.rs"
    ));
}

#[test]
fn affine_systems_example_runs() {
    affine_systems_example::run_example().expect("affine_systems example should run");
}

mod algebra_laws_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/algebra_laws.rs"
    ));
}

#[test]
fn algebra_laws_example_runs() {
    algebra_laws_example::run_example().expect("algebra_laws example should run");
}

mod command_line_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/command_line.rs"
    ));
}

#[test]
fn command_line_example_runs() {
    command_line_example::run_example().expect("command_line example should run");
}

mod coproduct_count_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/coproduct_count.rs"
    ));
}

#[test]
fn coproduct_count_example_runs() {
    coproduct_count_example::run_example().expect("coproduct_count example should run");
}

mod elementary_institutions_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/elementary_institutions.rs"
    ));
}

#[test]
fn elementary_institutions_example_runs() {
    elementary_institutions_example::run_example()
        .expect("elementary_institutions example should run");
}

mod finite_categories_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/finite_categories.rs"
    ));
}

#[test]
fn finite_categories_example_runs() {
    finite_categories_example::run_example().expect("finite_categories example should run");
}

mod homomorphisms_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/homomorphisms.rs"
    ));
}

#[test]
fn homomorphisms_example_runs() {
    homomorphisms_example::run_example().expect("homomorphisms example should run");
}

mod institution_lifts_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/institution_lifts.rs"
    ));
}

#[test]
fn institution_lifts_example_runs() {
    institution_lifts_example::run_example().expect("institution_lifts example should run");
}

mod institution_morphisms_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/institution_morphisms.rs"
    ));
}

#[test]
fn institution_morphisms_example_runs() {
    institution_morphisms_example::run_example().expect("institution_morphisms example should run");
}

mod points_of_algebras_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/points_of_algebras.rs"
    ));
}

#[test]
fn points_of_algebras_example_runs() {
    points_of_algebras_example::run_example().expect("points_of_algebras example should run");
}

mod spatialization_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/spatialization.rs"
    ));
}

#[test]
fn spatialization_example_runs() {
    spatialization_example::run_example().expect("spatialization example should run");
}

mod afs_files_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/afs_files.rs"
    ));
}

#[test]
fn afs_files_example_runs() {
    afs_files_example::run_example().expect("afs_files example should run");
}

mod theory_lattice_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/theory_lattice.rs"
    ));
}

#[test]
fn theory_lattice_example_runs() {
    theory_lattice_example::run_example().expect("theory_lattice example should run");
}

mod theory_morphisms_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/theory_morphisms.rs"
    ));
}

#[test]
fn theory_morphisms_example_runs() {
    theory_morphisms_example::run_example().expect("theory_morphisms example should run");
}
