//! Runs every example so they stay in working order.

#[path = "../examples/bilinear.rs"]
mod bilinear;
#[path = "../examples/curves.rs"]
mod curves;
#[path = "../examples/energies.rs"]
mod energies;
#[path = "../examples/engines.rs"]
mod engines;
#[path = "../examples/estar_pyramid.rs"]
mod estar_pyramid;
#[path = "../examples/families.rs"]
mod families;
#[path = "../examples/growth_scan.rs"]
mod growth_scan;
#[path = "../examples/incidence_cells.rs"]
mod incidence_cells;
#[path = "../examples/minor_planes.rs"]
mod minor_planes;
#[path = "../examples/prime_field.rs"]
mod prime_field;
#[path = "../examples/rank.rs"]
mod rank;
#[path = "../examples/schur.rs"]
mod schur;
#[path = "../examples/spectrum.rs"]
mod spectrum;

#[test]
fn bilinear_runs() {
    bilinear::main();
}

#[test]
fn curves_runs() {
    curves::main();
}

#[test]
fn energies_runs() {
    energies::main();
}

#[test]
fn engines_runs() {
    engines::main();
}

#[test]
fn estar_pyramid_runs() {
    estar_pyramid::main();
}

#[test]
fn families_runs() {
    families::main();
}

#[test]
fn growth_scan_runs() {
    growth_scan::main();
}

#[test]
fn incidence_cells_runs() {
    incidence_cells::main();
}

#[test]
fn minor_planes_runs() {
    minor_planes::main();
}

#[test]
fn prime_field_runs() {
    prime_field::main();
}

#[test]
fn rank_runs() {
    rank::main();
}

#[test]
fn schur_runs() {
    schur::main();
}

#[test]
fn spectrum_runs() {
    spectrum::main();
}
