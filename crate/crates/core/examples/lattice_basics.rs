//! Build a small lattice by hand, then look for a pentagon or diamond.

use jmlat::lattice::{find_forbidden_sublattice, is_distributive, is_modular, Lattice};

fn main() -> jmlat::Result<()> {
    let pentagon = Lattice::from_covers(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("0", "c"), ("b", "1"), ("c", "1")],
    )?;
    println!("a v c = {}", pentagon.join_of("a", "c"));
    println!("b ^ c = {}", pentagon.meet_of("b", "c"));
    println!(
        "modular: {}, distributive: {}",
        is_modular(&pentagon),
        is_distributive(&pentagon)
    );
    if let Some(w) = find_forbidden_sublattice(&pentagon) {
        println!("{:?} at {:?}", w.kind, w.embedding);
    }

    let square = Lattice::from_covers(
        &["0", "x", "y", "1"],
        &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")],
    )?;
    assert!(find_forbidden_sublattice(&square).is_none());
    println!("square is distributive: {}", is_distributive(&square));
    Ok(())
}
