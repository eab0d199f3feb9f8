//! The distributive lattices O_n: generator count, a squarefree basis under
//! the rank order, and the Birkhoff round trip.

use jmlat::families::build_on;
use jmlat::groebner::Budget;
use jmlat::joinmeet::{certify_radical, on_generator_count, OrderSpec};
use jmlat::structure::{birkhoff_round_trip, join_irreducibles};

fn main() -> jmlat::Result<()> {
    for n in 2..=8 {
        let l = build_on(n)?;
        let cert = certify_radical(&l, &OrderSpec::RankGrevlex, Budget::default())?;
        let iso = birkhoff_round_trip(&l)?;
        println!(
            "O{n}: {} elements, {} generators, {} join-irreducibles, {:?}, birkhoff {}",
            l.len(),
            on_generator_count(n),
            join_irreducibles(&l).len(),
            cert.verdict,
            iso.verdict
        );
    }
    Ok(())
}
