//! Gorenstein test for distributive lattices via pureness of the
//! join-irreducible poset.

use jmlat::families::{build_lk, build_on};
use jmlat::structure::gorenstein_report;

fn main() -> jmlat::Result<()> {
    let cases = [
        ("O3", build_on(3)?),
        ("O4", build_on(4)?),
        ("O6", build_on(6)?),
        ("L(2,2)", build_lk(&[2, 2])?),
    ];
    for (name, l) in cases {
        let r = gorenstein_report(&l);
        print!("{name}: {:?}", r.verdict);
        if let Some(w) = &r.rank.witness {
            print!(" ({w:?})");
        }
        println!();
    }
    Ok(())
}
