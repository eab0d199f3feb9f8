//! Groebner basis of the join-meet ideal of two chains glued at the ends.

use jmlat::families::build_lk;
use jmlat::groebner::{initial_ideal, reduced_gb, Budget};
use jmlat::joinmeet::{certify_radical, joinmeet_generators, OrderSpec};

fn main() -> jmlat::Result<()> {
    let (n, m) = (3, 2);
    let l = build_lk(&[n, m])?;
    let ideal = joinmeet_generators(&l);
    println!(
        "{} elements, {} generators",
        l.len(),
        ideal.generators().len()
    );
    for g in ideal.generator_texts() {
        println!("  {g}");
    }

    let ord = OrderSpec::Grevlex.resolve(&l)?;
    let gb = reduced_gb(&ideal, &ord, Budget::default())?;
    println!("reduced basis under {}:", ord.describe(ideal.vars()));
    for g in gb.basis_texts() {
        println!("  {g}");
    }
    let init = initial_ideal(&gb);
    println!("initial ideal: {:?}", init.to_strings(ideal.vars()));

    let cert = certify_radical(&l, &OrderSpec::Grevlex, Budget::default())?;
    println!("verdict: {:?}", cert.verdict);
    Ok(())
}
