//! A non-modular lattice from two chains with an extra cover. Checks the
//! closed-form candidate basis, then certifies radicality directly.

use jmlat::cert::basis_check;
use jmlat::families::FamilySpec;
use jmlat::groebner::Budget;
use jmlat::joinmeet::{certify_radical, BasisSet, OrderSpec};
use jmlat::lattice::find_forbidden_sublattice;

fn main() -> jmlat::Result<()> {
    let family: FamilySpec = "glued:7,7,4,2,5".parse()?;
    let l = family.build()?;
    let w = find_forbidden_sublattice(&l).expect("glued lattices are not modular");
    println!("{:?}: {:?}", w.kind, w.elements);

    let check = basis_check(
        &family,
        BasisSet::GluedSets,
        &OrderSpec::Grevlex,
        Budget::default(),
    )?;
    println!(
        "candidate basis ({} polynomials) is a Groebner basis: {}",
        check.polynomials.len(),
        check.is_groebner
    );
    if let Some((i, j, r)) = &check.failing_pair {
        println!("  S({i},{j}) leaves {r}");
    }

    for order in [OrderSpec::Grevlex, OrderSpec::RankGrevlex] {
        let cert = certify_radical(&l, &order, Budget::default())?;
        println!(
            "{}: {} basis elements, {:?}",
            cert.order_description,
            cert.basis.len(),
            cert.verdict
        );
    }
    Ok(())
}
