//! Ideal intersection by elimination, compared with the lcm rule for
//! monomial ideals.

use std::sync::Arc;

use jmlat::groebner::{intersect, intersect_monomial, reduced_gb, Budget, Ideal, MonomialIdeal};
use jmlat::poly::{parse_polynomial, MonomialOrder, VariableSet};

fn main() -> jmlat::Result<()> {
    let vars = Arc::new(VariableSet::new(["x", "y", "z"])?);
    let ord = MonomialOrder::grevlex(vars.len());
    let i = Ideal::parse(vars.clone(), &["x^2*y", "y*z"])?;
    let j = Ideal::parse(vars.clone(), &["x*y^2", "z^2"])?;

    let k = intersect(&i, &j, &ord, Budget::default())?;
    println!(
        "by elimination: {:?}",
        reduced_gb(&k, &ord, Budget::default())?.basis_texts()
    );

    let lead =
        |id: &Ideal| MonomialIdeal::new(id.generators().iter().map(|g| g.terms()[0].mono.clone()));
    let m = intersect_monomial(&lead(&i), &lead(&j));
    println!("by lcm:         {:?}", m.to_strings(&vars));

    let f = parse_polynomial("x^2*y^2*z", &vars, &ord)?;
    println!(
        "{} in both: {}",
        f.to_text(&vars),
        reduced_gb(&k, &ord, Budget::default())?.contains(&f)
    );
    Ok(())
}
