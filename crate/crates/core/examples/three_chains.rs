//! Prime decomposition of the join-meet ideal of three chains.

use jmlat::decomposition::{verify_theorem2, Conclusion};
use jmlat::groebner::Budget;

fn main() -> jmlat::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("chain length"))
        .collect();
    let [n, m, r] = match args[..] {
        [n, m, r] => [n, m, r],
        _ => [3, 1, 1],
    };
    let cert = verify_theorem2(n, m, r, Budget::default())?;
    for c in &cert.components {
        println!("{}: {} generators", c.label, c.generators.len());
    }
    for p in &cert.primes {
        println!("prime {}: {}", p.label, p.generators.join(", "));
    }
    match &cert.conclusion {
        Conclusion::Radical => println!("intersection equals the ideal; radical"),
        Conclusion::Failed(why) => println!("failed: {why}"),
    }
    Ok(())
}
