//! Divisors of p^k q^k under divisibility, matched against O_2k.

use jmlat::families::divisor_values;
use jmlat::structure::verify_theorem_5_1;

fn main() -> jmlat::Result<()> {
    let (p, q, k) = (2, 3, 2);
    for (name, v) in divisor_values(p, q, k)? {
        println!("{name} = {v}");
    }
    let cert = verify_theorem_5_1(k, p, q)?;
    println!("sizes {:?}, isomorphic: {}", cert.sizes, cert.verdict);
    for (from, to) in &cert.h1.map {
        println!("  {from} -> {to}");
    }
    Ok(())
}
