//! Write a certificate, read it back and recheck it, then tamper with it.

use jmlat::cert::{kind, recheck, Envelope};
use jmlat::families::build_lk;
use jmlat::groebner::Budget;
use jmlat::joinmeet::{certify_radical, OrderSpec};

fn main() -> jmlat::Result<()> {
    let l = build_lk(&[3, 2])?;
    let cert = certify_radical(&l, &OrderSpec::Grevlex, Budget::default())?;
    let env = Envelope::new(kind::RADICAL, &cert)?;
    let text = env.to_pretty();
    println!("payload sha256 {}", env.payload_digest());

    let back = Envelope::parse(&text)?;
    let r = recheck(&back, Budget::default())?;
    println!("recheck passed: {}", r.passed);

    let mut bad = back.clone();
    bad.payload["basis"].as_array_mut().unwrap().pop();
    let r = recheck(&bad, Budget::default())?;
    println!("after dropping a basis element: {}", r.passed);
    for c in r.checks.iter().filter(|c| !c.passed) {
        println!("  {}: {}", c.name, c.detail);
    }
    Ok(())
}
