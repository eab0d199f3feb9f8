#![allow(dead_code)]

use std::cmp::Ordering;
use std::io::Write;
use std::time::Duration;

use jmlat::poly::{Coeff, Monomial, MonomialOrder, Polynomial};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// One status line, written past the test harness's output capture.
pub fn report(label: &str, pass: bool, detail: &str, elapsed: Duration) {
    let line = format!(
        "{label}: {} ({detail}; {:.2} s)\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

pub fn arb_precedence(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

pub fn arb_order(n: usize) -> impl Strategy<Value = MonomialOrder> {
    let n2 = n;
    prop_oneof![
        arb_precedence(n).prop_map(MonomialOrder::Lex),
        arb_precedence(n).prop_map(MonomialOrder::GrLex),
        arb_precedence(n).prop_map(MonomialOrder::GrevLex),
        (arb_precedence(n2), 1..n2.max(2)).prop_map(move |(p, cut)| {
            let cut = cut.min(p.len() - 1).max(1);
            MonomialOrder::Block(vec![
                MonomialOrder::GrevLex(p[cut..].to_vec()),
                MonomialOrder::Lex(p[..cut].to_vec()),
            ])
        }),
    ]
}

pub fn arb_monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_exp, n).prop_map(Monomial::from_exponents)
}

pub fn arb_coeff() -> impl Strategy<Value = Coeff> {
    (-5i64..=5, 1i64..=3)
        .prop_filter("nonzero", |(a, _)| *a != 0)
        .prop_map(|(a, b)| Coeff::new(a.into(), b.into()))
}

pub fn arb_poly(
    n: usize,
    max_exp: u32,
    max_terms: usize,
    ord: MonomialOrder,
) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((arb_coeff(), arb_monomial(n, max_exp)), 1..=max_terms)
        .prop_map(move |ts| Polynomial::from_terms(ts, &ord))
}

/// Textbook comparison for single-block orders, written independently of
/// the library: precedence lists the smallest variable first.
pub fn reference_cmp(ord: &MonomialOrder, a: &Monomial, b: &Monomial) -> Option<Ordering> {
    let (ea, eb) = (a.exponents(), b.exponents());
    let deg = |e: &[u32], p: &[usize]| p.iter().map(|&v| e[v]).sum::<u32>();
    let lex = |p: &[usize]| {
        for &v in p.iter().rev() {
            match ea[v].cmp(&eb[v]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    };
    Some(match ord {
        MonomialOrder::Lex(p) => lex(p),
        MonomialOrder::GrLex(p) => deg(ea, p).cmp(&deg(eb, p)).then_with(|| lex(p)),
        MonomialOrder::GrevLex(p) => deg(ea, p).cmp(&deg(eb, p)).then_with(|| {
            for &v in p {
                if ea[v] != eb[v] {
                    // more of the smallest variable means smaller
                    return eb[v].cmp(&ea[v]);
                }
            }
            Ordering::Equal
        }),
        MonomialOrder::Block(_) => return None,
    })
}

/// `sum q_i g_i + r`, evaluated with plain arithmetic.
pub fn recombine(
    quotients: &[Polynomial],
    divisors: &[Polynomial],
    remainder: &Polynomial,
    ord: &MonomialOrder,
) -> Polynomial {
    quotients
        .iter()
        .zip(divisors)
        .fold(remainder.clone(), |acc, (q, g)| {
            acc.add(&q.mul(g, ord), ord)
        })
}

pub fn scaled(p: &Polynomial, c: i64, ord: &MonomialOrder) -> Polynomial {
    let c = Coeff::from_integer(c.into());
    assert!(!c.is_zero());
    Polynomial::from_terms(
        p.terms()
            .iter()
            .map(|t| (t.coeff.clone() * c.clone(), t.mono.clone())),
        ord,
    )
}

pub fn unit() -> Coeff {
    Coeff::one()
}
