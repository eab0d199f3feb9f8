//! End-to-end acceptance checks, one test per criterion. Each prints a
//! single PASS/FAIL line; expected values are recomputed here by brute
//! force wherever that is independent of the code under test.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{arb_monomial, arb_order, arb_poly, recombine, reference_cmp, report, runner, scaled};
use jmlat::decomposition::{l3_ring, verify_theorem2, Conclusion};
use jmlat::families::{build_l2_glued, build_lk, build_on, FamilySpec};
use jmlat::groebner::{
    initial_ideal, intersect, intersect_monomial, is_groebner, reduced_gb, Budget, Ideal,
    MonomialIdeal,
};
use jmlat::joinmeet::{
    certify_radical, check_distributive_via_gb, joinmeet_generators, on_generators, paper_basis,
    search_squarefree_order, BasisSet, OrderSpec, PaperBasisSpec, RadicalVerdict, SearchStrategy,
    SearchVerdict,
};
use jmlat::lattice::{find_forbidden_sublattice, is_distributive, ForbiddenKind, Lattice, Poset};
use jmlat::poly::{
    divide, normal_form, parse_polynomial, Monomial, MonomialOrder, Polynomial, VariableSet,
};
use jmlat::structure::{
    birkhoff_round_trip, gorenstein_report, join_irreducibles, rank_report, verify_theorem_5_1,
    GorensteinVerdict,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn budget() -> Budget {
    Budget::default()
}

fn finish(label: &str, failures: &[String], detail: &str, t: Instant, limit: Duration) {
    let elapsed = t.elapsed();
    let mut failures = failures.to_vec();
    if elapsed > limit {
        failures.push(format!(
            "took {:.1} s, limit {} s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ));
    }
    let detail = if failures.is_empty() {
        detail.to_string()
    } else {
        format!(
            "{}{} failing: {}",
            if detail.is_empty() {
                String::new()
            } else {
                format!("passed: {detail}; ")
            },
            failures.len(),
            failures.join("; ")
        )
    };
    report(label, failures.is_empty(), &detail, elapsed);
    assert!(failures.is_empty(), "{label}: {detail}");
}

fn text_set(v: Vec<String>) -> BTreeSet<String> {
    v.into_iter().collect()
}

#[test]
fn criterion_1_two_chain_basis() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut instances = 0;
    for n in 1..=6 {
        for m in 1..=n {
            instances += 1;
            let l = build_lk(&[n, m]).unwrap();
            let ord = OrderSpec::Grevlex.resolve(&l).unwrap();
            let set = paper_basis(&PaperBasisSpec {
                family: FamilySpec::Lk(vec![n, m]),
                which: BasisSet::L2Sets,
            })
            .unwrap();
            if !is_groebner(&set, &ord).is_groebner {
                failures.push(format!("L2({n},{m}) published set"));
            }
            let gb = reduced_gb(&joinmeet_generators(&l), &ord, budget()).unwrap();
            let init = initial_ideal(&gb);
            if !init.is_squarefree() {
                failures.push(format!("L2({n},{m}) not squarefree"));
            }
            // expected generators, spelled out by hand
            let mut want = BTreeSet::new();
            for i in 1..=n {
                for j in 1..=m {
                    want.insert(format!("a{i}*b{j}"));
                }
            }
            for i in 2..=n {
                want.insert(format!("s*a{i}*t"));
            }
            for j in 2..=m {
                want.insert(format!("s*b{j}*t"));
            }
            let got = text_set(init.to_strings(gb.vars()));
            if got != want {
                failures.push(format!("L2({n},{m}) initial ideal {got:?}"));
            }
            // the published set spans the same initial ideal
            let set_init =
                MonomialIdeal::new(set.iter().filter_map(|p| p.leading_monomial().cloned()));
            if set_init != init {
                failures.push(format!("L2({n},{m}) published leading terms"));
            }
        }
    }
    finish(
        "criterion 1 (two-chain Groebner basis)",
        &failures,
        &format!("{instances} instances, initial ideals match"),
        t,
        Duration::from_secs(30),
    );
}

/// Decomposition of `L_3(3,1,1)` as printed by an independent computer
/// algebra system.
const LISTING_3_1_1: &[&[&str]] = &[
    &["a_1-a_2", "a_1-a_3", "a_1-b_1", "a_1-c_1", "t*s-a_1^2"],
    &["a_1", "a_2", "a_3", "b_1", "t"],
    &["s", "a_1", "a_2", "a_3", "b_1"],
    &["a_1", "a_2", "a_3", "c_1", "t"],
    &["s", "a_1", "a_2", "a_3", "c_1"],
    &["b_1", "c_1", "t"],
    &["s", "b_1", "c_1"],
];

fn monic_set(gens: &[String], vars: &VariableSet, ord: &MonomialOrder) -> BTreeSet<String> {
    gens.iter()
        .map(|g| {
            parse_polynomial(g, vars, ord)
                .unwrap()
                .monic()
                .to_text(vars)
        })
        .collect()
}

#[test]
fn criterion_2_three_chain_decomposition() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let params = [
        (2, 1, 1),
        (3, 1, 1),
        (4, 1, 1),
        (5, 1, 1),
        (6, 1, 1),
        (2, 2, 1),
        (3, 2, 1),
        (3, 3, 1),
        (2, 2, 2),
    ];
    for &(n, m, r) in &params {
        let c = verify_theorem2(n, m, r, budget()).unwrap();
        if c.conclusion != Conclusion::Radical {
            failures.push(format!("({n},{m},{r}): {:?}", c.conclusion));
        }
        if (n, m, r) == (3, 1, 1) {
            let vars = l3_ring(3, 1, 1).unwrap();
            let ord = MonomialOrder::grevlex(vars.len());
            let want: BTreeSet<BTreeSet<String>> = LISTING_3_1_1
                .iter()
                .map(|comp| {
                    let texts: Vec<String> = comp.iter().map(|g| g.replace('_', "")).collect();
                    monic_set(&texts, &vars, &ord)
                })
                .collect();
            let got: BTreeSet<BTreeSet<String>> = c
                .primes
                .iter()
                .map(|p| monic_set(&p.generators, &vars, &ord))
                .collect();
            if got != want {
                failures.push(format!("(3,1,1) primes {got:?}"));
            }
        }
    }
    finish(
        "criterion 2 (three-chain prime decomposition)",
        &failures,
        "9 instances radical, (3,1,1) primes equal the reference listing",
        t,
        Duration::from_secs(600),
    );
}

/// `x, y` and `z` form a pentagon with `lo < y < z < hi` and `x` beside the chain.
fn is_pentagon(l: &Lattice, lo: &str, y: &str, z: &str, x: &str, hi: &str) -> bool {
    let id = |s: &str| l.id(s).unwrap();
    let (lo, y, z, x, hi) = (id(lo), id(y), id(z), id(x), id(hi));
    l.poset().lt(lo, y)
        && l.poset().lt(y, z)
        && l.poset().lt(z, hi)
        && !l.poset().comparable(x, y)
        && !l.poset().comparable(x, z)
        && l.join(x, y) == hi
        && l.join(x, z) == hi
        && l.meet(x, y) == lo
        && l.meet(x, z) == lo
}

#[test]
fn criterion_3_glued_lattice() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for &(n1, n2, kp, i1, i2) in &[(7, 7, 4, 2, 5), (7, 7, 4, 3, 5), (5, 5, 3, 2, 4)] {
        let tag = format!("({n1},{n2},{kp},{i1},{i2})");
        let family = FamilySpec::L2Glued { n1, n2, kp, i1, i2 };
        let l = build_l2_glued(n1, n2, kp, i1, i2).unwrap();
        let set = paper_basis(&PaperBasisSpec {
            family,
            which: BasisSet::GluedSets,
        })
        .unwrap();
        let ord = OrderSpec::Grevlex.resolve(&l).unwrap();
        let check = is_groebner(&set, &ord);
        if !check.is_groebner {
            let f = check.failing.as_ref().unwrap();
            let vars = joinmeet_generators(&l).vars().clone();
            failures.push(format!(
                "{tag} published basis: S-pair ({},{}) leaves {}",
                f.i,
                f.j,
                f.remainder.to_text(&vars)
            ));
        }
        let c = certify_radical(&l, &OrderSpec::Grevlex, budget()).unwrap();
        if c.verdict != RadicalVerdict::RadicalBySquarefree {
            failures.push(format!("{tag} radical: {:?}", c.verdict));
        } else {
            notes.push(format!("{tag} radical"));
        }
        if (n1, n2, kp, i1, i2) == (5, 5, 3, 2, 4) {
            match find_forbidden_sublattice(&l) {
                Some(w) if w.kind == ForbiddenKind::N5 && w.verify(&l) => {
                    let got: BTreeSet<&str> = w.elements.iter().map(String::as_str).collect();
                    let want: BTreeSet<&str> = ["s", "a1", "b1", "b2", "b3"].into();
                    if got != want {
                        failures.push(format!("{tag} N5 witness {got:?}"));
                    } else if !is_pentagon(&l, "s", "b1", "b2", "a1", "b3") {
                        failures.push(format!("{tag} witness is not a pentagon"));
                    } else {
                        notes.push("N5 {s,a1,b1,b2,b3}".into());
                    }
                }
                other => failures.push(format!("{tag} no N5 witness: {other:?}")),
            }
        }
    }
    finish(
        "criterion 3 (glued lattice)",
        &failures,
        &notes.join(", "),
        t,
        Duration::from_secs(60),
    );
}

fn brute_distributive(l: &Lattice) -> bool {
    let n = l.len();
    (0..n).all(|a| {
        (0..n)
            .all(|b| (0..n).all(|c| l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c))))
    })
}

fn brute_incomparable(l: &Lattice) -> usize {
    let n = l.len();
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !l.leq(a, b) && !l.leq(b, a))
        .count()
}

#[test]
fn criterion_4_interleaved_chains() {
    let t = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=8 {
        let l = build_on(n).unwrap();
        let generic = joinmeet_generators(&l);
        let closed = on_generators(n).unwrap();
        if text_set(closed.generator_texts()) != text_set(generic.generator_texts()) {
            failures.push(format!("O{n} closed form"));
        }
        if generic.generators().len() != brute_incomparable(&l) {
            failures.push(format!("O{n} generator count"));
        }
        let ord = OrderSpec::RankGrevlex.resolve(&l).unwrap();
        if !is_groebner(generic.generators(), &ord).is_groebner {
            failures.push(format!("O{n} not a Groebner basis"));
        }
        if !check_distributive_via_gb(&l) || !is_distributive(&l) || !brute_distributive(&l) {
            failures.push(format!("O{n} distributivity"));
        }
        if !birkhoff_round_trip(&l).unwrap().verdict {
            failures.push(format!("O{n} Birkhoff round trip"));
        }
    }
    finish(
        "criterion 4 (interleaved chains O_n)",
        &failures,
        "n = 2..8",
        t,
        Duration::from_secs(30),
    );
}

/// `p^i q^j` from a divisor name `p{i}q{j}`.
fn divisor_number(name: &str, p: u128, q: u128) -> u128 {
    let rest = name.strip_prefix('p').unwrap();
    let (i, j) = rest.split_once('q').unwrap();
    p.pow(i.parse().unwrap()) * q.pow(j.parse().unwrap())
}

#[test]
fn criterion_5_divisor_isomorphism() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut count = 0;
    for k in 1..=4 {
        for &(p, q) in &[(2u64, 3u64), (3, 5), (5, 7)] {
            count += 1;
            let c = verify_theorem_5_1(k, p, q).unwrap();
            if !(c.verdict && c.h2_after_h1_is_identity && c.h1_after_h2_is_identity) {
                failures.push(format!("k={k} ({p},{q})"));
                continue;
            }
            // order on O_2k against divisibility of actual integers
            let o = build_on(2 * k).unwrap();
            let h1 = &c.h1.map;
            let num = |x: &str| divisor_number(&h1[x], p as u128, q as u128);
            let images: BTreeSet<u128> = o.elements().iter().map(|x| num(x)).collect();
            if images.len() != o.len() {
                failures.push(format!("k={k} ({p},{q}) h1 not injective"));
            }
            for x in o.elements() {
                for y in o.elements() {
                    let le = o.leq(o.id(x).unwrap(), o.id(y).unwrap());
                    if le != (num(y) % num(x) == 0) {
                        failures.push(format!("k={k} ({p},{q}) {x} {y}"));
                    }
                }
            }
            let h2 = &c.h2.map;
            if h1.iter().any(|(x, d)| h2.get(d) != Some(x)) {
                failures.push(format!("k={k} ({p},{q}) maps not inverse"));
            }
        }
    }
    finish(
        "criterion 5 (divisor lattice isomorphism)",
        &failures,
        &format!("{count} instances, h1 checked against integer divisibility"),
        t,
        Duration::from_secs(5),
    );
}

/// Lengths of all maximal chains, by brute force from `leq`.
fn chain_lengths(p: &Poset) -> BTreeSet<usize> {
    let n = p.len();
    let covers = |a: usize, b: usize| p.lt(a, b) && !(0..n).any(|z| p.lt(a, z) && p.lt(z, b));
    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, usize)> = (0..n)
        .filter(|&x| !(0..n).any(|y| p.lt(y, x)))
        .map(|x| (x, 0))
        .collect();
    while let Some((x, len)) = stack.pop() {
        let up: Vec<usize> = (0..n).filter(|&y| covers(x, y)).collect();
        if up.is_empty() {
            out.insert(len);
        }
        stack.extend(up.into_iter().map(|y| (y, len + 1)));
    }
    out
}

/// Elements with exactly one lower cover, by brute force.
fn brute_join_irreducibles(l: &Lattice) -> BTreeSet<String> {
    let n = l.len();
    (0..n)
        .filter(|&x| {
            let lower = (0..n)
                .filter(|&y| {
                    l.poset().lt(y, x) && !(0..n).any(|z| l.poset().lt(y, z) && l.poset().lt(z, x))
                })
                .count();
            lower == 1
        })
        .map(|x| l.name(x).to_string())
        .collect()
}

#[test]
fn criterion_6_not_gorenstein() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let o4 = build_on(4).unwrap();
    let ji: BTreeSet<String> = join_irreducibles(&o4).elements().iter().cloned().collect();
    let want: BTreeSet<String> = ["a1", "a2", "a4", "b1", "b3"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    if ji != want || brute_join_irreducibles(&o4) != want {
        failures.push(format!("O4 join-irreducibles {ji:?}"));
    }
    for n in 4..=8 {
        let l = build_on(n).unwrap();
        let p = join_irreducibles(&l);
        if text_set(p.elements().to_vec()) != brute_join_irreducibles(&l) {
            failures.push(format!("P{n} elements"));
        }
        let r = rank_report(&p);
        let witness_ok = r.witness.as_ref().is_some_and(|w| w.validate(&p));
        if r.pure || !witness_ok {
            failures.push(format!("P{n} pure={} witness_ok={witness_ok}", r.pure));
        }
        if chain_lengths(&p).len() < 2 {
            failures.push(format!("P{n} brute force finds a pure poset"));
        }
        if gorenstein_report(&l).verdict != GorensteinVerdict::NotGorenstein {
            failures.push(format!("O{n} verdict"));
        }
    }
    finish(
        "criterion 6 (O_n not Gorenstein)",
        &failures,
        "O4 join-irreducibles match, P_n impure with validated witnesses for n = 4..8",
        t,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_7_order_search() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for (ns, expected_tested) in [([1usize, 1, 1], 120usize), ([2, 1, 1], 720)] {
        let l = build_lk(&ns).unwrap();
        let rep = search_squarefree_order(&l, &SearchStrategy::AllRevlex, budget()).unwrap();
        if rep.tested != expected_tested || rep.entries.len() != expected_tested {
            failures.push(format!("{ns:?} swept {} of {expected_tested}", rep.tested));
        }
        let recount = rep
            .entries
            .iter()
            .filter(|e| e.initial_ideal.iter().all(|m| !m.contains('^')))
            .count();
        if recount != rep.squarefree_count
            || rep
                .entries
                .iter()
                .any(|e| e.squarefree == e.initial_ideal.iter().any(|m| m.contains('^')))
        {
            failures.push(format!(
                "{ns:?} squarefree flags disagree with initial ideals"
            ));
        }
        let verdict = match &rep.verdict {
            SearchVerdict::FoundOrder { precedence, .. } => {
                format!("found {}", precedence.join("<"))
            }
            SearchVerdict::NoneFound { tested } => format!("none of {tested}"),
        };
        if ns == [1, 1, 1] && !matches!(rep.verdict, SearchVerdict::NoneFound { .. }) {
            failures.push(format!("L3(1,1,1): {verdict}"));
        }
        detail.push(format!("L3{ns:?}: {verdict}"));
    }
    finish(
        "criterion 7 (squarefree order search)",
        &failures,
        &detail.join(", "),
        t,
        Duration::from_secs(120),
    );
}

fn canonicity_instances() -> Vec<Ideal> {
    let mut out: Vec<Ideal> = [
        build_lk(&[2, 1]),
        build_lk(&[2, 2]),
        build_lk(&[3, 2]),
        build_lk(&[1, 1, 1]),
        build_lk(&[2, 1, 1]),
        build_on(3),
        build_on(4),
        build_l2_glued(5, 5, 3, 2, 4),
    ]
    .into_iter()
    .map(|l| joinmeet_generators(&l.unwrap()))
    .collect();
    let vars = std::sync::Arc::new(VariableSet::new(["x", "y", "z"]).unwrap());
    out.push(Ideal::parse(vars.clone(), &["x^2 - y", "x*y - z"]).unwrap());
    out.push(Ideal::parse(vars, &["x^2*y - z^2 + 2", "y^2 - 3*x*z"]).unwrap());
    out
}

fn canonicity_failures() -> Vec<String> {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for ideal in canonicity_instances() {
        let ord = MonomialOrder::grevlex(ideal.vars().len());
        let base = reduced_gb(&ideal, &ord, budget()).unwrap();
        for _ in 0..100 {
            let mut gens = ideal.generators().to_vec();
            gens.shuffle(&mut rng);
            let gens: Vec<Polynomial> = gens
                .iter()
                .map(|g| {
                    let c = loop {
                        let c: i64 = rng.gen_range(-4..=4);
                        if c != 0 {
                            break c;
                        }
                    };
                    scaled(g, c, &ord)
                })
                .collect();
            let shuffled = Ideal::new(ideal.vars().clone(), gens);
            let gb = reduced_gb(&shuffled, &ord, budget()).unwrap();
            if gb.basis() != base.basis() {
                failures.push(format!("canonicity on {:?}", ideal.generator_texts()));
                break;
            }
        }
    }
    failures
}

/// Minimal generators of the intersection, from pairwise lcms.
fn brute_monomial_intersection(a: &[Monomial], b: &[Monomial]) -> BTreeSet<Vec<u32>> {
    let lcms: Vec<Monomial> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| x.lcm(y)))
        .collect();
    lcms.iter()
        .filter(|m| !lcms.iter().any(|d| d != *m && d.divides(m)))
        .map(|m| m.exponents().to_vec())
        .collect()
}

#[test]
fn criterion_8_engine_properties() {
    let t = Instant::now();
    let mut failures = Vec::new();

    // monomial order axioms and agreement with a textbook comparator
    let n = 5;
    let r = runner(10_000).run(
        &(
            arb_order(n),
            arb_monomial(n, 3),
            arb_monomial(n, 3),
            arb_monomial(n, 3),
        ),
        |(ord, a, b, c)| {
            let ab = ord.cmp(&a, &b);
            prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == std::cmp::Ordering::Equal, a == b);
            if ab.is_le() && ord.cmp(&b, &c).is_le() {
                prop_assert!(ord.cmp(&a, &c).is_le());
            }
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert!(ord.cmp(&Monomial::one(n), &a).is_le());
            if let Some(want) = reference_cmp(&ord, &a, &b) {
                prop_assert_eq!(ab, want);
            }
            Ok(())
        },
    );
    if let Err(e) = r {
        failures.push(format!("order axioms: {e}"));
    }

    // division: recombination, irreducible remainder, idempotent normal form
    let ord = MonomialOrder::grevlex(4);
    let r = runner(10_000).run(
        &(
            arb_poly(4, 3, 5, ord.clone()),
            proptest::collection::vec(arb_poly(4, 2, 3, ord.clone()), 1..=3),
        ),
        |(f, gs)| {
            let d = divide(&f, &gs, &ord);
            prop_assert_eq!(recombine(&d.quotients, &gs, &d.remainder, &ord), f.clone());
            for t in d.remainder.terms() {
                prop_assert!(!gs
                    .iter()
                    .filter_map(|g| g.leading_monomial())
                    .any(|lm| lm.divides(&t.mono)));
            }
            prop_assert_eq!(normal_form(&d.remainder, &gs, &ord), d.remainder.clone());
            prop_assert_eq!(normal_form(&f, &gs, &ord), d.remainder);
            Ok(())
        },
    );
    if let Err(e) = r {
        failures.push(format!("division: {e}"));
    }

    failures.extend(canonicity_failures());

    // elimination intersection against lcm intersection
    let nv = 6;
    let vars = std::sync::Arc::new(VariableSet::new((0..nv).map(|i| format!("x{i}"))).unwrap());
    let mono_set = || {
        proptest::collection::vec(arb_monomial(nv, 2), 1..=3)
            .prop_filter("nonconstant", |v| v.iter().all(|m| !m.is_one()))
    };
    let r = runner(100).run(&(mono_set(), mono_set()), |(a, b)| {
        let (ia, ib) = (MonomialIdeal::new(a.clone()), MonomialIdeal::new(b.clone()));
        let lcm_route = intersect_monomial(&ia, &ib);
        let brute: BTreeSet<Vec<u32>> = lcm_route
            .generators()
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        prop_assert_eq!(&brute, &brute_monomial_intersection(&a, &b));
        let ord = MonomialOrder::grevlex(nv);
        let elim = intersect(
            &ia.to_ideal(vars.clone()),
            &ib.to_ideal(vars.clone()),
            &ord,
            budget(),
        )
        .unwrap();
        let gb = reduced_gb(&elim, &ord, budget()).unwrap();
        prop_assert_eq!(initial_ideal(&gb), lcm_route.clone());
        prop_assert!(gb.basis().iter().all(|p| p.len() == 1));
        Ok(())
    });
    if let Err(e) = r {
        failures.push(format!("intersection: {e}"));
    }

    finish(
        "criterion 8 (engine properties)",
        &failures,
        "10^4 order triples, 10^4 reductions, 100 shuffles x 10 ideals, 100 intersections",
        t,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_2_listing_parses_to_seven_components() {
    // guards the oracle itself
    let vars = l3_ring(3, 1, 1).unwrap();
    let ord = MonomialOrder::grevlex(vars.len());
    let sets: BTreeSet<BTreeSet<String>> = LISTING_3_1_1
        .iter()
        .map(|c| {
            monic_set(
                &c.iter().map(|g| g.replace('_', "")).collect::<Vec<_>>(),
                &vars,
                &ord,
            )
        })
        .collect();
    assert_eq!(sets.len(), 7);
}
