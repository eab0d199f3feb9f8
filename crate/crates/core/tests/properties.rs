mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{arb_coeff, arb_monomial, arb_poly, runner};
use jmlat::families::{build_divisor_lpqk, build_lk, build_on, canonical_h_maps, FamilySpec};
use jmlat::groebner::{
    buchberger_with, ideal_equal, is_groebner, reduce_basis, reduced_gb, BuchbergerOptions, Budget,
    Ideal,
};
use jmlat::joinmeet::{check_distributive_via_gb, joinmeet_generators, OrderSpec};
use jmlat::lattice::{
    find_forbidden_sublattice, is_distributive, is_modular, verify_isomorphism, ForbiddenKind,
    Lattice, Poset,
};
use jmlat::poly::{normal_form, MonomialOrder, Polynomial, VariableSet};
use jmlat::structure::{birkhoff_round_trip, join_irreducibles, rank_report, verify_theorem_5_1};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

fn arb_family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        proptest::collection::vec(1usize..=4, 1..=3).prop_map(FamilySpec::Lk),
        (1usize..=9).prop_map(FamilySpec::On),
        (1usize..=3, 0usize..3).prop_map(|(k, i)| {
            let (p, q) = [(2, 3), (3, 5), (5, 7)][i];
            FamilySpec::DivisorPqk { p, q, k }
        }),
        (5usize..=7, 5usize..=7, 3usize..=5, 2usize..=3, 4usize..=6)
            .prop_map(|(n1, n2, kp, i1, i2)| FamilySpec::L2Glued { n1, n2, kp, i1, i2 })
            .prop_filter("valid glued parameters", |f| f.validate().is_ok()),
    ]
}

fn lattice_of(f: &FamilySpec) -> Result<Lattice, TestCaseError> {
    f.build()
        .map_err(|e| TestCaseError::fail(format!("{f:?}: {e}")))
}

#[test]
fn lattice_order_join_meet_agree() {
    runner(200)
        .run(&arb_family(), |f| {
            let l = lattice_of(&f)?;
            prop_assert!(l.check_axioms().is_ok());
            for a in 0..l.len() {
                for b in 0..l.len() {
                    let le = l.leq(a, b);
                    prop_assert_eq!(le, l.join(a, b) == b);
                    prop_assert_eq!(le, l.meet(a, b) == a);
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn sublattice_search_agrees_with_identities() {
    runner(200)
        .run(&arb_family(), |f| {
            let l = lattice_of(&f)?;
            prop_assume!(l.len() <= 30);
            let w = find_forbidden_sublattice(&l);
            let dist = is_distributive(&l);
            prop_assert_eq!(w.is_none(), dist);
            if let Some(w) = &w {
                prop_assert!(w.verify(&l));
                prop_assert_eq!(w.kind != ForbiddenKind::N5, is_modular(&l));
            } else {
                prop_assert!(is_modular(&l));
            }
            prop_assert_eq!(check_distributive_via_gb(&l), dist);
            Ok(())
        })
        .unwrap();
}

#[test]
fn generator_count_is_incomparable_pairs() {
    runner(200)
        .run(&arb_family(), |f| {
            let l = lattice_of(&f)?;
            let n = l.len();
            let brute = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| !l.leq(a, b) && !l.leq(b, a))
                .count();
            prop_assert_eq!(joinmeet_generators(&l).generators().len(), brute);
            Ok(())
        })
        .unwrap();
}

#[test]
fn two_chains_have_product_many_incomparable_pairs() {
    for n in 1..=6 {
        for m in 1..=6 {
            let l = build_lk(&[n, m]).unwrap();
            let (s, t) = (l.bottom(), l.top());
            let pairs = l.incomparable_pairs();
            assert_eq!(pairs.len(), n * m);
            assert!(pairs
                .iter()
                .all(|&(a, b)| l.join(a, b) == t && l.meet(a, b) == s));
        }
    }
}

#[test]
fn interleaved_chains_keep_the_two_chain_elements() {
    for n in 1..=9 {
        let o: BTreeSet<String> = build_on(n).unwrap().elements().iter().cloned().collect();
        let l: BTreeSet<String> = build_lk(&[n, n])
            .unwrap()
            .elements()
            .iter()
            .cloned()
            .collect();
        assert_eq!(o, l);
    }
}

#[test]
fn divisor_maps_are_isomorphisms() {
    for k in 1..=4 {
        for (p, q) in [(2, 3), (3, 5), (5, 7), (2, 5), (7, 11)] {
            let (h1, h2) = canonical_h_maps(k, p, q).unwrap();
            let o = build_on(2 * k).unwrap();
            let d = build_divisor_lpqk(p, q, k).unwrap();
            assert!(verify_isomorphism(&o, &d, &h1).unwrap().verdict);
            assert!(verify_isomorphism(&d, &o, &h2).unwrap().verdict);
        }
    }
}

#[test]
fn divisor_verdict_is_prime_independent() {
    for k in 1..=4 {
        let verdicts: BTreeSet<bool> = [(2, 3), (3, 5), (5, 7), (2, 5), (11, 13)]
            .iter()
            .map(|&(p, q)| verify_theorem_5_1(k, p, q).unwrap().verdict)
            .collect();
        assert_eq!(verdicts, BTreeSet::from([true]));
    }
}

#[test]
fn birkhoff_round_trip_on_distributive_families() {
    runner(100)
        .run(&arb_family(), |f| {
            let l = lattice_of(&f)?;
            let iso = birkhoff_round_trip(&l).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(iso.verdict, is_distributive(&l));
            Ok(())
        })
        .unwrap();
}

/// Lengths (in covers) of all maximal chains.
fn maximal_chain_lengths(p: &Poset) -> BTreeSet<usize> {
    let n = p.len();
    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, usize)> = p.minimal().into_iter().map(|x| (x, 0)).collect();
    while let Some((x, len)) = stack.pop() {
        let up = p.upper_covers(x);
        if up.is_empty() {
            out.insert(len);
        }
        stack.extend(up.iter().map(|&y| (y, len + 1)));
    }
    assert!(n == 0 || !out.is_empty());
    out
}

#[test]
fn impure_posets_ship_two_maximal_chains() {
    runner(150)
        .run(&arb_family(), |f| {
            let l = lattice_of(&f)?;
            for p in [join_irreducibles(&l), l.poset().clone()] {
                let r = rank_report(&p);
                prop_assert_eq!(r.pure, maximal_chain_lengths(&p).len() <= 1);
                if let Some(w) = r.witness {
                    prop_assert!(w.validate(&p));
                    let [a, b] = w.maximal_chains(&p).unwrap();
                    prop_assert_ne!(a.len(), b.len());
                    for c in [&a, &b] {
                        let ids: Vec<usize> = c.iter().map(|x| p.id(x).unwrap()).collect();
                        prop_assert!(p.lower_covers(ids[0]).is_empty());
                        prop_assert!(p.upper_covers(*ids.last().unwrap()).is_empty());
                        prop_assert!(ids.windows(2).all(|w| p.covers_pair(w[0], w[1])));
                    }
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn ring_axioms() {
    let ord = MonomialOrder::grevlex(3);
    let poly = || arb_poly(3, 2, 4, ord.clone());
    runner(500)
        .run(&(poly(), poly(), poly()), |(f, g, h)| {
            prop_assert_eq!(f.add(&g, &ord).add(&h, &ord), f.add(&g.add(&h, &ord), &ord));
            prop_assert_eq!(f.mul(&g, &ord).mul(&h, &ord), f.mul(&g.mul(&h, &ord), &ord));
            prop_assert_eq!(
                f.mul(&g.add(&h, &ord), &ord),
                f.mul(&g, &ord).add(&f.mul(&h, &ord), &ord)
            );
            prop_assert_eq!(f.add(&g, &ord), g.add(&f, &ord));
            prop_assert_eq!(f.mul(&g, &ord), g.mul(&f, &ord));
            prop_assert!(f.sub(&f, &ord).is_zero());
            Ok(())
        })
        .unwrap();
}

fn arb_binomial_ideal() -> impl Strategy<Value = Vec<Polynomial>> {
    let ord = MonomialOrder::grevlex(4);
    proptest::collection::vec((arb_monomial(4, 2), arb_monomial(4, 2), arb_coeff()), 2..=3)
        .prop_map(move |v| {
            v.into_iter()
                .map(|(a, b, c)| Polynomial::from_terms([(common::unit(), a), (-c, b)], &ord))
                .filter(|p| !p.is_zero())
                .collect::<Vec<_>>()
        })
        .prop_filter("nonzero generators", |v| !v.is_empty())
}

#[test]
fn buchberger_output_is_checked_post_hoc() {
    let vars = Arc::new(VariableSet::new(["w", "x", "y", "z"]).unwrap());
    let budget = Budget::default();
    runner(300)
        .run(&(arb_binomial_ideal(), any::<bool>()), |(gens, chain)| {
            let ord = MonomialOrder::grevlex(4);
            let ideal = Ideal::new(vars.clone(), gens.clone());
            let opts = BuchbergerOptions {
                budget,
                chain_criterion: chain,
                audit: true,
            };
            let (gb, stats) = buchberger_with(&ideal, &ord, &opts)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(stats.audited, stats.product_skipped + stats.chain_skipped);
            prop_assert!(is_groebner(gb.basis(), &ord).is_groebner);
            let red = reduce_basis(&gb);
            prop_assert!(is_groebner(red.basis(), &ord).is_groebner);
            let fresh = reduced_gb(&ideal, &ord, budget).unwrap();
            prop_assert_eq!(red.basis(), fresh.basis());
            prop_assert!(ideal_equal(&ideal, &red.to_ideal(), &ord, budget).unwrap());
            for g in &gens {
                prop_assert!(normal_form(g, red.basis(), &ord).is_zero());
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn product_criterion_audit_covers_enough_pairs() {
    // the audit must see at least 20 skipped pairs on a realistic run
    let l = build_lk(&[4, 4]).unwrap();
    let ideal = joinmeet_generators(&l);
    let ord = OrderSpec::Grevlex.resolve(&l).unwrap();
    let opts = BuchbergerOptions {
        audit: true,
        ..Default::default()
    };
    let (_, stats) = buchberger_with(&ideal, &ord, &opts).unwrap();
    assert!(stats.product_skipped >= 20, "{stats:?}");
    assert_eq!(stats.audited, stats.product_skipped);
}

#[test]
fn radical_verdict_survives_generator_permutation() {
    runner(60)
        .run(&(arb_family(), any::<u64>()), |(f, seed)| {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let l = lattice_of(&f)?;
            prop_assume!(l.len() <= 16);
            let ideal = joinmeet_generators(&l);
            prop_assume!(!ideal.generators().is_empty());
            let ord = OrderSpec::Grevlex.resolve(&l).unwrap();
            let base = reduced_gb(&ideal, &ord, Budget::default()).unwrap();
            let mut gens = ideal.generators().to_vec();
            gens.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let shuffled = Ideal::new(ideal.vars().clone(), gens);
            let gb = reduced_gb(&shuffled, &ord, Budget::default()).unwrap();
            prop_assert_eq!(gb.basis(), base.basis());
            Ok(())
        })
        .unwrap();
}
