//! Buchberger's algorithm and the ideal operations built on it.
//!
//! Everything here is deterministic: S-pairs are selected by smallest lcm
//! under the active order with ties broken by generator indices, and
//! reductions follow [`crate::poly::divide`]'s fixed tie-breaking. Reduced
//! bases are canonical, so ideal equality is basis equality.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::poly::{
    normal_form, parse_polynomial, reduce_sorted, s_poly_sorted, Coeff, Monomial, MonomialOrder,
    Polynomial, VariableSet,
};

/// Generators over a fixed variable set. Zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    vars: Arc<VariableSet>,
    generators: Vec<Polynomial>,
    label: Option<String>,
}

impl Ideal {
    pub fn new(vars: Arc<VariableSet>, generators: Vec<Polynomial>) -> Self {
        Ideal {
            vars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            label: None,
        }
    }

    /// Parses generators from the text format.
    pub fn parse(vars: Arc<VariableSet>, gens: &[&str]) -> Result<Self> {
        let ord = MonomialOrder::grevlex(vars.len());
        let polys = gens
            .iter()
            .map(|g| parse_polynomial(g, &vars, &ord))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(vars, polys))
    }

    /// The ideal generated by the given variables.
    pub fn variables(vars: Arc<VariableSet>, names: &[&str]) -> Result<Self> {
        let n = vars.len();
        let gens = names
            .iter()
            .map(|v| Ok(Polynomial::var(n, vars.require(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(vars, gens))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn generator_texts(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.to_text(&self.vars))
            .collect()
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableSetMismatch);
        }
        Ok(())
    }
}

/// Work limits for Buchberger runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of S-pairs reduced.
    pub max_pairs: usize,
    /// Maximum total degree of a new basis element.
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 200_000,
            max_degree: 24,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuchbergerOptions {
    pub budget: Budget,
    /// Buchberger's second (chain) criterion.
    pub chain_criterion: bool,
    /// Force-reduce every skipped pair after the run and fail if one does not vanish.
    pub audit: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuchbergerStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub product_skipped: usize,
    pub chain_skipped: usize,
    pub zero_reductions: usize,
    pub audited: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ideal: Ideal,
    order: MonomialOrder,
    basis: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.ideal.vars
    }

    pub fn basis_texts(&self) -> Vec<String> {
        self.basis
            .iter()
            .map(|g| g.to_text(&self.ideal.vars))
            .collect()
    }

    /// Ideal membership by reduction to zero.
    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, &self.basis, &self.order).is_zero()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.basis, &self.order)
    }

    /// The basis as a plain ideal (same variable set and label).
    pub fn to_ideal(&self) -> Ideal {
        Ideal {
            vars: self.ideal.vars.clone(),
            generators: self.basis.clone(),
            label: self.ideal.label.clone(),
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub fn buchberger(ideal: &Ideal, ord: &MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(ideal, ord, &BuchbergerOptions::default()).map(|(gb, _)| gb)
}

/// Buchberger's algorithm with the normal selection strategy and the
/// product criterion; see [`BuchbergerOptions`] for the rest.
pub fn buchberger_with(
    ideal: &Ideal,
    ord: &MonomialOrder,
    opts: &BuchbergerOptions,
) -> Result<(GroebnerBasis, BuchbergerStats)> {
    ord.validate(ideal.vars.len())?;
    if ideal.generators.is_empty() {
        return Err(Error::InvalidParams(
            "ideal has no nonzero generators".into(),
        ));
    }
    let mut stats = BuchbergerStats::default();
    let mut g: Vec<Polynomial> = ideal
        .generators
        .iter()
        .map(|p| p.sorted(ord).monic())
        .collect();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
    let mut skipped: Vec<(usize, usize)> = Vec::new();

    let add_pairs = |g: &[Polynomial],
                     j: usize,
                     pending: &mut Vec<Pair>,
                     pending_set: &mut HashSet<(usize, usize)>,
                     skipped: &mut Vec<(usize, usize)>,
                     stats: &mut BuchbergerStats| {
        let lj = g[j].leading_monomial().expect("nonzero");
        for i in 0..j {
            let li = g[i].leading_monomial().expect("nonzero");
            stats.pairs_created += 1;
            if li.gcd_is_one(lj) {
                stats.product_skipped += 1;
                skipped.push((i, j));
                continue;
            }
            pending.push(Pair {
                i,
                j,
                lcm: li.lcm(lj),
            });
            pending_set.insert((i, j));
        }
    };
    for j in 0..g.len() {
        add_pairs(
            &g,
            j,
            &mut pending,
            &mut pending_set,
            &mut skipped,
            &mut stats,
        );
    }

    while !pending.is_empty() {
        let mut best = 0;
        for k in 1..pending.len() {
            let (a, b) = (&pending[k], &pending[best]);
            let c = ord
                .cmp(&a.lcm, &b.lcm)
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if c == std::cmp::Ordering::Less {
                best = k;
            }
        }
        let pair = pending.swap_remove(best);
        pending_set.remove(&(pair.i, pair.j));

        if opts.chain_criterion {
            let treated = |x: usize, y: usize| {
                let key = if x < y { (x, y) } else { (y, x) };
                !pending_set.contains(&key)
            };
            let chain = (0..g.len()).any(|k| {
                k != pair.i
                    && k != pair.j
                    && g[k].leading_monomial().expect("nonzero").divides(&pair.lcm)
                    && treated(pair.i, k)
                    && treated(pair.j, k)
            });
            if chain {
                stats.chain_skipped += 1;
                skipped.push((pair.i, pair.j));
                continue;
            }
        }

        if stats.pairs_reduced >= opts.budget.max_pairs {
            return Err(Error::ResourceLimit(format!(
                "more than {} S-pairs",
                opts.budget.max_pairs
            )));
        }
        stats.pairs_reduced += 1;
        let s = s_poly_sorted(&g[pair.i], &g[pair.j], ord);
        let h = reduce_sorted(&s, &g, ord);
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        if h.total_degree() > opts.budget.max_degree {
            return Err(Error::ResourceLimit(format!(
                "basis element of degree {} exceeds {}",
                h.total_degree(),
                opts.budget.max_degree
            )));
        }
        g.push(h.monic());
        let j = g.len() - 1;
        add_pairs(
            &g,
            j,
            &mut pending,
            &mut pending_set,
            &mut skipped,
            &mut stats,
        );
    }

    if opts.audit {
        for &(i, j) in &skipped {
            let s = s_poly_sorted(&g[i], &g[j], ord);
            if !reduce_sorted(&s, &g, ord).is_zero() {
                return Err(Error::Internal(format!(
                    "skipped pair ({i}, {j}) does not reduce to zero"
                )));
            }
            stats.audited += 1;
        }
    }

    Ok((
        GroebnerBasis {
            ideal: ideal.clone(),
            order: ord.clone(),
            basis: g,
            reduced: false,
        },
        stats,
    ))
}

/// A pair whose S-polynomial has a nonzero normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailingPair {
    pub i: usize,
    pub j: usize,
    pub remainder: Polynomial,
}

/// Result of checking Buchberger's criterion on every pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbCheck {
    pub is_groebner: bool,
    pub pairs_checked: usize,
    pub failing: Option<FailingPair>,
    /// SHA-256 over the per-pair log lines `i,j:0` (or `i,j:<remainder>`).
    pub digest: String,
}

/// Checks that every S-pair of `polys` reduces to zero modulo `polys`.
///
/// No criterion is used: all pairs are reduced, in index order. Stops at
/// the first failing pair.
pub fn is_groebner(polys: &[Polynomial], ord: &MonomialOrder) -> GbCheck {
    let g: Vec<Polynomial> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.sorted(ord))
        .collect();
    let mut hasher = Sha256::new();
    let mut checked = 0;
    for j in 0..g.len() {
        for i in 0..j {
            checked += 1;
            let s = s_poly_sorted(&g[i], &g[j], ord);
            let r = reduce_sorted(&s, &g, ord);
            if r.is_zero() {
                hasher.update(format!("{i},{j}:0\n").as_bytes());
            } else {
                hasher.update(format!("{i},{j}:{r:?}\n").as_bytes());
                return GbCheck {
                    is_groebner: false,
                    pairs_checked: checked,
                    failing: Some(FailingPair { i, j, remainder: r }),
                    digest: hex::encode(hasher.finalize()),
                };
            }
        }
    }
    GbCheck {
        is_groebner: true,
        pairs_checked: checked,
        failing: None,
        digest: hex::encode(hasher.finalize()),
    }
}

/// The unique reduced basis: minimal, monic, tail-reduced, sorted by
/// ascending leading monomial.
pub fn reduce_basis(gb: &GroebnerBasis) -> GroebnerBasis {
    let ord = &gb.order;
    let mut polys: Vec<Polynomial> = gb
        .basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.sorted(ord).monic())
        .collect();
    polys.sort_by(|a, b| ord.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in polys {
        let lm = p.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|q| q.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(p);
        }
    }
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, p)| p.clone())
            .collect();
        minimal[k] = reduce_sorted(&minimal[k], &others, ord).monic();
    }
    GroebnerBasis {
        ideal: gb.ideal.clone(),
        order: gb.order.clone(),
        basis: minimal,
        reduced: true,
    }
}

/// Reduced Gröbner basis in one call.
pub fn reduced_gb(ideal: &Ideal, ord: &MonomialOrder, budget: Budget) -> Result<GroebnerBasis> {
    let opts = BuchbergerOptions {
        budget,
        ..Default::default()
    };
    Ok(reduce_basis(&buchberger_with(ideal, ord, &opts)?.0))
}

/// Monomial ideal kept as its minimal generators in a canonical order:
/// by degree, then by exponent vector with earlier variables first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        all.dedup();
        let mut min: Vec<Monomial> = Vec::new();
        for m in all {
            if !min.iter().any(|g| g.divides(&m)) {
                min.push(m);
            }
        }
        MonomialIdeal { gens: min }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn to_strings(&self, vars: &VariableSet) -> Vec<String> {
        self.gens
            .iter()
            .map(|m| m.display(vars).to_string())
            .collect()
    }

    /// As an ordinary ideal of monomial generators.
    pub fn to_ideal(&self, vars: Arc<VariableSet>) -> Ideal {
        Ideal::new(
            vars,
            self.gens
                .iter()
                .cloned()
                .map(Polynomial::monomial)
                .collect(),
        )
    }
}

/// Minimal generators of the leading-monomial ideal.
pub fn initial_ideal(gb: &GroebnerBasis) -> MonomialIdeal {
    MonomialIdeal::new(
        gb.basis
            .iter()
            .filter_map(|p| p.sorted(&gb.order).leading_monomial().cloned()),
    )
}

pub fn is_squarefree(mi: &MonomialIdeal) -> bool {
    mi.is_squarefree()
}

/// `{lcm(m, n)}` over generator pairs, minimalized.
pub fn intersect_monomial(i: &MonomialIdeal, j: &MonomialIdeal) -> MonomialIdeal {
    MonomialIdeal::new(
        i.gens
            .iter()
            .flat_map(|m| j.gens.iter().map(move |n| m.lcm(n))),
    )
}

/// Equality of ideals via their reduced Gröbner bases.
pub fn ideal_equal(i: &Ideal, j: &Ideal, ord: &MonomialOrder, budget: Budget) -> Result<bool> {
    i.same_ring(j)?;
    match (i.generators.is_empty(), j.generators.is_empty()) {
        (true, true) => return Ok(true),
        (true, false) | (false, true) => return Ok(false),
        _ => {}
    }
    let a = reduced_gb(i, ord, budget)?;
    let b = reduced_gb(j, ord, budget)?;
    Ok(a.basis == b.basis)
}

/// `I ∩ J` by elimination: with a fresh variable `w` in its own top block,
/// `w I + (1 - w) J` is eliminated down to the original ring.
///
/// Returns the reduced basis of the intersection under `ord`. Every returned
/// generator is checked to lie in both `I` and `J`.
pub fn intersect(i: &Ideal, j: &Ideal, ord: &MonomialOrder, budget: Budget) -> Result<Ideal> {
    i.same_ring(j)?;
    ord.validate(i.vars.len())?;
    if i.generators.is_empty() || j.generators.is_empty() {
        return Ok(Ideal::new(i.vars.clone(), Vec::new()));
    }
    let n = i.vars.len();
    let (ext, w) = i.vars.extended("w");
    let ext = Arc::new(ext);
    let block = MonomialOrder::Block(vec![MonomialOrder::Lex(vec![w]), ord.clone()]);
    let wpoly = Polynomial::var(n + 1, w);
    let one_minus_w = Polynomial::from_terms(
        [
            (Coeff::from_integer(1.into()), Monomial::one(n + 1)),
            (Coeff::from_integer((-1).into()), Monomial::var(n + 1, w)),
        ],
        &block,
    );
    let mut gens = Vec::new();
    for f in &i.generators {
        gens.push(f.padded(n + 1).sorted(&block).mul(&wpoly, &block));
    }
    for g in &j.generators {
        gens.push(g.padded(n + 1).sorted(&block).mul(&one_minus_w, &block));
    }
    let gb = reduced_gb(&Ideal::new(ext, gens), &block, budget)?;
    let kept: Vec<Polynomial> = gb
        .basis
        .iter()
        .filter(|p| !p.uses_var(w))
        .map(|p| p.truncated(n).expect("w-free").sorted(ord))
        .collect();

    let gi = reduced_gb(i, ord, budget)?;
    let gj = reduced_gb(j, ord, budget)?;
    for p in &kept {
        if !gi.contains(p) || !gj.contains(p) {
            return Err(Error::Internal(format!(
                "intersection generator {} is not in both ideals",
                p.to_text(&i.vars)
            )));
        }
    }
    let label = match (i.label(), j.label()) {
        (Some(a), Some(b)) => Some(format!("({a}) ∩ ({b})")),
        _ => None,
    };
    Ok(Ideal {
        vars: i.vars.clone(),
        generators: kept,
        label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str]) -> Arc<VariableSet> {
        Arc::new(VariableSet::new(names.iter().copied()).unwrap())
    }

    #[test]
    fn single_variable() {
        let v = ring(&["x"]);
        let i = Ideal::parse(v.clone(), &["x"]).unwrap();
        let gb = reduce_basis(&buchberger(&i, &MonomialOrder::grevlex(1)).unwrap());
        assert_eq!(gb.basis_texts(), vec!["x"]);
        assert!(is_groebner(gb.basis(), gb.order()).is_groebner);
    }

    #[test]
    fn l2_21_initial_ideal() {
        let v = ring(&["s", "a1", "a2", "b1", "t"]);
        let o = MonomialOrder::grevlex(5);
        let i = Ideal::parse(v.clone(), &["a1*b1 - s*t", "a2*b1 - s*t"]).unwrap();
        let gb = reduce_basis(&buchberger(&i, &o).unwrap());
        let init = initial_ideal(&gb);
        assert_eq!(init.to_strings(&v), vec!["a1*b1", "a2*b1", "s*a2*t"]);
        assert!(init.is_squarefree());
        assert!(is_groebner(gb.basis(), &o).is_groebner);
        let published = Ideal::parse(
            v.clone(),
            &["a1*b1 - s*t", "a2*b1 - s*t", "a2*s*t - a1*s*t"],
        )
        .unwrap();
        assert!(is_groebner(published.generators(), &o).is_groebner);
        assert!(ideal_equal(&i, &published, &o, Budget::default()).unwrap());
    }

    #[test]
    fn raw_generators_fail_criterion() {
        let v = ring(&["s", "a1", "a2", "b1", "t"]);
        let o = MonomialOrder::grevlex(5);
        let i = Ideal::parse(v, &["a1*b1 - s*t", "a2*b1 - s*t"]).unwrap();
        let c = is_groebner(i.generators(), &o);
        assert!(!c.is_groebner);
        let f = c.failing.unwrap();
        assert_eq!((f.i, f.j), (0, 1));
        assert!(!f.remainder.is_zero());
    }

    #[test]
    fn equality_basics() {
        let v = ring(&["x", "y"]);
        let o = MonomialOrder::grevlex(2);
        let x = Ideal::parse(v.clone(), &["x"]).unwrap();
        let x2 = Ideal::parse(v.clone(), &["x^2"]).unwrap();
        assert!(ideal_equal(&x, &x, &o, Budget::default()).unwrap());
        assert!(!ideal_equal(&x, &x2, &o, Budget::default()).unwrap());
        let other = Ideal::parse(ring(&["x", "z"]), &["x"]).unwrap();
        assert!(matches!(
            ideal_equal(&x, &other, &o, Budget::default()),
            Err(Error::VariableSetMismatch)
        ));
    }

    #[test]
    fn intersections() {
        let v = ring(&["x", "y"]);
        let o = MonomialOrder::grevlex(2);
        let x = Ideal::parse(v.clone(), &["x"]).unwrap();
        let y = Ideal::parse(v.clone(), &["y"]).unwrap();
        let xy = intersect(&x, &y, &o, Budget::default()).unwrap();
        assert_eq!(xy.generator_texts(), vec!["x*y"]);

        let v = ring(&["s", "a1", "b1", "t"]);
        let o = MonomialOrder::grevlex(4);
        let p1 = Ideal::variables(v.clone(), &["s", "a1", "b1"]).unwrap();
        let p2 = Ideal::variables(v.clone(), &["a1", "b1", "t"]).unwrap();
        let e = intersect(&p1, &p2, &o, Budget::default()).unwrap();
        let expect = Ideal::parse(v.clone(), &["a1", "b1", "s*t"]).unwrap();
        assert!(ideal_equal(&e, &expect, &o, Budget::default()).unwrap());
    }

    #[test]
    fn monomial_intersection() {
        let v = VariableSet::new(["s", "a1", "t"]).unwrap();
        let m = |f: &[&str]| v.monomial(f).unwrap();
        let i = MonomialIdeal::new([m(&["s"]), m(&["a1"])]);
        let j = MonomialIdeal::new([m(&["a1"]), m(&["t"])]);
        assert_eq!(intersect_monomial(&i, &j).to_strings(&v), vec!["a1", "s*t"]);
        assert_eq!(intersect_monomial(&i, &i), i);
        assert!(!MonomialIdeal::new([m(&["a1", "a1"]), m(&["s", "t"])]).is_squarefree());
        assert!(MonomialIdeal::new([m(&["a1", "t"]), m(&["s"])]).is_squarefree());
    }

    #[test]
    fn principal_initial_ideal() {
        let v = ring(&["x", "y"]);
        let o = MonomialOrder::grevlex(2);
        let i = Ideal::parse(v.clone(), &["x*y - y^2 + 3"]).unwrap();
        let gb = buchberger(&i, &o).unwrap();
        assert_eq!(initial_ideal(&gb).to_strings(&v), vec!["y^2"]);
    }

    #[test]
    fn budget_is_enforced() {
        let v = ring(&["x", "y", "z"]);
        let o = MonomialOrder::lex(3);
        let i = Ideal::parse(v, &["x^3 - y*z", "y^2*x - z^3", "z^2 - x*y + 1"]).unwrap();
        let opts = BuchbergerOptions {
            budget: Budget {
                max_pairs: 2,
                max_degree: 24,
            },
            ..Default::default()
        };
        assert!(matches!(
            buchberger_with(&i, &o, &opts),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn chain_criterion_matches_plain_run() {
        let v = ring(&["x", "y", "z", "w"]);
        let o = MonomialOrder::grevlex(4);
        let i = Ideal::parse(
            v,
            &["x*y - z*w", "y*z - x^2", "x*z - y*w + z^2", "w^2 - x*y"],
        )
        .unwrap();
        let plain = reduce_basis(&buchberger(&i, &o).unwrap());
        let opts = BuchbergerOptions {
            chain_criterion: true,
            audit: true,
            ..Default::default()
        };
        let (gb, stats) = buchberger_with(&i, &o, &opts).unwrap();
        assert_eq!(reduce_basis(&gb).basis(), plain.basis());
        assert_eq!(stats.audited, stats.product_skipped + stats.chain_skipped);
    }
}
