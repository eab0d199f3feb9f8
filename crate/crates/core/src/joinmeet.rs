//! Join-meet ideals of finite lattices.
//!
//! The polynomial ring of a lattice has one variable per element, in the
//! lattice's element order. Variable 0 is the smallest variable of the
//! default grevlex order, so for the chain families
//! `s < a1 < .. < an < b1 < .. < t` is exactly the default precedence.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{FamilySpec, IndexResolver};
use crate::groebner::{initial_ideal, is_groebner, reduced_gb, Budget, GroebnerBasis, Ideal};
use crate::lattice::{is_distributive, Lattice, LatticeJson};
use crate::poly::{Monomial, MonomialOrder, Polynomial, VariableSet};

/// One variable per lattice element, same order.
pub fn lattice_ring(l: &Lattice) -> Arc<VariableSet> {
    Arc::new(VariableSet::new(l.elements().iter().cloned()).expect("element names are identifiers"))
}

/// `x_a x_b - x_{a∨b} x_{a∧b}` for every incomparable pair, in the order of
/// [`Lattice::incomparable_pairs`].
pub fn joinmeet_generators(l: &Lattice) -> Ideal {
    let vars = lattice_ring(l);
    let n = vars.len();
    let ord = MonomialOrder::grevlex(n);
    let gens = l
        .incomparable_pairs()
        .into_iter()
        .map(|(a, b)| {
            let ab = Monomial::var(n, a).mul(&Monomial::var(n, b));
            let jm = Monomial::var(n, l.join(a, b)).mul(&Monomial::var(n, l.meet(a, b)));
            Polynomial::binomial(ab, jm, &ord)
        })
        .collect();
    Ideal::new(vars, gens).with_label("I_L")
}

/// How a monomial order is chosen for a lattice ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum OrderSpec {
    /// Grevlex with the element order as precedence (first element smallest).
    Grevlex,
    /// Grevlex with variables sorted by height, ties by element order.
    RankGrevlex,
    /// Lex with the element order as precedence.
    Lex,
    /// Grevlex with an explicit precedence, smallest variable first.
    Perm(Vec<String>),
}

impl OrderSpec {
    pub fn resolve(&self, l: &Lattice) -> Result<MonomialOrder> {
        let n = l.len();
        Ok(match self {
            OrderSpec::Grevlex => MonomialOrder::grevlex(n),
            OrderSpec::Lex => MonomialOrder::lex(n),
            OrderSpec::RankGrevlex => MonomialOrder::GrevLex(rank_precedence(l)),
            OrderSpec::Perm(names) => {
                let prec = names.iter().map(|v| l.id(v)).collect::<Result<Vec<_>>>()?;
                let ord = MonomialOrder::GrevLex(prec);
                ord.validate(n).map_err(|_| {
                    Error::InvalidParams("perm order must list every element once".into())
                })?;
                ord
            }
        })
    }
}

/// Element indices sorted by height, ties by index.
pub fn rank_precedence(l: &Lattice) -> Vec<usize> {
    let h = l.poset().heights();
    let mut idx: Vec<usize> = (0..l.len()).collect();
    idx.sort_by_key(|&i| (h[i], i));
    idx
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderSpec::Grevlex => f.write_str("grevlex"),
            OrderSpec::RankGrevlex => f.write_str("rank-grevlex"),
            OrderSpec::Lex => f.write_str("lex"),
            OrderSpec::Perm(v) => write!(f, "perm:{}", v.join(",")),
        }
    }
}

impl FromStr for OrderSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" | "revlex" => Ok(OrderSpec::Grevlex),
            "rank-grevlex" | "rank-revlex" => Ok(OrderSpec::RankGrevlex),
            "lex" => Ok(OrderSpec::Lex),
            _ => match s.strip_prefix("perm:") {
                Some(list) if !list.trim().is_empty() => Ok(OrderSpec::Perm(
                    list.split(',').map(|v| v.trim().to_string()).collect(),
                )),
                _ => Err(Error::InvalidParams(format!(
                    "unknown order `{s}` (grevlex, rank-grevlex, lex, perm:<vars>)"
                ))),
            },
        }
    }
}

impl TryFrom<String> for OrderSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<OrderSpec> for String {
    fn from(o: OrderSpec) -> String {
        o.to_string()
    }
}

/// Which published basis to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisSet {
    /// `G(n,m) ∪ A_n ∪ B_m` for `L_2(n, m)`.
    L2Sets,
    /// `G_1 ∪ G_2 ∪ G_3 ∪ A_1 ∪ A_2 ∪ A_3 ∪ B_1 ∪ B_2` for the glued lattice.
    GluedSets,
    /// The closed-form generators of `O_n`.
    OnGenerators,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PaperBasisSpec {
    pub family: FamilySpec,
    pub which: BasisSet,
}

/// A basis split into its named parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedBasis {
    pub vars: Arc<VariableSet>,
    pub parts: Vec<(String, Vec<Polynomial>)>,
}

impl NamedBasis {
    pub fn all(&self) -> Vec<Polynomial> {
        self.parts
            .iter()
            .flat_map(|(_, p)| p.iter().cloned())
            .collect()
    }

    pub fn part(&self, name: &str) -> Option<&[Polynomial]> {
        self.parts
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p.as_slice())
    }
}

struct Builder<'a> {
    vars: &'a VariableSet,
    ord: MonomialOrder,
}

impl Builder<'_> {
    fn mono(&self, names: &[String]) -> Monomial {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        self.vars.monomial(&refs).expect("resolved names exist")
    }

    fn bin(&self, lhs: &[String], rhs: &[String]) -> Polynomial {
        Polynomial::binomial(self.mono(lhs), self.mono(rhs), &self.ord)
    }
}

pub fn paper_basis(spec: &PaperBasisSpec) -> Result<Vec<Polynomial>> {
    Ok(paper_basis_parts(spec)?.all())
}

pub fn paper_basis_parts(spec: &PaperBasisSpec) -> Result<NamedBasis> {
    spec.family.validate()?;
    let l = spec.family.build()?;
    let vars = lattice_ring(&l);
    let b = Builder {
        vars: &vars,
        ord: MonomialOrder::grevlex(vars.len()),
    };
    let parts = match (spec.which, &spec.family) {
        (BasisSet::L2Sets, FamilySpec::Lk(ns)) if ns.len() == 2 => l2_sets(&b, ns[0], ns[1]),
        (BasisSet::GluedSets, &FamilySpec::L2Glued { n1, n2, kp, i1, i2 }) => {
            glued_sets(&b, n1, n2, kp, i1, i2)
        }
        (BasisSet::OnGenerators, &FamilySpec::On(n)) => {
            vec![("R".to_string(), on_generators_with(&b, n))]
        }
        (which, fam) => {
            return Err(Error::InvalidParams(format!(
                "{which:?} does not apply to {}",
                fam.label()
            )))
        }
    };
    Ok(NamedBasis { vars, parts })
}

fn l2_sets(b: &Builder<'_>, n: usize, m: usize) -> Vec<(String, Vec<Polynomial>)> {
    let r = IndexResolver::new(&[n, m]);
    let (s, t) = (r.a(0), r.a(n as i64 + 1));
    let mut g = Vec::new();
    for i in 1..=n as i64 {
        for j in 1..=m as i64 {
            g.push(b.bin(&[r.a(i), r.b(j)], &[s.clone(), t.clone()]));
        }
    }
    let a: Vec<_> = (2..=n as i64)
        .map(|i| {
            b.bin(
                &[r.a(i), s.clone(), t.clone()],
                &[r.a(1), s.clone(), t.clone()],
            )
        })
        .collect();
    let bm: Vec<_> = (2..=m as i64)
        .map(|i| {
            b.bin(
                &[r.b(i), s.clone(), t.clone()],
                &[r.b(1), s.clone(), t.clone()],
            )
        })
        .collect();
    vec![("G".into(), g), ("A".into(), a), ("B".into(), bm)]
}

fn glued_sets(
    b: &Builder<'_>,
    n1: usize,
    n2: usize,
    kp: usize,
    i1: usize,
    i2: usize,
) -> Vec<(String, Vec<Polynomial>)> {
    let r = IndexResolver::new(&[n1, n2]);
    let (n1, n2, k, i1, i2) = (n1 as i64, n2 as i64, kp as i64, i1 as i64, i2 as i64);
    let (s, t) = (r.a(0), r.a(n1 + 1));
    let bk = r.b(k);

    let mut g1 = Vec::new();
    for i in 1..=i1 {
        for j in 1..k {
            g1.push(b.bin(&[r.a(i), r.b(j)], &[s.clone(), bk.clone()]));
        }
    }
    let g2: Vec<_> = (i1 + 1..i2)
        .map(|i| b.bin(&[r.a(i), bk.clone()], &[r.a(i1), r.a(i2)]))
        .collect();
    let mut g3 = Vec::new();
    for i in i2..=n1 {
        for j in k + 1..=n2 {
            g3.push(b.bin(&[r.a(i), r.b(j)], &[bk.clone(), t.clone()]));
        }
    }
    let a1: Vec<_> = (2..=i1)
        .map(|i| {
            b.bin(
                &[r.a(i), s.clone(), bk.clone()],
                &[r.a(1), s.clone(), bk.clone()],
            )
        })
        .collect();
    let a2: Vec<_> = (i1 + 2..i2)
        .map(|i| {
            b.bin(
                &[r.a(i), r.a(i1), r.a(i2)],
                &[r.a(i1 + 1), r.a(i1), r.a(i2)],
            )
        })
        .collect();
    let a3: Vec<_> = (i2 + 1..=n1)
        .map(|i| {
            b.bin(
                &[r.a(i), bk.clone(), t.clone()],
                &[r.a(i2), bk.clone(), t.clone()],
            )
        })
        .collect();
    let b1: Vec<_> = (2..k)
        .map(|i| {
            b.bin(
                &[r.b(i), s.clone(), bk.clone()],
                &[r.b(1), s.clone(), bk.clone()],
            )
        })
        .collect();
    let b2: Vec<_> = (k + 2..=n2)
        .map(|i| {
            b.bin(
                &[r.b(i), bk.clone(), t.clone()],
                &[r.b(k + 1), bk.clone(), t.clone()],
            )
        })
        .collect();

    let mut parts = vec![("G1".to_string(), g1), ("G2".into(), g2), ("G3".into(), g3)];
    parts.push(("A1".into(), a1));
    // With i2 - i1 = 2 the A2 part is left out entirely.
    if i2 - i1 > 2 {
        parts.push(("A2".into(), a2));
    }
    parts.push(("A3".into(), a3));
    parts.push(("B1".into(), b1));
    parts.push(("B2".into(), b2));
    parts
}

fn on_generators_with(b: &Builder<'_>, n: usize) -> Vec<Polynomial> {
    let r = IndexResolver::new(&[n, n]);
    let n = n as i64;
    let mut out = Vec::new();
    for i in 1..=n {
        if i % 2 == 1 {
            out.push(b.bin(&[r.a(i), r.b(i)], &[r.b(i - 1), r.b(i + 1)]));
        } else {
            out.push(b.bin(&[r.a(i), r.b(i - 1)], &[r.a(i + 1), r.b(i - 2)]));
            out.push(b.bin(&[r.a(i), r.b(i)], &[r.a(i - 1), r.a(i + 1)]));
            if i < n {
                out.push(b.bin(&[r.a(i), r.b(i + 1)], &[r.a(i - 1), r.b(i + 2)]));
            }
        }
    }
    out
}

/// Closed-form generators of `O_n` over the ring of `build_on(n)`.
pub fn on_generators(n: usize) -> Result<Ideal> {
    let nb = paper_basis_parts(&PaperBasisSpec {
        family: FamilySpec::On(n),
        which: BasisSet::OnGenerators,
    })?;
    let gens = nb.all();
    Ok(Ideal::new(nb.vars, gens).with_label(format!("R(O{n})")))
}

/// `ceil(n/2) + 2 floor(n/2) + floor((n-1)/2)`.
pub fn on_generator_count(n: usize) -> usize {
    n.div_ceil(2) + 2 * (n / 2) + n.saturating_sub(1) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RadicalVerdict {
    RadicalBySquarefree,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalityCertificate {
    pub lattice: LatticeJson,
    pub order: OrderSpec,
    pub order_description: String,
    pub basis: Vec<String>,
    pub basis_is_groebner: bool,
    pub pairs_checked: usize,
    pub spair_digest: String,
    pub initial_ideal: Vec<String>,
    pub squarefree: bool,
    pub verdict: RadicalVerdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Reduced GB of the join-meet ideal plus the squarefree test on its
/// initial ideal. A non-squarefree initial ideal is only `Inconclusive`.
pub fn certify_radical(
    l: &Lattice,
    order: &OrderSpec,
    budget: Budget,
) -> Result<RadicalityCertificate> {
    let ord = order.resolve(l)?;
    let ideal = joinmeet_generators(l);
    let vars = ideal.vars().clone();
    if ideal.generators().is_empty() {
        return Ok(RadicalityCertificate {
            lattice: l.to_json(),
            order: order.clone(),
            order_description: ord.describe(&vars),
            basis: Vec::new(),
            basis_is_groebner: true,
            pairs_checked: 0,
            spair_digest: is_groebner(&[], &ord).digest,
            initial_ideal: Vec::new(),
            squarefree: true,
            verdict: RadicalVerdict::RadicalBySquarefree,
            notes: vec!["zero ideal".into()],
        });
    }
    let gb = reduced_gb(&ideal, &ord, budget)?;
    Ok(certificate_from_gb(l, order, &gb))
}

pub(crate) fn certificate_from_gb(
    l: &Lattice,
    order: &OrderSpec,
    gb: &GroebnerBasis,
) -> RadicalityCertificate {
    let check = is_groebner(gb.basis(), gb.order());
    let init = initial_ideal(gb);
    let squarefree = init.is_squarefree();
    let verdict = if squarefree && check.is_groebner {
        RadicalVerdict::RadicalBySquarefree
    } else {
        RadicalVerdict::Inconclusive
    };
    RadicalityCertificate {
        lattice: l.to_json(),
        order: order.clone(),
        order_description: gb.order().describe(gb.vars()),
        basis: gb.basis_texts(),
        basis_is_groebner: check.is_groebner,
        pairs_checked: check.pairs_checked,
        spair_digest: check.digest,
        initial_ideal: init.to_strings(gb.vars()),
        squarefree,
        verdict,
        notes: Vec::new(),
    }
}

/// True iff the raw join-meet generators already form a Gröbner basis
/// under the rank grevlex order.
pub fn check_distributive_via_gb(l: &Lattice) -> bool {
    let ideal = joinmeet_generators(l);
    let ord = MonomialOrder::GrevLex(rank_precedence(l));
    is_groebner(ideal.generators(), &ord).is_groebner
}

/// Both distributivity routes, for cross-checking.
pub fn distributivity_routes(l: &Lattice) -> (bool, bool) {
    (check_distributive_via_gb(l), is_distributive(l))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SearchStrategy {
    /// Every precedence with grevlex.
    AllRevlex,
    /// Every precedence with lex.
    AllLex,
    /// Both of the above.
    AllRevlexLex,
    /// `count` random precedences from a seeded generator.
    Sampled { count: usize, seed: u64, lex: bool },
}

/// Largest lattice swept exhaustively.
pub const MAX_EXHAUSTIVE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchEntry {
    pub kind: String,
    /// Smallest variable first.
    pub precedence: Vec<String>,
    pub squarefree: bool,
    pub initial_ideal: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SearchVerdict {
    FoundOrder {
        kind: String,
        precedence: Vec<String>,
    },
    NoneFound {
        tested: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub lattice: LatticeJson,
    pub strategy: SearchStrategy,
    pub tested: usize,
    pub squarefree_count: usize,
    pub verdict: SearchVerdict,
    pub entries: Vec<SearchEntry>,
}

/// Sweeps variable precedences and records whether the reduced-GB initial
/// ideal is squarefree for each. Entries are in canonical order: kind, then
/// permutations in lexicographic order (or sample order).
pub fn search_squarefree_order(
    l: &Lattice,
    strategy: &SearchStrategy,
    budget: Budget,
) -> Result<SearchReport> {
    let n = l.len();
    let mut jobs: Vec<(bool, Vec<usize>)> = Vec::new();
    let exhaustive = |lex: bool, jobs: &mut Vec<(bool, Vec<usize>)>| -> Result<()> {
        if n > MAX_EXHAUSTIVE {
            return Err(Error::InvalidParams(format!(
                "exhaustive sweep needs at most {MAX_EXHAUSTIVE} elements, lattice has {n}"
            )));
        }
        jobs.extend((0..n).permutations(n).map(|p| (lex, p)));
        Ok(())
    };
    match *strategy {
        SearchStrategy::AllRevlex => exhaustive(false, &mut jobs)?,
        SearchStrategy::AllLex => exhaustive(true, &mut jobs)?,
        SearchStrategy::AllRevlexLex => {
            exhaustive(false, &mut jobs)?;
            exhaustive(true, &mut jobs)?;
        }
        SearchStrategy::Sampled { count, seed, lex } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut p: Vec<usize> = (0..n).collect();
            for _ in 0..count {
                p.shuffle(&mut rng);
                jobs.push((lex, p.clone()));
            }
        }
    }

    let ideal = joinmeet_generators(l);
    let vars = ideal.vars().clone();
    let name = |p: &[usize]| {
        p.iter()
            .map(|&i| vars.name(i).to_string())
            .collect::<Vec<_>>()
    };
    let entries: Vec<SearchEntry> = jobs
        .par_iter()
        .map(|(lex, p)| {
            let ord = if *lex {
                MonomialOrder::Lex(p.clone())
            } else {
                MonomialOrder::GrevLex(p.clone())
            };
            let init = if ideal.generators().is_empty() {
                crate::groebner::MonomialIdeal::new(Vec::new())
            } else {
                initial_ideal(&reduced_gb(&ideal, &ord, budget)?)
            };
            Ok(SearchEntry {
                kind: if *lex { "lex" } else { "revlex" }.to_string(),
                precedence: name(p),
                squarefree: init.is_squarefree(),
                initial_ideal: init.to_strings(&vars),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let squarefree_count = entries.iter().filter(|e| e.squarefree).count();
    let verdict = match entries.iter().find(|e| e.squarefree) {
        Some(e) => SearchVerdict::FoundOrder {
            kind: e.kind.clone(),
            precedence: e.precedence.clone(),
        },
        None => SearchVerdict::NoneFound {
            tested: entries.len(),
        },
    };
    Ok(SearchReport {
        lattice: l.to_json(),
        strategy: strategy.clone(),
        tested: entries.len(),
        squarefree_count,
        verdict,
        entries,
    })
}

/// Leading monomial of each polynomial under `ord`, as text.
pub fn leading_terms(ideal: &Ideal, ord: &MonomialOrder) -> Vec<String> {
    ideal
        .generators()
        .iter()
        .map(|g| {
            g.sorted(ord)
                .leading_monomial()
                .map(|m| m.display(ideal.vars()).to_string())
                .unwrap_or_default()
        })
        .collect()
}
