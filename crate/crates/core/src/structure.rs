//! Join-irreducibles, lattices of order ideals, rank functions, the
//! Gorenstein rule for Hibi rings, and the `O_{2k} ≅ L_{p,q,k}` check.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{build_divisor_lpqk, build_on, canonical_h_maps};
use crate::lattice::{is_distributive, verify_isomorphism, IsomorphismCertificate, Lattice, Poset};

/// Elements covering exactly one element, with the induced order.
pub fn join_irreducibles(l: &Lattice) -> Poset {
    let p = l.poset();
    let ids: Vec<usize> = (0..l.len())
        .filter(|&x| p.lower_covers(x).len() == 1)
        .collect();
    p.induced(&ids)
}

/// Order ideals of `p` as bitmasks, sorted by size then by member list.
fn down_sets(p: &Poset) -> Result<Vec<u64>> {
    let n = p.len();
    if n > 63 {
        return Err(Error::InvalidParams(format!(
            "order ideals of a {n}-element poset are out of range"
        )));
    }
    let below: Vec<u64> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| y != x && p.leq(y, x))
                .fold(0u64, |m, y| m | 1 << y)
        })
        .collect();
    let mut seen: HashSet<u64> = HashSet::from([0u64]);
    let mut queue = VecDeque::from([0u64]);
    let mut out = Vec::new();
    while let Some(d) = queue.pop_front() {
        out.push(d);
        for x in 0..n {
            if d & (1 << x) == 0 && below[x] & !d == 0 {
                let e = d | 1 << x;
                if seen.insert(e) {
                    queue.push_back(e);
                }
            }
        }
    }
    let members = |d: u64| (0..n).filter(|&i| d & (1 << i) != 0).collect::<Vec<_>>();
    out.sort_by(|&a, &b| {
        a.count_ones()
            .cmp(&b.count_ones())
            .then_with(|| members(a).cmp(&members(b)))
    });
    Ok(out)
}

fn ideal_name(p: &Poset, d: u64) -> String {
    let n = p.len();
    let tops: Vec<&str> = (0..n)
        .filter(|&x| d & (1 << x) != 0)
        .filter(|&x| (0..n).all(|y| y == x || d & (1 << y) == 0 || !p.lt(x, y)))
        .map(|x| p.name(x))
        .collect();
    if tops.is_empty() {
        "zero".into()
    } else {
        tops.join("_")
    }
}

/// The lattice `J(P)` of order ideals of `p` under inclusion.
///
/// Each ideal is named by its maximal elements joined with `_`; the empty
/// ideal is `zero`.
pub fn birkhoff(p: &Poset) -> Result<Lattice> {
    let ds = down_sets(p)?;
    let mut names: Vec<String> = ds.iter().map(|&d| ideal_name(p, d)).collect();
    let mut uniq = names.clone();
    uniq.sort();
    uniq.dedup();
    if uniq.len() != names.len() {
        names = (0..ds.len()).map(|i| format!("j{i}")).collect();
    }
    let pos: HashMap<u64, usize> = ds.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let mut covers = Vec::new();
    for (i, &d) in ds.iter().enumerate() {
        for x in 0..p.len() {
            if d & (1 << x) == 0 {
                if let Some(&j) = pos.get(&(d | 1 << x)) {
                    covers.push((names[i].clone(), names[j].clone()));
                }
            }
        }
    }
    Lattice::from_covers(&names, &covers)
}

/// `x ↦ {p ∈ P : p ≤ x}` from `l` into `birkhoff(join_irreducibles(l))`,
/// checked as an isomorphism.
pub fn birkhoff_round_trip(l: &Lattice) -> Result<IsomorphismCertificate> {
    let p = join_irreducibles(l);
    let j = birkhoff(&p)?;
    let ids: Vec<usize> = p
        .elements()
        .iter()
        .map(|n| l.id(n))
        .collect::<Result<_>>()?;
    let ds = down_sets(&p)?;
    let names: HashMap<u64, &str> = ds
        .iter()
        .enumerate()
        .map(|(i, &d)| (d, j.name(i)))
        .collect();
    let mut map = BTreeMap::new();
    for x in 0..l.len() {
        let d = ids
            .iter()
            .enumerate()
            .filter(|&(_, &e)| l.leq(e, x))
            .fold(0u64, |m, (k, _)| m | 1 << k);
        let target = names
            .get(&d)
            .ok_or_else(|| Error::Internal(format!("{} maps outside J(P)", l.name(x))))?;
        map.insert(l.name(x).to_string(), target.to_string());
    }
    verify_isomorphism(l, &j, &map)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RankWitness {
    /// Two saturated chains from minimal elements up to `element`, forcing
    /// two different values for its rank.
    ConflictingRank {
        element: String,
        demands: [usize; 2],
        chains: [Vec<String>; 2],
    },
    /// Two maximal chains of different lengths.
    MaximalChains { chains: [Vec<String>; 2] },
}

impl RankWitness {
    /// Two maximal chains of different lengths. A conflicting-rank witness
    /// is extended upward by one shared saturated chain.
    pub fn maximal_chains(&self, p: &Poset) -> Result<[Vec<String>; 2]> {
        match self {
            RankWitness::MaximalChains { chains } => Ok(chains.clone()),
            RankWitness::ConflictingRank {
                element, chains, ..
            } => {
                let mut x = p.id(element)?;
                let mut tail = Vec::new();
                while let Some(&y) = p.upper_covers(x).first() {
                    tail.push(p.name(y).to_string());
                    x = y;
                }
                let ext = |c: &Vec<String>| c.iter().chain(&tail).cloned().collect::<Vec<_>>();
                Ok([ext(&chains[0]), ext(&chains[1])])
            }
        }
    }

    /// Checks the witness against `p` from scratch.
    pub fn validate(&self, p: &Poset) -> bool {
        let saturated = |c: &[String]| -> Option<Vec<usize>> {
            let ids: Vec<usize> = c.iter().map(|n| p.id(n).ok()).collect::<Option<_>>()?;
            let first = *ids.first()?;
            let ok = p.lower_covers(first).is_empty()
                && ids.windows(2).all(|w| p.covers_pair(w[0], w[1]));
            ok.then_some(ids)
        };
        match self {
            RankWitness::ConflictingRank {
                element,
                demands,
                chains,
            } => {
                let (Some(a), Some(b)) = (saturated(&chains[0]), saturated(&chains[1])) else {
                    return false;
                };
                let Ok(x) = p.id(element) else { return false };
                a.last() == Some(&x)
                    && b.last() == Some(&x)
                    && demands[0] == a.len() - 1
                    && demands[1] == b.len() - 1
                    && demands[0] != demands[1]
            }
            RankWitness::MaximalChains { chains } => {
                let (Some(a), Some(b)) = (saturated(&chains[0]), saturated(&chains[1])) else {
                    return false;
                };
                let top = |c: &[usize]| p.upper_covers(*c.last().unwrap()).is_empty();
                top(&a) && top(&b) && a.len() != b.len()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub elements: Vec<String>,
    pub pure: bool,
    /// Present iff pure; minimal elements have rank 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<RankWitness>,
}

/// Pureness via longest and shortest saturated chains from below.
pub fn rank_report(p: &Poset) -> RankReport {
    let n = p.len();
    let h = p.heights();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (h[x], x));
    let mut lo = vec![0usize; n];
    let mut hi = vec![0usize; n];
    let mut lo_pred: Vec<Option<usize>> = vec![None; n];
    let mut hi_pred: Vec<Option<usize>> = vec![None; n];
    for &x in &order {
        let below = p.lower_covers(x);
        if below.is_empty() {
            continue;
        }
        let lmin = *below.iter().min_by_key(|&&y| (lo[y], y)).unwrap();
        let hmax = *below
            .iter()
            .max_by_key(|&&y| (hi[y], usize::MAX - y))
            .unwrap();
        lo[x] = lo[lmin] + 1;
        lo_pred[x] = Some(lmin);
        hi[x] = hi[hmax] + 1;
        hi_pred[x] = Some(hmax);
    }
    let chain = |mut x: usize, pred: &[Option<usize>]| {
        let mut c = vec![p.name(x).to_string()];
        while let Some(y) = pred[x] {
            c.push(p.name(y).to_string());
            x = y;
        }
        c.reverse();
        c
    };
    let elements = p.elements().to_vec();
    if let Some(&x) = order.iter().find(|&&x| lo[x] != hi[x]) {
        return RankReport {
            elements,
            pure: false,
            rank: None,
            witness: Some(RankWitness::ConflictingRank {
                element: p.name(x).to_string(),
                demands: [hi[x], lo[x]],
                chains: [chain(x, &hi_pred), chain(x, &lo_pred)],
            }),
        };
    }
    let maximal = p.maximal();
    let top_lo = maximal.iter().copied().min_by_key(|&x| (lo[x], x));
    let top_hi = maximal
        .iter()
        .copied()
        .max_by_key(|&x| (lo[x], usize::MAX - x));
    if let (Some(a), Some(b)) = (top_lo, top_hi) {
        if lo[a] != lo[b] {
            return RankReport {
                elements,
                pure: false,
                rank: None,
                witness: Some(RankWitness::MaximalChains {
                    chains: [chain(b, &lo_pred), chain(a, &lo_pred)],
                }),
            };
        }
    }
    RankReport {
        elements,
        pure: true,
        rank: Some((0..n).map(|x| (p.name(x).to_string(), lo[x])).collect()),
        witness: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GorensteinVerdict {
    NotGorenstein,
    GorensteinByPureness,
    /// Non-distributive: the Hibi-ring rule does not apply.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinReport {
    pub join_irreducibles: Vec<String>,
    pub distributive: bool,
    pub pure: bool,
    pub rank: RankReport,
    pub verdict: GorensteinVerdict,
}

/// Distributive and pure ⇒ Gorenstein; distributive and impure ⇒ not.
pub fn gorenstein_report(l: &Lattice) -> GorensteinReport {
    let p = join_irreducibles(l);
    let distributive = is_distributive(l);
    let rank = rank_report(&p);
    let verdict = match (distributive, rank.pure) {
        (false, _) => GorensteinVerdict::NotApplicable,
        (true, true) => GorensteinVerdict::GorensteinByPureness,
        (true, false) => GorensteinVerdict::NotGorenstein,
    };
    GorensteinReport {
        join_irreducibles: p.elements().to_vec(),
        distributive,
        pure: rank.pure,
        rank,
        verdict,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorIsoCertificate {
    pub k: usize,
    pub p: u64,
    pub q: u64,
    pub sizes: [usize; 2],
    pub h1: IsomorphismCertificate,
    pub h2: IsomorphismCertificate,
    pub h2_after_h1_is_identity: bool,
    pub h1_after_h2_is_identity: bool,
    pub verdict: bool,
}

/// Builds `O_{2k}` and `L_{p,q,k}` and checks `h1`, `h2` in both directions.
pub fn verify_theorem_5_1(k: usize, p: u64, q: u64) -> Result<DivisorIsoCertificate> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be >= 1".into()));
    }
    let (h1, h2) = canonical_h_maps(k, p, q)?;
    let o = build_on(2 * k)?;
    let d = build_divisor_lpqk(p, q, k)?;
    let c1 = verify_isomorphism(&o, &d, &h1)?;
    let c2 = verify_isomorphism(&d, &o, &h2)?;
    let round = |a: &BTreeMap<String, String>, b: &BTreeMap<String, String>, dom: &Lattice| {
        dom.elements()
            .iter()
            .all(|x| a.get(x).and_then(|y| b.get(y)) == Some(x))
    };
    let id_o = round(&h1, &h2, &o);
    let id_d = round(&h2, &h1, &d);
    Ok(DivisorIsoCertificate {
        k,
        p,
        q,
        sizes: [o.len(), d.len()],
        verdict: c1.verdict && c2.verdict && id_o && id_d,
        h1: c1,
        h2: c2,
        h2_after_h1_is_identity: id_o,
        h1_after_h2_is_identity: id_d,
    })
}
