//! Finite posets and lattices.
//!
//! A [`Poset`] is built from any generating set of order relations; the
//! reflexive-transitive closure and the cover relation (its transitive
//! reduction) are derived. A [`Lattice`] additionally carries total join and
//! meet tables, each entry computed as the unique least upper (greatest lower)
//! bound by intersecting upper (lower) sets.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite partial order on named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds a poset from element names and generating relations `(lower, upper)`.
    ///
    /// The relations need not be covers; the closure is taken.
    pub fn new<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let index = build_index(&names)?;
        let mut pairs = Vec::with_capacity(relations.len());
        for (lo, hi) in relations {
            let lo = *index
                .get(lo.as_ref())
                .ok_or_else(|| Error::UnknownElement(lo.as_ref().to_string()))?;
            let hi = *index
                .get(hi.as_ref())
                .ok_or_else(|| Error::UnknownElement(hi.as_ref().to_string()))?;
            pairs.push((lo, hi));
        }
        Self::with_index(names, index, &pairs)
    }

    /// Same as [`Poset::new`] with relations given by element position.
    pub fn from_indices(elements: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let index = build_index(&elements)?;
        if let Some(&(a, b)) = relations
            .iter()
            .find(|(a, b)| *a >= elements.len() || *b >= elements.len())
        {
            return Err(Error::UnknownElement(format!("#{}", a.max(b))));
        }
        Self::with_index(elements, index, relations)
    }

    fn with_index(
        elements: Vec<String>,
        index: HashMap<String, usize>,
        relations: &[(usize, usize)],
    ) -> Result<Self> {
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(lo, hi) in relations {
            if lo == hi {
                return Err(Error::CycleDetected(elements[lo].clone()));
            }
            leq[lo][hi] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::CycleDetected(elements[i].clone()));
                }
            }
        }
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && leq[i][j]
                    && !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j])
                {
                    covers.push((i, j));
                }
            }
        }
        Ok(Poset {
            elements,
            index,
            leq,
            covers,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn id(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq[a][b] || self.leq[b][a]
    }

    /// Cover pairs `(lower, upper)` sorted by position.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn covers_pair(&self, lower: usize, upper: usize) -> bool {
        self.covers.binary_search(&(lower, upper)).is_ok()
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|&&(_, hi)| hi == x)
            .map(|&(lo, _)| lo)
            .collect()
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        self.covers
            .iter()
            .filter(|&&(lo, _)| lo == x)
            .map(|&(_, hi)| hi)
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|y| !self.lt(y, x)))
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|y| !self.lt(x, y)))
            .collect()
    }

    /// Induced subposet on the given positions, keeping their relative order.
    pub fn induced(&self, subset: &[usize]) -> Poset {
        let names = subset.iter().map(|&i| self.elements[i].clone()).collect();
        let mut rel = Vec::new();
        for (a, &x) in subset.iter().enumerate() {
            for (b, &y) in subset.iter().enumerate() {
                if x != y && self.leq[x][y] {
                    rel.push((a, b));
                }
            }
        }
        Poset::from_indices(names, &rel).expect("induced subposet of a valid poset")
    }

    /// Length of the longest chain from a minimal element to each element.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        // Any linear extension: sort by number of elements below.
        order.sort_by_key(|&x| (0..n).filter(|&y| self.leq[y][x]).count());
        let mut h = vec![0usize; n];
        for &x in &order {
            for y in self.lower_covers(x) {
                h[x] = h[x].max(h[y] + 1);
            }
        }
        h
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            elements: self.elements.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(a, b)| [self.elements[a].clone(), self.elements[b].clone()])
                .collect(),
        }
    }
}

fn build_index(names: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(Error::DuplicateElement(n.clone()));
        }
    }
    Ok(index)
}

/// Wire format shared by posets and lattices: element ids and `(lower, upper)` covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

/// Finite lattice with precomputed join and meet tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    /// Builds and validates a lattice from element ids and `(lower, upper)` pairs.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::NoBoundedElements);
        }
        Self::from_poset(Poset::new(elements, covers)?)
    }

    pub fn from_json(json: &LatticeJson) -> Result<Self> {
        let covers: Vec<(&str, &str)> = json
            .covers
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let elements: Vec<&str> = json.elements.iter().map(String::as_str).collect();
        Self::from_covers(&elements, &covers)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> LatticeJson {
        self.poset.to_json()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("lattice json")
    }

    pub fn from_poset(poset: Poset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::NoBoundedElements);
        }
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let upper: Vec<usize> = (0..n)
                    .filter(|&c| poset.leq(a, c) && poset.leq(b, c))
                    .collect();
                let lub = upper
                    .iter()
                    .copied()
                    .find(|&c| upper.iter().all(|&d| poset.leq(c, d)))
                    .ok_or_else(|| {
                        Error::NotALattice(
                            poset.name(a).to_string(),
                            poset.name(b).to_string(),
                            "least upper bound",
                        )
                    })?;
                let lower: Vec<usize> = (0..n)
                    .filter(|&c| poset.leq(c, a) && poset.leq(c, b))
                    .collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&c| lower.iter().all(|&d| poset.leq(d, c)))
                    .ok_or_else(|| {
                        Error::NotALattice(
                            poset.name(a).to_string(),
                            poset.name(b).to_string(),
                            "greatest lower bound",
                        )
                    })?;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
            }
        }
        let bottom = (0..n)
            .find(|&x| (0..n).all(|y| poset.leq(x, y)))
            .ok_or(Error::NoBoundedElements)?;
        let top = (0..n)
            .find(|&x| (0..n).all(|y| poset.leq(y, x)))
            .ok_or(Error::NoBoundedElements)?;
        Ok(Lattice {
            poset,
            join,
            meet,
            bottom,
            top,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[String] {
        self.poset.elements()
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn id(&self, name: &str) -> Result<usize> {
        self.poset.id(name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    /// Join by element name; panics on unknown names (test and example convenience).
    pub fn join_of(&self, a: &str, b: &str) -> &str {
        let (a, b) = (self.id(a).unwrap(), self.id(b).unwrap());
        self.name(self.join(a, b))
    }

    pub fn meet_of(&self, a: &str, b: &str) -> &str {
        let (a, b) = (self.id(a).unwrap(), self.id(b).unwrap());
        self.name(self.meet(a, b))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Unordered incomparable pairs `(a, b)` with `a < b` by position.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if !self.poset.comparable(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Exhaustive check of the lattice identities; returns the first failing
    /// law and triple.
    pub fn check_axioms(&self) -> std::result::Result<(), (&'static str, [usize; 3])> {
        let n = self.len();
        for a in 0..n {
            if self.join(a, a) != a || self.meet(a, a) != a {
                return Err(("idempotence", [a, a, a]));
            }
            if !self.leq(self.bottom, a) || !self.leq(a, self.top) {
                return Err(("bounds", [a, a, a]));
            }
            for b in 0..n {
                if self.join(a, b) != self.join(b, a) || self.meet(a, b) != self.meet(b, a) {
                    return Err(("commutativity", [a, b, b]));
                }
                if self.join(a, self.meet(a, b)) != a || self.meet(a, self.join(a, b)) != a {
                    return Err(("absorption", [a, b, b]));
                }
                let le = self.leq(a, b);
                if le != (self.join(a, b) == b) || le != (self.meet(a, b) == a) {
                    return Err(("order consistency", [a, b, b]));
                }
                for c in 0..n {
                    if self.join(a, self.join(b, c)) != self.join(self.join(a, b), c)
                        || self.meet(a, self.meet(b, c)) != self.meet(self.meet(a, b), c)
                    {
                        return Err(("associativity", [a, b, c]));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` for every triple.
pub fn is_distributive(l: &Lattice) -> bool {
    let n = l.len();
    (0..n).all(|a| {
        (0..n)
            .all(|b| (0..n).all(|c| l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c))))
    })
}

/// Dedekind's modular law: `a ≤ c ⇒ a ∨ (b ∧ c) = (a ∨ b) ∧ c`.
pub fn is_modular(l: &Lattice) -> bool {
    let n = l.len();
    (0..n).all(|a| {
        (0..n).all(|c| {
            !l.leq(a, c) || (0..n).all(|b| l.join(a, l.meet(b, c)) == l.meet(l.join(a, b), c))
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ForbiddenKind {
    N5,
    M5,
}

impl ForbiddenKind {
    /// Abstract node names and their order relations `(lower, upper)`.
    ///
    /// N5 is `0 < a < b < 1`, `0 < c < 1`; M5 is `0 < x, y, z < 1`.
    pub fn abstract_lattice(self) -> Lattice {
        match self {
            ForbiddenKind::N5 => Lattice::from_covers(
                &["0", "a", "b", "c", "1"],
                &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
            ),
            ForbiddenKind::M5 => Lattice::from_covers(
                &["0", "x", "y", "z", "1"],
                &[
                    ("0", "x"),
                    ("0", "y"),
                    ("0", "z"),
                    ("x", "1"),
                    ("y", "1"),
                    ("z", "1"),
                ],
            ),
        }
        .expect("abstract pentagon/diamond")
    }
}

/// A sublattice isomorphic to N5 or M5.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublatticeWitness {
    pub kind: ForbiddenKind,
    /// The five element ids, in the lattice's element order.
    pub elements: Vec<String>,
    /// Abstract node name to element id.
    pub embedding: BTreeMap<String, String>,
}

impl SublatticeWitness {
    /// Checks that the induced join and meet tables equal the abstract ones.
    pub fn verify(&self, l: &Lattice) -> bool {
        let abs = self.kind.abstract_lattice();
        let mut image = Vec::with_capacity(5);
        for node in abs.elements() {
            match self.embedding.get(node).and_then(|id| l.id(id).ok()) {
                Some(i) => image.push(i),
                None => return false,
            }
        }
        let mut sorted = image.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != 5 {
            return false;
        }
        for x in 0..5 {
            for y in 0..5 {
                if l.join(image[x], image[y]) != image[abs.join(x, y)]
                    || l.meet(image[x], image[y]) != image[abs.meet(x, y)]
                {
                    return false;
                }
            }
        }
        true
    }
}

fn witness(l: &Lattice, kind: ForbiddenKind, nodes: [(&str, usize); 5]) -> SublatticeWitness {
    let mut ids: Vec<usize> = nodes.iter().map(|&(_, i)| i).collect();
    ids.sort_unstable();
    SublatticeWitness {
        kind,
        elements: ids.iter().map(|&i| l.name(i).to_string()).collect(),
        embedding: nodes
            .iter()
            .map(|&(node, i)| (node.to_string(), l.name(i).to_string()))
            .collect(),
    }
}

/// Finds an N5 sublattice, else an M5 sublattice.
///
/// Candidates are enumerated by the element playing the lone side (`c` in
/// N5, `x` in M5) first, then by the remaining elements in lattice order, and
/// only pairs incomparable to it are considered. The first hit is returned
/// after checking it against the abstract tables.
pub fn find_forbidden_sublattice(l: &Lattice) -> Option<SublatticeWitness> {
    let n = l.len();
    let p = l.poset();
    for c in 0..n {
        let free: Vec<usize> = (0..n).filter(|&x| !p.comparable(x, c)).collect();
        for &a in &free {
            for &b in &free {
                if p.lt(a, b) && l.join(a, c) == l.join(b, c) && l.meet(a, c) == l.meet(b, c) {
                    let w = witness(
                        l,
                        ForbiddenKind::N5,
                        [
                            ("0", l.meet(a, c)),
                            ("a", a),
                            ("b", b),
                            ("c", c),
                            ("1", l.join(a, c)),
                        ],
                    );
                    debug_assert!(w.verify(l));
                    return Some(w);
                }
            }
        }
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if p.comparable(x, y) {
                continue;
            }
            let (top, bot) = (l.join(x, y), l.meet(x, y));
            for z in (y + 1)..n {
                if !p.comparable(x, z)
                    && !p.comparable(y, z)
                    && l.join(x, z) == top
                    && l.join(y, z) == top
                    && l.meet(x, z) == bot
                    && l.meet(y, z) == bot
                {
                    let w = witness(
                        l,
                        ForbiddenKind::M5,
                        [("0", bot), ("x", x), ("y", y), ("z", z), ("1", top)],
                    );
                    debug_assert!(w.verify(l));
                    return Some(w);
                }
            }
        }
    }
    None
}

/// A failed isomorphism check and the pair that shows it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoViolation {
    pub check: String,
    pub pair: [String; 2],
}

/// Outcome of checking a map between two lattices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphismCertificate {
    pub map: BTreeMap<String, String>,
    pub bijective: bool,
    pub order_preserving: bool,
    pub inverse_order_preserving: bool,
    pub verdict: bool,
    pub evidence: Vec<IsoViolation>,
}

/// Checks that `map` is an order isomorphism from `from` onto `to`.
pub fn verify_isomorphism(
    from: &Lattice,
    to: &Lattice,
    map: &BTreeMap<String, String>,
) -> Result<IsomorphismCertificate> {
    let n = from.len();
    let mut image = Vec::with_capacity(n);
    for name in from.elements() {
        let target = map
            .get(name)
            .ok_or_else(|| Error::MapNotTotal(name.clone()))?;
        image.push(to.id(target)?);
    }
    let mut evidence = Vec::new();
    let pair = |a: usize, b: usize| [from.name(a).to_string(), from.name(b).to_string()];

    let mut bijective = n == to.len();
    if !bijective {
        evidence.push(IsoViolation {
            check: format!("cardinality {} vs {}", n, to.len()),
            pair: [String::new(), String::new()],
        });
    }
    'inj: for a in 0..n {
        for b in (a + 1)..n {
            if image[a] == image[b] {
                bijective = false;
                evidence.push(IsoViolation {
                    check: "injective".into(),
                    pair: pair(a, b),
                });
                break 'inj;
            }
        }
    }

    let mut order_preserving = true;
    let mut inverse_order_preserving = true;
    for a in 0..n {
        for b in 0..n {
            let src = from.leq(a, b);
            let dst = to.leq(image[a], image[b]);
            if order_preserving && src && !dst {
                order_preserving = false;
                evidence.push(IsoViolation {
                    check: "order-preserving".into(),
                    pair: pair(a, b),
                });
            }
            if inverse_order_preserving && dst && !src {
                inverse_order_preserving = false;
                evidence.push(IsoViolation {
                    check: "inverse order-preserving".into(),
                    pair: pair(a, b),
                });
            }
        }
    }
    Ok(IsomorphismCertificate {
        map: map.clone(),
        bijective,
        order_preserving,
        inverse_order_preserving,
        verdict: bijective && order_preserving && inverse_order_preserving,
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Lattice {
        Lattice::from_covers(
            &["s", "a1", "b1", "t"],
            &[("s", "a1"), ("s", "b1"), ("a1", "t"), ("b1", "t")],
        )
        .unwrap()
    }

    fn m5() -> Lattice {
        Lattice::from_covers(
            &["s", "a1", "b1", "c1", "t"],
            &[
                ("s", "a1"),
                ("s", "b1"),
                ("s", "c1"),
                ("a1", "t"),
                ("b1", "t"),
                ("c1", "t"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn square_join_meet() {
        let l = square();
        assert_eq!(l.join_of("a1", "b1"), "t");
        assert_eq!(l.meet_of("a1", "b1"), "s");
        assert!(l.check_axioms().is_ok());
        assert!(is_distributive(&l));
        assert!(is_modular(&l));
        assert!(find_forbidden_sublattice(&l).is_none());
    }

    #[test]
    fn m5_is_modular_not_distributive() {
        let l = m5();
        assert!(l.check_axioms().is_ok());
        assert!(!is_distributive(&l));
        assert!(is_modular(&l));
        let w = find_forbidden_sublattice(&l).unwrap();
        assert_eq!(w.kind, ForbiddenKind::M5);
        assert_eq!(w.elements, vec!["s", "a1", "b1", "c1", "t"]);
        assert!(w.verify(&l));
    }

    #[test]
    fn n5_is_not_modular() {
        let l = ForbiddenKind::N5.abstract_lattice();
        assert!(!is_modular(&l));
        assert!(!is_distributive(&l));
        let w = find_forbidden_sublattice(&l).unwrap();
        assert_eq!(w.kind, ForbiddenKind::N5);
    }

    #[test]
    fn missing_top_is_not_a_lattice() {
        let err = Lattice::from_covers(&["x", "y", "z"], &[("x", "y"), ("x", "z")]).unwrap_err();
        match err {
            Error::NotALattice(a, b, _) => assert_eq!((a.as_str(), b.as_str()), ("y", "z")),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn cycle_and_bad_input() {
        assert!(matches!(
            Poset::new(&["x", "y"], &[("x", "y"), ("y", "x")]),
            Err(Error::CycleDetected(_))
        ));
        assert!(matches!(
            Poset::new(&["x"], &[("x", "x")]),
            Err(Error::CycleDetected(_))
        ));
        assert!(matches!(
            Poset::new(&["x", "x"], &[]),
            Err(Error::DuplicateElement(_))
        ));
        assert!(matches!(
            Poset::new(&["x"], &[("x", "q")]),
            Err(Error::UnknownElement(_))
        ));
        let empty: [&str; 0] = [];
        assert!(matches!(
            Lattice::from_covers(&empty, &[]),
            Err(Error::NoBoundedElements)
        ));
    }

    #[test]
    fn covers_are_transitive_reduction() {
        let p = Poset::new(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(p.heights(), vec![0, 1, 2]);
    }

    #[test]
    fn json_round_trip() {
        let l = m5();
        let s = l.to_json_string();
        assert_eq!(
            s,
            r#"{"elements":["s","a1","b1","c1","t"],"covers":[["s","a1"],["s","b1"],["s","c1"],["a1","t"],["b1","t"],["c1","t"]]}"#
        );
        assert_eq!(Lattice::from_json_str(&s).unwrap(), l);
    }

    #[test]
    fn identity_is_isomorphism() {
        let l = m5();
        let id: BTreeMap<String, String> = l
            .elements()
            .iter()
            .map(|e| (e.clone(), e.clone()))
            .collect();
        let c = verify_isomorphism(&l, &l, &id).unwrap();
        assert!(c.verdict);
        assert!(c.evidence.is_empty());
    }

    #[test]
    fn partial_map_rejected() {
        let l = square();
        let mut map = BTreeMap::new();
        map.insert("s".to_string(), "s".to_string());
        assert!(matches!(
            verify_isomorphism(&l, &l, &map),
            Err(Error::MapNotTotal(_))
        ));
    }

    #[test]
    fn non_injective_map_rejected() {
        let l = square();
        let map: BTreeMap<String, String> = [("s", "s"), ("a1", "a1"), ("b1", "a1"), ("t", "t")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let c = verify_isomorphism(&l, &l, &map).unwrap();
        assert!(!c.bijective);
        assert!(!c.verdict);
        assert_eq!(c.evidence[0].pair, ["a1".to_string(), "b1".to_string()]);
    }
}
