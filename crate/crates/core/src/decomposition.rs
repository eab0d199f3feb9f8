//! The four-component decomposition of `I_{L_3(n,m,r)}` and the structural
//! primality certificates for its components.
//!
//! `E` is cut out by identifying all chain variables with `a1` plus the
//! quadric `st - a1^2`; `X`, `Y`, `Z` are intersections of two
//! variable-generated primes. Equality with the join-meet ideal makes the
//! ideal a finite intersection of primes, hence radical.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{build_lk, IndexResolver};
use crate::groebner::{
    ideal_equal, intersect, intersect_monomial, reduced_gb, Budget, Ideal, MonomialIdeal,
};
use crate::joinmeet::{joinmeet_generators, lattice_ring};
use crate::poly::{Coeff, Monomial, MonomialOrder, Polynomial, VariableSet};

fn check_params(n: usize, m: usize, r: usize) -> Result<()> {
    if n == 0 || m == 0 || r == 0 {
        return Err(Error::InvalidParams(format!(
            "need n, m, r >= 1, got ({n}, {m}, {r})"
        )));
    }
    Ok(())
}

/// Ring of `L_3(n, m, r)`: `s, a.., b.., c.., t`.
pub fn l3_ring(n: usize, m: usize, r: usize) -> Result<Arc<VariableSet>> {
    check_params(n, m, r)?;
    Ok(lattice_ring(&build_lk(&[n, m, r])?))
}

fn chain(res: &IndexResolver, chain: usize, len: usize) -> Vec<String> {
    (1..=len as i64).map(|i| res.name(chain, i)).collect()
}

/// `(a1 - a2, .., a1 - an, a1 - b1, .., a1 - cr, st - a1^2)`.
pub fn build_e(n: usize, m: usize, r: usize) -> Result<Ideal> {
    let vars = l3_ring(n, m, r)?;
    let res = IndexResolver::new(&[n, m, r]);
    let nv = vars.len();
    let ord = MonomialOrder::grevlex(nv);
    let a1 = vars.require(&res.a(1))?;
    let mut others = chain(&res, 0, n).split_off(1);
    others.extend(chain(&res, 1, m));
    others.extend(chain(&res, 2, r));
    let mut gens = Vec::new();
    for x in &others {
        let x = vars.require(x)?;
        gens.push(Polynomial::binomial(
            Monomial::var(nv, a1),
            Monomial::var(nv, x),
            &ord,
        ));
    }
    gens.push(Polynomial::binomial(
        vars.monomial(&["s", "t"])?,
        Monomial::var(nv, a1).mul(&Monomial::var(nv, a1)),
        &ord,
    ));
    Ok(Ideal::new(vars, gens).with_label(format!("E({n},{m},{r})")))
}

/// One of `X`, `Y`, `Z`: the intersection of a prime containing `s` and a
/// prime containing `t` over the same two chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariablePair {
    pub label: String,
    pub primes: [Ideal; 2],
    pub monomial: MonomialIdeal,
}

impl VariablePair {
    pub fn ideal(&self) -> Ideal {
        self.monomial
            .to_ideal(self.primes[0].vars().clone())
            .with_label(self.label.clone())
    }
}

/// `X_{n,m}`, `Y_{m,r}`, `Z_{n,r}` via the lcm intersection of their primes.
pub fn build_xyz(n: usize, m: usize, r: usize) -> Result<[VariablePair; 3]> {
    let vars = l3_ring(n, m, r)?;
    let res = IndexResolver::new(&[n, m, r]);
    let lens = [n, m, r];
    let make = |label: String, c1: usize, c2: usize| -> Result<VariablePair> {
        let mut body = chain(&res, c1, lens[c1]);
        body.extend(chain(&res, c2, lens[c2]));
        let mut low: Vec<String> = vec!["s".into()];
        low.extend(body.iter().cloned());
        let mut high = body;
        high.push("t".into());
        let p = |names: &[String], tag: &str| -> Result<Ideal> {
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            Ok(Ideal::variables(vars.clone(), &refs)?.with_label(format!("{label}.{tag}")))
        };
        let (p0, p1) = (p(&low, "s")?, p(&high, "t")?);
        let mono = |i: &Ideal| {
            MonomialIdeal::new(
                i.generators()
                    .iter()
                    .map(|g| g.leading_monomial().unwrap().clone()),
            )
        };
        let monomial = intersect_monomial(&mono(&p0), &mono(&p1));
        Ok(VariablePair {
            label,
            primes: [p0, p1],
            monomial,
        })
    };
    Ok([
        make(format!("X({n},{m})"), 0, 1)?,
        make(format!("Y({m},{r})"), 1, 2)?,
        make(format!("Z({n},{r})"), 0, 2)?,
    ])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method")]
pub enum PrimalityEvidence {
    VariableIdeal {
        variables: Vec<String>,
    },
    LinearSubstitutionPlusIrreducibleQuadric {
        /// Each identified variable and its representative.
        substitution: BTreeMap<String, String>,
        residual: String,
        residual_variables: Vec<String>,
        /// Symmetric Gram matrix of the residual, rows as rationals.
        gram: Vec<Vec<String>>,
        rank: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalityCertificate {
    pub label: String,
    pub generators: Vec<String>,
    pub evidence: PrimalityEvidence,
}

impl PrimalityCertificate {
    /// Re-derives the evidence from the generators.
    pub fn recheck(&self, vars: &Arc<VariableSet>) -> Result<bool> {
        let ord = MonomialOrder::grevlex(vars.len());
        let gens = self
            .generators
            .iter()
            .map(|g| crate::poly::parse_polynomial(g, vars, &ord))
            .collect::<Result<Vec<_>>>()?;
        let again = certify_prime(&Ideal::new(vars.clone(), gens).with_label(self.label.clone()))?;
        Ok(&again == self)
    }
}

fn as_variable(p: &Polynomial) -> Option<usize> {
    match p.terms() {
        [t] if t.mono.degree() == 1 => t.mono.exponents().iter().position(|&e| e == 1),
        _ => None,
    }
}

fn as_difference(p: &Polynomial) -> Option<(usize, usize)> {
    match p.terms() {
        [x, y]
            if x.mono.degree() == 1 && y.mono.degree() == 1 && (&x.coeff + &y.coeff).is_zero() =>
        {
            let i = x.mono.exponents().iter().position(|&e| e == 1)?;
            let j = y.mono.exponents().iter().position(|&e| e == 1)?;
            Some((i, j))
        }
        _ => None,
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Rank over the rationals by Gaussian elimination.
pub fn rational_rank(mut m: Vec<Vec<Coeff>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in c..cols {
                    let v = &f * &m[rank][k];
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Certifies a variable-generated ideal, or a set of variable identifications
/// plus one quadric whose residual after substitution is a ternary form of
/// rank 3.
pub fn certify_prime(ideal: &Ideal) -> Result<PrimalityCertificate> {
    let vars = ideal.vars();
    let label = ideal.label().unwrap_or("ideal").to_string();
    let gens = ideal.generators();
    if gens.is_empty() {
        return Err(Error::ShapeNotRecognized("no generators".into()));
    }
    let mut sorted_texts = ideal.generator_texts();
    sorted_texts.sort();

    if let Some(mut vs) = gens.iter().map(as_variable).collect::<Option<Vec<_>>>() {
        vs.sort_unstable();
        vs.dedup();
        return Ok(PrimalityCertificate {
            label,
            generators: sorted_texts,
            evidence: PrimalityEvidence::VariableIdeal {
                variables: vs.iter().map(|&v| vars.name(v).to_string()).collect(),
            },
        });
    }

    let n = vars.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut rest = Vec::new();
    for g in gens {
        match as_difference(g) {
            Some((i, j)) => {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                let (lo, hi) = (ri.min(rj), ri.max(rj));
                parent[hi] = lo;
            }
            None => rest.push(g),
        }
    }
    let [q] = rest.as_slice() else {
        return Err(Error::ShapeNotRecognized(format!(
            "{label}: expected variable differences plus one quadric, found {} other generators",
            rest.len()
        )));
    };
    let target: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let ord = MonomialOrder::grevlex(n);
    let residual = q.map_variables(&target, n, &ord);
    if residual.is_zero() || residual.terms().iter().any(|t| t.mono.degree() != 2) {
        return Err(Error::ShapeNotRecognized(format!(
            "{label}: residual is not a nonzero quadratic form"
        )));
    }
    let used: Vec<usize> = (0..n).filter(|&v| residual.uses_var(v)).collect();
    if used.len() != 3 {
        return Err(Error::ShapeNotRecognized(format!(
            "{label}: residual quadric uses {} variables, expected 3",
            used.len()
        )));
    }
    let pos = |v: usize| used.iter().position(|&u| u == v).unwrap();
    let mut gram = vec![vec![Coeff::zero(); 3]; 3];
    let half = Coeff::new(1.into(), 2.into());
    for t in residual.terms() {
        let idx: Vec<usize> = t
            .mono
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(v, &e)| std::iter::repeat_n(v, e as usize))
            .collect();
        let (i, j) = (pos(idx[0]), pos(idx[1]));
        if i == j {
            gram[i][i] += &t.coeff;
        } else {
            gram[i][j] += &t.coeff * &half;
            gram[j][i] += &t.coeff * &half;
        }
    }
    let rank = rational_rank(gram.clone());
    if rank != 3 {
        return Err(Error::ShapeNotRecognized(format!(
            "{label}: residual quadratic form has rank {rank}"
        )));
    }
    let substitution = (0..n)
        .filter(|&v| target[v] != v)
        .map(|v| (vars.name(v).to_string(), vars.name(target[v]).to_string()))
        .collect();
    let fmt = |c: &Coeff| {
        if c.denom().is_one() {
            c.numer().to_string()
        } else {
            format!("{}/{}", c.numer(), c.denom())
        }
    };
    Ok(PrimalityCertificate {
        label,
        generators: sorted_texts,
        evidence: PrimalityEvidence::LinearSubstitutionPlusIrreducibleQuadric {
            substitution,
            residual: residual.to_text(vars),
            residual_variables: used.iter().map(|&v| vars.name(v).to_string()).collect(),
            gram: gram
                .iter()
                .map(|row| row.iter().map(fmt).collect())
                .collect(),
            rank,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "conclusion", content = "stage")]
pub enum Conclusion {
    Radical,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub label: String,
    pub generators: Vec<String>,
    /// For `X`, `Y`, `Z`: lcm intersection equals the elimination intersection.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paths_agree: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCertificate {
    pub params: [usize; 3],
    pub variables: Vec<String>,
    pub ideal_generators: Vec<String>,
    pub components: Vec<ComponentReport>,
    /// Every prime in the decomposition, canonically sorted.
    pub primes: Vec<PrimalityCertificate>,
    pub intersection_basis: Vec<String>,
    pub equal: bool,
    pub two_sided_membership: bool,
    pub conclusion: Conclusion,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl DecompositionCertificate {
    /// Generator sets of the primes, as sets of text polynomials.
    pub fn prime_sets(&self) -> BTreeSet<BTreeSet<String>> {
        self.primes
            .iter()
            .map(|p| p.generators.iter().cloned().collect())
            .collect()
    }
}

/// Checks `I_{L_3(n,m,r)} = E ∩ X ∩ Y ∩ Z` and certifies every prime.
///
/// Stages that fail are recorded in the conclusion; only resource limits
/// and bad parameters are returned as errors.
pub fn verify_theorem2(
    n: usize,
    m: usize,
    r: usize,
    budget: Budget,
) -> Result<DecompositionCertificate> {
    check_params(n, m, r)?;
    let lattice = build_lk(&[n, m, r])?;
    let ideal = joinmeet_generators(&lattice);
    let vars = ideal.vars().clone();
    let ord = MonomialOrder::grevlex(vars.len());
    let e = build_e(n, m, r)?;
    let xyz = build_xyz(n, m, r)?;

    let mut notes = Vec::new();
    if m == 1 && r == 1 {
        notes.push(format!("component written E({n},1) is E({n},1,1)"));
    } else if r == 1 {
        notes.push(format!("component written E({n},{m}) is E({n},{m},1)"));
        notes.push(format!(
            "left side written I(L3({n},1,1)) is checked as I(L3({n},{m},1))"
        ));
    }

    let mut failed: Option<String> = None;
    let mut fail = |stage: String| {
        failed.get_or_insert(stage);
    };

    let mut primes = Vec::new();
    match certify_prime(&e) {
        Ok(c) => primes.push(c),
        Err(Error::ShapeNotRecognized(msg)) => fail(format!("prime E: {msg}")),
        Err(other) => return Err(other),
    }
    let mut components = vec![ComponentReport {
        label: e.label().unwrap_or("E").into(),
        generators: sorted(e.generator_texts()),
        paths_agree: None,
    }];
    for pair in &xyz {
        for p in &pair.primes {
            match certify_prime(p) {
                Ok(c) => primes.push(c),
                Err(Error::ShapeNotRecognized(msg)) => fail(format!("prime {}: {msg}", pair.label)),
                Err(other) => return Err(other),
            }
        }
        let elim = intersect(&pair.primes[0], &pair.primes[1], &ord, budget)?;
        let agree = ideal_equal(&elim, &pair.ideal(), &ord, budget)?;
        if !agree {
            fail(format!("{}: intersection paths disagree", pair.label));
        }
        components.push(ComponentReport {
            label: pair.label.clone(),
            generators: pair.monomial.to_strings(&vars),
            paths_agree: Some(agree),
        });
    }
    primes.sort_by(|a, b| a.generators.cmp(&b.generators));

    let mut inter = e.clone();
    for pair in &xyz {
        inter = intersect(&inter, &pair.ideal(), &ord, budget)?;
    }
    let gi = reduced_gb(&ideal, &ord, budget)?;
    let gj = reduced_gb(&inter, &ord, budget)?;
    let equal = gi.basis() == gj.basis();
    if !equal {
        fail("equality".into());
    }
    let two_sided = ideal.generators().iter().all(|f| gj.contains(f))
        && inter.generators().iter().all(|f| gi.contains(f));
    if !two_sided {
        fail("membership".into());
    }

    Ok(DecompositionCertificate {
        params: [n, m, r],
        variables: vars.names().to_vec(),
        ideal_generators: ideal.generator_texts(),
        components,
        primes,
        intersection_basis: gj.basis_texts(),
        equal,
        two_sided_membership: two_sided,
        conclusion: match failed {
            None => Conclusion::Radical,
            Some(stage) => Conclusion::Failed(stage),
        },
        notes,
    })
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

/// Parameter sets verified by default.
pub const DEFAULT_PARAMS: &[[usize; 3]] = &[
    [2, 1, 1],
    [3, 1, 1],
    [4, 1, 1],
    [5, 1, 1],
    [6, 1, 1],
    [2, 2, 1],
    [3, 2, 1],
    [3, 3, 1],
    [2, 2, 2],
];

/// Larger parameter sets, run only on request.
pub const EXTENDED_PARAMS: &[[usize; 3]] = &[
    [7, 1, 1],
    [8, 1, 1],
    [9, 1, 1],
    [10, 1, 1],
    [4, 2, 1],
    [2, 3, 1],
    [4, 3, 1],
    [2, 4, 1],
    [3, 4, 1],
    [4, 4, 1],
    [3, 2, 2],
    [2, 3, 2],
    [2, 2, 3],
    [3, 3, 2],
    [3, 2, 3],
    [2, 3, 3],
    [3, 3, 3],
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_generators() {
        let e = build_e(2, 1, 1).unwrap();
        assert_eq!(
            e.generator_texts(),
            vec!["-a2 + a1", "-b1 + a1", "-c1 + a1", "-a1^2 + s*t"]
        );
        assert_eq!(build_e(1, 1, 1).unwrap().generators().len(), 3);
        assert!(build_e(0, 1, 1).is_err());
    }

    #[test]
    fn xyz_small() {
        let [x, y, z] = build_xyz(2, 1, 1).unwrap();
        let v = x.primes[0].vars().clone();
        assert_eq!(x.monomial.to_strings(&v), vec!["a1", "a2", "b1", "s*t"]);
        assert_eq!(y.primes[0].generator_texts(), vec!["s", "b1", "c1"]);
        assert_eq!(y.primes[1].generator_texts(), vec!["b1", "c1", "t"]);
        assert_eq!(z.monomial.to_strings(&v), vec!["a1", "a2", "c1", "s*t"]);
    }

    #[test]
    fn prime_certificates() {
        let v = l3_ring(2, 1, 1).unwrap();
        let p = Ideal::variables(v.clone(), &["s", "a1", "a2", "b1"]).unwrap();
        assert!(matches!(
            certify_prime(&p).unwrap().evidence,
            PrimalityEvidence::VariableIdeal { .. }
        ));
        let c = certify_prime(&build_e(3, 1, 1).unwrap()).unwrap();
        match &c.evidence {
            PrimalityEvidence::LinearSubstitutionPlusIrreducibleQuadric {
                residual, rank, ..
            } => {
                assert_eq!(residual, "-a1^2 + s*t");
                assert_eq!(*rank, 3);
            }
            other => panic!("{other:?}"),
        }
        assert!(c.recheck(build_e(3, 1, 1).unwrap().vars()).unwrap());
        let bad = Ideal::parse(v.clone(), &["a1*b1"]).unwrap();
        assert!(matches!(
            certify_prime(&bad),
            Err(Error::ShapeNotRecognized(_))
        ));
        // (a1 - a2, s*t - a1*a2) collapses to s*t - a1^2 as well.
        let alt = Ideal::parse(v.clone(), &["a1 - a2", "s*t - a1*a2"]).unwrap();
        assert!(certify_prime(&alt).is_ok());
        // a rank-2 residual is rejected
        let deg = Ideal::parse(v, &["a1 - a2", "s*t - a1*t"]).unwrap();
        assert!(matches!(
            certify_prime(&deg),
            Err(Error::ShapeNotRecognized(_))
        ));
    }

    #[test]
    fn ranks() {
        let q = |v: i64| Coeff::from_integer(v.into());
        assert_eq!(rational_rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rational_rank(vec![vec![q(0), q(1)], vec![q(1), q(0)]]), 2);
    }

    #[test]
    fn smallest_decomposition() {
        let c = verify_theorem2(2, 1, 1, Budget::default()).unwrap();
        assert_eq!(c.conclusion, Conclusion::Radical);
        assert_eq!(c.primes.len(), 7);
        assert!(c
            .components
            .iter()
            .skip(1)
            .all(|x| x.paths_agree == Some(true)));
    }
}
