//! Constructors for the lattice families studied here.
//!
//! Elements carry canonical names: `s` (bottom), `t` (top), and `a1, a2, ...`,
//! `b1, ...`, `c1, ...` along the chains. Chain letters continue through the
//! alphabet, skipping `s` and `t`. Divisor lattices name `p^i q^j` as `p{i}q{j}`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Family parameters, validated by [`FamilySpec::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum FamilySpec {
    /// `L_k(n_1, ..., n_k)`: `k` chains between `s` and `t`.
    Lk(Vec<usize>),
    /// `L_2(n_1, n_2)[k', i_1, i_2]` with `a_{i1} < b_{k'} < a_{i2}`.
    L2Glued {
        n1: usize,
        n2: usize,
        kp: usize,
        i1: usize,
        i2: usize,
    },
    /// `O_n`: `L_2(n, n)` with `a_i < b_{i+1} < a_{i+2}` for odd `i`.
    On(usize),
    /// Divisors of the form `C_{p,q,r}`, `r = 1..k`, ordered by divisibility.
    DivisorPqk { p: u64, q: u64, k: usize },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        match *self {
            FamilySpec::Lk(ref ns) => {
                if ns.is_empty() {
                    return bad("L_k needs k >= 1".into());
                }
                if ns.len() > CHAIN_LETTERS.len() {
                    return bad(format!("at most {} chains", CHAIN_LETTERS.len()));
                }
                if ns.contains(&0) {
                    return bad("every chain length must be >= 1".into());
                }
            }
            FamilySpec::L2Glued { n1, n2, kp, i1, i2 } => {
                if n1 < 5 || n2 < 5 {
                    return bad(format!("need n1, n2 >= 5, got ({n1}, {n2})"));
                }
                if i1 <= 1 {
                    return bad(format!("need i1 > 1, got {i1}"));
                }
                // `4 < i2` is reported by `strict_violations` but not enforced:
                // with n2 = 5 it would leave no admissible i2 at all.
                if i2 >= n2 {
                    return bad(format!("need i2 < n2, got i2 = {i2}, n2 = {n2}"));
                }
                if i2 < i1 + 2 {
                    return bad(format!("need i2 - i1 >= 2, got ({i1}, {i2})"));
                }
                if !(3 <= kp && kp + 2 <= n2) {
                    return bad(format!("need 3 <= k' <= n2 - 2, got k' = {kp}"));
                }
                if kp == n1 || kp == n2 {
                    return bad(format!("need k' not in {{n1, n2}}, got k' = {kp}"));
                }
            }
            FamilySpec::On(n) => {
                if n == 0 {
                    return bad("O_n needs n >= 1".into());
                }
            }
            FamilySpec::DivisorPqk { p, q, k } => {
                if p == q {
                    return bad(format!("p and q must differ, got {p}"));
                }
                if !is_prime(p) || !is_prime(q) {
                    return bad(format!("p and q must be prime, got ({p}, {q})"));
                }
                if k == 0 {
                    return bad("k must be >= 1".into());
                }
            }
        }
        Ok(())
    }

    /// Published side conditions that `validate` does not enforce.
    pub fn strict_violations(&self) -> Vec<String> {
        match *self {
            FamilySpec::L2Glued { i2, .. } if i2 <= 4 => vec![format!("4 < i2 (i2 = {i2})")],
            _ => Vec::new(),
        }
    }

    pub fn build(&self) -> Result<Lattice> {
        match *self {
            FamilySpec::Lk(ref ns) => build_lk(ns),
            FamilySpec::L2Glued { n1, n2, kp, i1, i2 } => build_l2_glued(n1, n2, kp, i1, i2),
            FamilySpec::On(n) => build_on(n),
            FamilySpec::DivisorPqk { p, q, k } => build_divisor_lpqk(p, q, k),
        }
    }

    /// Chain lengths used for index resolution.
    pub fn chain_lengths(&self) -> Vec<usize> {
        match *self {
            FamilySpec::Lk(ref ns) => ns.clone(),
            FamilySpec::L2Glued { n1, n2, .. } => vec![n1, n2],
            FamilySpec::On(n) => vec![n, n],
            FamilySpec::DivisorPqk { .. } => Vec::new(),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            FamilySpec::Lk(ref ns) => format!(
                "L{}({})",
                ns.len(),
                ns.iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            FamilySpec::L2Glued { n1, n2, kp, i1, i2 } => format!("L2({n1},{n2})[{kp},{i1},{i2}]"),
            FamilySpec::On(n) => format!("O{n}"),
            FamilySpec::DivisorPqk { p, q, k } => format!("L_{{{p},{q},{k}}}"),
        }
    }
}

/// Compact form: `lk:3,2`, `glued:7,7,4,2,5`, `on:4`, `divisor:p,q,k`.
impl std::str::FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidParams(format!(
                "family `{s}`: expected lk:N,..|glued:n1,n2,kp,i1,i2|on:N|divisor:p,q,k"
            ))
        };
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<u64> = rest
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let spec = match (kind.trim(), nums.as_slice()) {
            ("lk", ns) if !ns.is_empty() => {
                FamilySpec::Lk(ns.iter().map(|&n| n as usize).collect())
            }
            ("glued", &[n1, n2, kp, i1, i2]) => FamilySpec::L2Glued {
                n1: n1 as usize,
                n2: n2 as usize,
                kp: kp as usize,
                i1: i1 as usize,
                i2: i2 as usize,
            },
            ("on", &[n]) => FamilySpec::On(n as usize),
            ("divisor", &[p, q, k]) => FamilySpec::DivisorPqk {
                p,
                q,
                k: k as usize,
            },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

const CHAIN_LETTERS: &[char] = &[
    'a', 'b', 'c', 'd', 'e', 'f', 'g', 'h', 'i', 'j', 'k', 'l', 'm', 'n', 'o', 'p', 'q', 'r', 'u',
    'v', 'w', 'x', 'y', 'z',
];

/// Total resolution of chain indices to element names.
///
/// Indices `<= 0` resolve to the bottom `s`; indices past the chain length
/// resolve to the top `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexResolver {
    lengths: Vec<usize>,
}

impl IndexResolver {
    pub fn new(lengths: &[usize]) -> Self {
        IndexResolver {
            lengths: lengths.to_vec(),
        }
    }

    pub fn chain_letter(chain: usize) -> char {
        CHAIN_LETTERS[chain]
    }

    /// Name of the `i`-th element of chain `chain` (0-based chain, 1-based index).
    pub fn name(&self, chain: usize, i: i64) -> String {
        if i <= 0 {
            "s".to_string()
        } else if i as usize > self.lengths[chain] {
            "t".to_string()
        } else {
            format!("{}{}", CHAIN_LETTERS[chain], i)
        }
    }

    pub fn a(&self, i: i64) -> String {
        self.name(0, i)
    }

    pub fn b(&self, i: i64) -> String {
        self.name(1, i)
    }

    pub fn c(&self, i: i64) -> String {
        self.name(2, i)
    }

    /// Element list in the fixed variable order: `s`, every chain in turn, `t`.
    pub fn elements(&self) -> Vec<String> {
        let mut out = vec!["s".to_string()];
        for (chain, &n) in self.lengths.iter().enumerate() {
            for i in 1..=n {
                out.push(format!("{}{}", CHAIN_LETTERS[chain], i));
            }
        }
        out.push("t".to_string());
        out
    }

    /// Chain covers `s < x1 < ... < xn < t` for each chain.
    pub fn chain_relations(&self) -> Vec<(String, String)> {
        let mut rel = Vec::new();
        for (chain, &n) in self.lengths.iter().enumerate() {
            for i in 0..=n as i64 {
                rel.push((self.name(chain, i), self.name(chain, i + 1)));
            }
        }
        rel
    }
}

fn assemble(elements: Vec<String>, relations: Vec<(String, String)>) -> Result<Lattice> {
    let rel: Vec<(&str, &str)> = relations
        .iter()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    let el: Vec<&str> = elements.iter().map(String::as_str).collect();
    Lattice::from_covers(&el, &rel)
}

/// `L_k(n_1, ..., n_k)`.
pub fn build_lk(ns: &[usize]) -> Result<Lattice> {
    FamilySpec::Lk(ns.to_vec()).validate()?;
    let r = IndexResolver::new(ns);
    assemble(r.elements(), r.chain_relations())
}

/// `L_2(n_1, n_2)[k', i_1, i_2]`.
pub fn build_l2_glued(n1: usize, n2: usize, kp: usize, i1: usize, i2: usize) -> Result<Lattice> {
    FamilySpec::L2Glued { n1, n2, kp, i1, i2 }.validate()?;
    let r = IndexResolver::new(&[n1, n2]);
    let mut rel = r.chain_relations();
    rel.push((r.a(i1 as i64), r.b(kp as i64)));
    rel.push((r.b(kp as i64), r.a(i2 as i64)));
    assemble(r.elements(), rel)
}

/// `O_n`.
pub fn build_on(n: usize) -> Result<Lattice> {
    FamilySpec::On(n).validate()?;
    let r = IndexResolver::new(&[n, n]);
    let mut rel = r.chain_relations();
    for i in (1..=n as i64).step_by(2) {
        rel.push((r.a(i), r.b(i + 1)));
        rel.push((r.b(i + 1), r.a(i + 2)));
    }
    assemble(r.elements(), rel)
}

/// Exponent pairs `(i, j)` of `p^i q^j` in `L_{p,q,k}`, sorted by value.
pub fn divisor_exponents(p: u64, q: u64, k: usize) -> Vec<(u32, u32)> {
    let mut exps: Vec<(u32, u32)> = vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (2, 1)];
    for r in 2..=k as u32 {
        exps.extend([(r - 1, r), (r, r), (r + 1, r), (r + 1, r - 1)]);
    }
    exps.sort_by_key(|&(i, j)| divisor_value(p, q, i, j));
    exps.dedup();
    exps
}

pub fn divisor_value(p: u64, q: u64, i: u32, j: u32) -> BigUint {
    BigUint::from(p).pow(i) * BigUint::from(q).pow(j)
}

pub fn divisor_name(i: u32, j: u32) -> String {
    format!("p{i}q{j}")
}

/// Element id to integer value for `L_{p,q,k}`.
pub fn divisor_values(p: u64, q: u64, k: usize) -> Result<BTreeMap<String, BigUint>> {
    FamilySpec::DivisorPqk { p, q, k }.validate()?;
    Ok(divisor_exponents(p, q, k)
        .into_iter()
        .map(|(i, j)| (divisor_name(i, j), divisor_value(p, q, i, j)))
        .collect())
}

/// `L_{p,q,k}`, ordered by divisibility of the actual integers.
pub fn build_divisor_lpqk(p: u64, q: u64, k: usize) -> Result<Lattice> {
    FamilySpec::DivisorPqk { p, q, k }.validate()?;
    let exps = divisor_exponents(p, q, k);
    let values: Vec<BigUint> = exps
        .iter()
        .map(|&(i, j)| divisor_value(p, q, i, j))
        .collect();
    let names: Vec<String> = exps.iter().map(|&(i, j)| divisor_name(i, j)).collect();
    let zero = BigUint::from(0u32);
    let mut rel = Vec::new();
    for (x, vx) in values.iter().enumerate() {
        for (y, vy) in values.iter().enumerate() {
            if x != y && vy % vx == zero {
                rel.push((names[x].clone(), names[y].clone()));
            }
        }
    }
    assemble(names, rel)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The maps `h1: O_{2k} -> L_{p,q,k}` and `h2: L_{p,q,k} -> O_{2k}`.
///
/// `h1` is seeded on `s`, `a_1`, `a_{2r}`, `b_{2r-1}` and extended by joins
/// (lcm, i.e. exponent-wise max); `h2` is given directly on the powers.
pub fn canonical_h_maps(
    k: usize,
    p: u64,
    q: u64,
) -> Result<(BTreeMap<String, String>, BTreeMap<String, String>)> {
    FamilySpec::DivisorPqk { p, q, k }.validate()?;
    let r_o = IndexResolver::new(&[2 * k, 2 * k]);
    let join = |x: (u32, u32), y: (u32, u32)| (x.0.max(y.0), x.1.max(y.1));

    let mut h1: BTreeMap<String, (u32, u32)> = BTreeMap::new();
    h1.insert("s".into(), (0, 0));
    h1.insert(r_o.a(1), (1, 0));
    for r in 1..=k as u32 {
        let ri = r as i64;
        h1.insert(r_o.a(2 * ri), (r + 1, r - 1));
        h1.insert(r_o.b(2 * ri - 1), (r - 1, r));
    }
    for r in 1..=k as i64 {
        let b2r = join(h1[&r_o.a(2 * r - 1)], h1[&r_o.b(2 * r - 1)]);
        h1.insert(r_o.b(2 * r), b2r);
        let a2r1 = join(h1[&r_o.a(2 * r)], b2r);
        h1.insert(r_o.a(2 * r + 1), a2r1);
    }
    let h1: BTreeMap<String, String> = h1
        .into_iter()
        .map(|(x, (i, j))| (x, divisor_name(i, j)))
        .collect();

    let mut h2: BTreeMap<String, String> = BTreeMap::new();
    h2.insert(divisor_name(0, 0), "s".into());
    h2.insert(divisor_name(1, 0), r_o.a(1));
    for r in 1..=k as u32 {
        let ri = r as i64;
        h2.insert(divisor_name(r + 1, r - 1), r_o.a(2 * ri));
        h2.insert(divisor_name(r - 1, r), r_o.b(2 * ri - 1));
        h2.insert(divisor_name(r + 1, r), r_o.a(2 * ri + 1));
        h2.insert(divisor_name(r, r), r_o.b(2 * ri));
    }
    Ok((h1, h2))
}
