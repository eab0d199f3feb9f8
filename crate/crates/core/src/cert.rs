//! Versioned JSON certificates, run manifests, and the replay pass that
//! re-verifies a stored certificate from its embedded data.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::claims::{run_claim, Check, ClaimReport, Outcome};
use crate::decomposition::{l3_ring, DecompositionCertificate};
use crate::error::{Error, Result};
use crate::families::{build_lk, FamilySpec};
use crate::groebner::{ideal_equal, is_groebner, reduced_gb, Budget, Ideal, MonomialIdeal};
use crate::joinmeet::{
    check_distributive_via_gb, joinmeet_generators, lattice_ring, paper_basis_parts,
    search_squarefree_order, BasisSet, OrderSpec, PaperBasisSpec, RadicalVerdict,
    RadicalityCertificate, SearchReport, SearchStrategy, SearchVerdict,
};
use crate::lattice::{
    find_forbidden_sublattice, is_distributive, is_modular, IsomorphismCertificate, Lattice,
    LatticeJson, SublatticeWitness,
};
use crate::poly::{parse_polynomial, MonomialOrder, Polynomial, VariableSet};
use crate::structure::{
    birkhoff, birkhoff_round_trip, gorenstein_report, join_irreducibles, rank_report,
    verify_theorem_5_1, DivisorIsoCertificate, GorensteinReport, GorensteinVerdict, RankReport,
};

pub const SCHEMA: u32 = 1;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Certificate kinds understood by [`recheck`].
pub mod kind {
    pub const GB: &str = "gb";
    pub const RADICAL: &str = "radical";
    pub const BASIS_CHECK: &str = "basis-check";
    pub const SEARCH: &str = "search";
    pub const DECOMPOSITION: &str = "decomposition";
    pub const PROPS: &str = "props";
    pub const BIRKHOFF: &str = "birkhoff";
    pub const GORENSTEIN: &str = "gorenstein";
    pub const ISO: &str = "iso";
    pub const CLAIM: &str = "claim";
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: u32,
    pub kind: String,
    pub payload: Value,
}

impl Envelope {
    pub fn new<T: Serialize>(kind: &str, payload: &T) -> Result<Self> {
        Ok(Envelope {
            schema: SCHEMA,
            kind: kind.into(),
            payload: serde_json::to_value(payload)?,
        })
    }

    pub fn payload_as<T: DeserializeOwned>(&self) -> Result<T> {
        Ok(serde_json::from_value(self.payload.clone())?)
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let env: Envelope = serde_json::from_str(s)?;
        if env.schema != SCHEMA {
            return Err(Error::InvalidParams(format!(
                "certificate schema {} (supported: {SCHEMA})",
                env.schema
            )));
        }
        Ok(env)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Digest of the canonical payload bytes.
    pub fn payload_digest(&self) -> String {
        sha256_hex(
            serde_json::to_string(&self.payload)
                .expect("payload serializes")
                .as_bytes(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: u32,
    pub command_line: Vec<String>,
    pub tool_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderSpec>,
    pub budget: Budget,
    /// Input file path to SHA-256 of its bytes.
    pub input_digests: BTreeMap<String, String>,
    /// Written certificate file name to payload digest.
    pub certificates: BTreeMap<String, String>,
    pub outcome: Outcome,
    pub exit_code: i32,
    pub wall_time_ms: u128,
}

/// Published basis checked against Buchberger's criterion and against the
/// join-meet ideal it claims to generate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisCheckReport {
    pub family: FamilySpec,
    pub set: BasisSet,
    pub order: OrderSpec,
    pub order_description: String,
    pub polynomials: Vec<String>,
    pub is_groebner: bool,
    pub pairs_checked: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_pair: Option<(usize, usize, String)>,
    pub spair_digest: String,
    pub generates_ideal: bool,
}

pub fn basis_check(
    family: &FamilySpec,
    set: BasisSet,
    order: &OrderSpec,
    budget: Budget,
) -> Result<BasisCheckReport> {
    family.validate()?;
    let l = family.build()?;
    let ord = order.resolve(&l)?;
    let nb = paper_basis_parts(&PaperBasisSpec {
        family: family.clone(),
        which: set,
    })?;
    let polys = nb.all();
    let check = is_groebner(&polys, &ord);
    let published = Ideal::new(nb.vars.clone(), polys.clone());
    let generates = ideal_equal(&joinmeet_generators(&l), &published, &ord, budget)?;
    Ok(BasisCheckReport {
        family: family.clone(),
        set,
        order: order.clone(),
        order_description: ord.describe(&nb.vars),
        polynomials: polys.iter().map(|p| p.to_text(&nb.vars)).collect(),
        is_groebner: check.is_groebner,
        pairs_checked: check.pairs_checked,
        failing_pair: check
            .failing
            .map(|f| (f.i, f.j, f.remainder.to_text(&nb.vars))),
        spair_digest: check.digest,
        generates_ideal: generates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropsReport {
    pub lattice: LatticeJson,
    pub elements: usize,
    pub incomparable_pairs: usize,
    pub distributive: bool,
    pub distributive_via_gb: bool,
    pub modular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden_sublattice: Option<SublatticeWitness>,
    pub grading: RankReport,
}

pub fn props_report(l: &Lattice) -> PropsReport {
    PropsReport {
        lattice: l.to_json(),
        elements: l.len(),
        incomparable_pairs: l.incomparable_pairs().len(),
        distributive: is_distributive(l),
        distributive_via_gb: check_distributive_via_gb(l),
        modular: is_modular(l),
        forbidden_sublattice: find_forbidden_sublattice(l),
        grading: rank_report(l.poset()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BirkhoffReport {
    pub lattice: LatticeJson,
    pub join_irreducibles: LatticeJson,
    pub down_set_lattice: LatticeJson,
    pub round_trip: IsomorphismCertificate,
}

pub fn birkhoff_report(l: &Lattice) -> Result<BirkhoffReport> {
    let p = join_irreducibles(l);
    Ok(BirkhoffReport {
        lattice: l.to_json(),
        join_irreducibles: p.to_json(),
        down_set_lattice: birkhoff(&p)?.to_json(),
        round_trip: birkhoff_round_trip(l)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinCertificate {
    pub lattice: LatticeJson,
    pub report: GorensteinReport,
}

pub fn gorenstein_certificate(l: &Lattice) -> GorensteinCertificate {
    GorensteinCertificate {
        lattice: l.to_json(),
        report: gorenstein_report(l),
    }
}

/// Stored search with its strategy, replayable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub lattice: LatticeJson,
    pub report: SearchReport,
}

pub fn search_certificate(
    l: &Lattice,
    strategy: &SearchStrategy,
    budget: Budget,
) -> Result<SearchCertificate> {
    Ok(SearchCertificate {
        lattice: l.to_json(),
        report: search_squarefree_order(l, strategy, budget)?,
    })
}

/// Outcome of an envelope's own verdict, before any replay.
pub fn outcome_of(env: &Envelope) -> Result<Outcome> {
    use Outcome::*;
    Ok(match env.kind.as_str() {
        kind::GB | kind::RADICAL => match env.payload_as::<RadicalityCertificate>()?.verdict {
            RadicalVerdict::RadicalBySquarefree => Verified,
            RadicalVerdict::Inconclusive => Inconclusive,
        },
        kind::BASIS_CHECK => {
            let r: BasisCheckReport = env.payload_as()?;
            if r.is_groebner && r.generates_ideal {
                Verified
            } else {
                Failed
            }
        }
        kind::SEARCH => match env.payload_as::<SearchCertificate>()?.report.verdict {
            SearchVerdict::FoundOrder { .. } => Verified,
            SearchVerdict::NoneFound { .. } => Inconclusive,
        },
        kind::DECOMPOSITION => {
            let c: DecompositionCertificate = env.payload_as()?;
            if c.conclusion == crate::decomposition::Conclusion::Radical {
                Verified
            } else {
                Failed
            }
        }
        kind::PROPS => Verified,
        kind::BIRKHOFF => {
            if env.payload_as::<BirkhoffReport>()?.round_trip.verdict {
                Verified
            } else {
                Failed
            }
        }
        kind::GORENSTEIN => match env.payload_as::<GorensteinCertificate>()?.report.verdict {
            GorensteinVerdict::NotApplicable => Inconclusive,
            _ => Verified,
        },
        kind::ISO => {
            let c: DivisorIsoCertificate = env.payload_as()?;
            if c.verdict {
                Verified
            } else {
                Failed
            }
        }
        kind::CLAIM => env.payload_as::<ClaimReport>()?.outcome,
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown certificate kind `{other}`"
            )))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecheckReport {
    pub kind: String,
    pub payload_digest: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn ck(name: &str, passed: bool) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: String::new(),
    }
}

fn parse_all(texts: &[String], vars: &VariableSet, ord: &MonomialOrder) -> Result<Vec<Polynomial>> {
    texts
        .iter()
        .map(|t| parse_polynomial(t, vars, ord))
        .collect()
}

fn same_json<T: Serialize>(stored: &Value, fresh: &T) -> Result<bool> {
    Ok(*stored == serde_json::to_value(fresh)?)
}

fn recheck_radical(c: &RadicalityCertificate, budget: Budget) -> Result<Vec<Check>> {
    let l = Lattice::from_json(&c.lattice)?;
    let ord = c.order.resolve(&l)?;
    let vars = lattice_ring(&l);
    let basis = parse_all(&c.basis, &vars, &ord)?;
    let gbc = is_groebner(&basis, &ord);
    let mut checks = vec![
        ck(
            "order description matches",
            ord.describe(&vars) == c.order_description,
        ),
        ck(
            "basis passes Buchberger's criterion",
            gbc.is_groebner == c.basis_is_groebner,
        ),
        ck("S-pair log digest matches", gbc.digest == c.spair_digest),
    ];
    let raw = joinmeet_generators(&l);
    if !basis.is_empty() {
        let stored = Ideal::new(vars.clone(), basis.clone());
        checks.push(ck(
            "basis generates the join-meet ideal",
            ideal_equal(&raw, &stored, &ord, budget)?,
        ));
    }
    let init = MonomialIdeal::new(basis.iter().filter_map(|p| p.leading_monomial().cloned()));
    checks.push(ck(
        "initial ideal matches",
        init.to_strings(&vars) == c.initial_ideal,
    ));
    checks.push(ck(
        "squarefree flag matches",
        init.is_squarefree() == c.squarefree,
    ));
    let verdict = if gbc.is_groebner && init.is_squarefree() {
        RadicalVerdict::RadicalBySquarefree
    } else {
        RadicalVerdict::Inconclusive
    };
    checks.push(ck("verdict matches", verdict == c.verdict));
    Ok(checks)
}

fn recheck_decomposition(c: &DecompositionCertificate, budget: Budget) -> Result<Vec<Check>> {
    let [n, m, r] = c.params;
    let vars = l3_ring(n, m, r)?;
    let ord = MonomialOrder::grevlex(vars.len());
    let raw = joinmeet_generators(&build_lk(&[n, m, r])?);
    let stored_gens = Ideal::new(vars.clone(), parse_all(&c.ideal_generators, &vars, &ord)?);
    let inter = parse_all(&c.intersection_basis, &vars, &ord)?;
    let inter_ideal = Ideal::new(vars.clone(), inter.clone());
    let mut checks = vec![
        ck("variables match", vars.names() == c.variables.as_slice()),
        ck(
            "stored generators are the join-meet generators",
            raw.generator_texts() == stored_gens.generator_texts(),
        ),
        ck(
            "intersection basis passes Buchberger's criterion",
            is_groebner(&inter, &ord).is_groebner,
        ),
        ck(
            "join-meet ideal equals the stored intersection",
            ideal_equal(&raw, &inter_ideal, &ord, budget)? == c.equal,
        ),
    ];
    let mut primes_ok = true;
    let mut contained = true;
    for p in &c.primes {
        primes_ok &= p.recheck(&vars)?;
        let prime = Ideal::new(vars.clone(), parse_all(&p.generators, &vars, &ord)?);
        let gb = reduced_gb(&prime, &ord, budget)?;
        contained &= inter.iter().all(|f| gb.contains(f));
    }
    checks.push(ck("prime certificates recheck", primes_ok));
    checks.push(ck("intersection lies in every prime", contained));
    Ok(checks)
}

/// Replays a certificate: reductions are redone from the embedded basis,
/// and summary reports are recomputed from their embedded inputs.
pub fn recheck(env: &Envelope, budget: Budget) -> Result<RecheckReport> {
    let checks = match env.kind.as_str() {
        kind::GB | kind::RADICAL => recheck_radical(&env.payload_as()?, budget)?,
        kind::DECOMPOSITION => recheck_decomposition(&env.payload_as()?, budget)?,
        kind::BASIS_CHECK => {
            let r: BasisCheckReport = env.payload_as()?;
            let fresh = basis_check(&r.family, r.set, &r.order, budget)?;
            let l = r.family.build()?;
            let ord = r.order.resolve(&l)?;
            let vars = lattice_ring(&l);
            let polys = parse_all(&r.polynomials, &vars, &ord)?;
            vec![
                ck(
                    "stored polynomials match the rebuilt basis",
                    r.polynomials == fresh.polynomials,
                ),
                ck(
                    "S-pair log digest matches",
                    is_groebner(&polys, &ord).digest == r.spair_digest,
                ),
                ck("report reproduces", fresh == r),
            ]
        }
        kind::SEARCH => {
            let c: SearchCertificate = env.payload_as()?;
            let l = Lattice::from_json(&c.lattice)?;
            let fresh = search_certificate(&l, &c.report.strategy, budget)?;
            vec![ck("search reproduces", fresh == c)]
        }
        kind::PROPS => {
            let r: PropsReport = env.payload_as()?;
            let l = Lattice::from_json(&r.lattice)?;
            let w = r.forbidden_sublattice.as_ref().is_none_or(|w| w.verify(&l));
            vec![
                ck("witness verifies", w),
                ck("report reproduces", props_report(&l) == r),
            ]
        }
        kind::BIRKHOFF => {
            let r: BirkhoffReport = env.payload_as()?;
            let l = Lattice::from_json(&r.lattice)?;
            vec![ck("report reproduces", birkhoff_report(&l)? == r)]
        }
        kind::GORENSTEIN => {
            let r: GorensteinCertificate = env.payload_as()?;
            let l = Lattice::from_json(&r.lattice)?;
            vec![ck("report reproduces", gorenstein_certificate(&l) == r)]
        }
        kind::ISO => {
            let c: DivisorIsoCertificate = env.payload_as()?;
            vec![ck(
                "certificate reproduces",
                verify_theorem_5_1(c.k, c.p, c.q)? == c,
            )]
        }
        kind::CLAIM => {
            let r: ClaimReport = env.payload_as()?;
            let mut checks = match r.claim.as_str() {
                "theorem1" => {
                    recheck_radical(&serde_json::from_value(r.certificate.clone())?, budget)?
                }
                "theorem2" => {
                    recheck_decomposition(&serde_json::from_value(r.certificate.clone())?, budget)?
                }
                _ => Vec::new(),
            };
            let fresh = run_claim(&r.claim, &r.params, budget)?;
            checks.push(ck("claim reproduces", same_json(&env.payload, &fresh)?));
            checks
        }
        other => {
            return Err(Error::InvalidParams(format!(
                "unknown certificate kind `{other}`"
            )))
        }
    };
    Ok(RecheckReport {
        kind: env.kind.clone(),
        payload_digest: env.payload_digest(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

pub fn recheck_file(path: &Path, budget: Budget) -> Result<RecheckReport> {
    recheck(&Envelope::read(path)?, budget)
}

/// Generator sets as text sets, for order-insensitive comparison.
pub fn text_sets(sets: &[Vec<String>]) -> BTreeSet<BTreeSet<String>> {
    sets.iter().map(|s| s.iter().cloned().collect()).collect()
}
