//! The `jmlat` command line.
//!
//! Every subcommand writes its result to stdout and, with `--out DIR`,
//! also to `DIR/<name>.json` next to a `manifest.json`. Exit codes: 0
//! verified, 2 inconclusive, 1 error or failed verification.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cert::{
    basis_check, birkhoff_report, gorenstein_certificate, kind, outcome_of, props_report, recheck,
    search_certificate, sha256_hex, Envelope, RunManifest, SCHEMA,
};
use crate::claims::{run_claim, ClaimParams, Outcome, CLAIMS};
use crate::decomposition::{verify_theorem2, Conclusion, DEFAULT_PARAMS, EXTENDED_PARAMS};
use crate::error::{Error, Result};
use crate::families::{build_lk, build_on, FamilySpec};
use crate::groebner::{buchberger_with, initial_ideal, reduced_gb, BuchbergerOptions, Budget};
use crate::joinmeet::{
    certify_radical, joinmeet_generators, on_generators, BasisSet, OrderSpec, SearchStrategy,
};
use crate::lattice::Lattice;
use crate::structure::verify_theorem_5_1;

#[derive(Debug, Parser)]
#[command(name = "jmlat", version, about = "Join-meet ideals of finite lattices")]
pub struct Cli {
    /// grevlex | rank-grevlex | lex | perm:<smallest,...,largest>
    #[arg(long, global = true)]
    pub order: Option<OrderSpec>,
    /// Maximum S-pairs reduced per Buchberger run.
    #[arg(long, global = true)]
    pub budget_pairs: Option<usize>,
    /// Maximum degree of a new basis element.
    #[arg(long, global = true)]
    pub budget_degree: Option<u32>,
    /// Directory for certificates and the run manifest.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Replay every emitted certificate before exiting.
    #[arg(long, global = true)]
    pub recheck: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LatticeSource {
    /// Lattice JSON file.
    #[arg(long)]
    pub lattice: Option<PathBuf>,
    /// lk:3,2 | glued:7,7,4,2,5 | on:4 | divisor:p,q,k
    #[arg(long)]
    pub family: Option<FamilySpec>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a lattice and print its JSON.
    Family {
        #[command(subcommand)]
        kind: FamilyCmd,
    },
    /// Reduced Gröbner basis of the join-meet ideal.
    Gb {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long, value_enum, default_value_t = Emit::Certificate)]
        emit: Emit,
    },
    /// Check a published basis against Buchberger's criterion.
    VerifyBasis {
        #[arg(long, value_enum)]
        set: SetArg,
        #[command(flatten)]
        p: FamilyNumbers,
    },
    /// Radicality by a squarefree initial ideal.
    Radical {
        #[command(flatten)]
        source: LatticeSource,
    },
    /// Look for a monomial order with a squarefree initial ideal.
    SearchOrder {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long, value_enum, default_value_t = StrategyArg::AllRevlex)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample lex orders instead of grevlex.
        #[arg(long)]
        lex: bool,
    },
    /// Verify the prime decomposition of the three-chain lattice ideal.
    Decompose {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Allow parameters outside the default set, with a larger budget.
        #[arg(long)]
        extended: bool,
        /// Run the whole parameter table.
        #[arg(long)]
        all: bool,
    },
    /// Distributivity, modularity, forbidden sublattices, grading.
    Props {
        #[command(flatten)]
        source: LatticeSource,
    },
    /// Join-irreducibles, their down-set lattice, and the round trip.
    Birkhoff {
        #[command(flatten)]
        source: LatticeSource,
    },
    /// Gorenstein verdict of the Hibi ring by the pureness rule.
    Gorenstein {
        #[command(flatten)]
        source: LatticeSource,
    },
    /// The two explicit isomorphisms between O_2k and the divisor lattice.
    IsoCheck {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        q: u64,
    },
    /// Timing table as CSV.
    Bench {
        #[arg(value_enum)]
        suite: Suite,
        /// Number of instances (default: the whole suite).
        #[arg(long)]
        count: Option<usize>,
    },
    /// Run one named end-to-end claim.
    VerifyPaper {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CLAIMS))]
        claim: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        /// Glued parameters n1,n2,kp,i1,i2.
        #[arg(long, value_delimiter = ',', num_args = 5)]
        glued: Option<Vec<usize>>,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCmd {
    Lk {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
    },
    Glued {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        kp: usize,
        #[arg(long)]
        i1: usize,
        #[arg(long)]
        i2: usize,
    },
    On {
        #[arg(long)]
        n: usize,
    },
    Divisor {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Args)]
pub struct FamilyNumbers {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n1: Option<usize>,
    #[arg(long)]
    pub n2: Option<usize>,
    #[arg(long)]
    pub kp: Option<usize>,
    #[arg(long)]
    pub i1: Option<usize>,
    #[arg(long)]
    pub i2: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Basis,
    Initial,
    Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetArg {
    PaperL2,
    PaperGlued,
    PaperOn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    AllRevlex,
    AllLex,
    All,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    L2Scaling,
    L3Decompose,
    OnScaling,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub vars: usize,
    pub generators: usize,
    pub spairs: usize,
    pub wall_ms: f64,
    pub status: String,
}

pub const BENCH_HEADER: &str = "instance,vars,generators,spairs,wall_ms,status";

fn limit_or<T>(r: Result<T>) -> Result<std::result::Result<T, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::ResourceLimit(msg)) => Ok(Err(msg)),
        Err(e) => Err(e),
    }
}

/// Timing rows for a suite. S-pair counts are deterministic; times are not.
/// Budget overruns are reported in the status column.
pub fn bench(suite: Suite, count: Option<usize>, budget: Budget) -> Result<Vec<BenchRow>> {
    let opts = BuchbergerOptions {
        budget,
        ..Default::default()
    };
    let mut rows = Vec::new();
    let row = |instance: String, l: &Lattice, ord: OrderSpec| -> Result<BenchRow> {
        let ideal = joinmeet_generators(l);
        let start = Instant::now();
        let run = limit_or(buchberger_with(&ideal, &ord.resolve(l)?, &opts))?;
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(BenchRow {
            instance,
            vars: l.len(),
            generators: ideal.generators().len(),
            spairs: run.as_ref().map(|(_, s)| s.pairs_reduced).unwrap_or(0),
            wall_ms,
            status: match run {
                Ok(_) => "ok".into(),
                Err(msg) => format!("resource-limit: {msg}"),
            },
        })
    };
    match suite {
        Suite::L2Scaling => {
            for n in (2..).take(count.unwrap_or(7)) {
                rows.push(row(
                    format!("L2({n},{n})"),
                    &build_lk(&[n, n])?,
                    OrderSpec::Grevlex,
                )?);
            }
        }
        Suite::OnScaling => {
            for n in (2..).take(count.unwrap_or(9)) {
                let l = build_on(n)?;
                let mut r = row(format!("O{n}"), &l, OrderSpec::RankGrevlex)?;
                let closed = on_generators(n)?.generators().len();
                if closed != r.generators {
                    r.status = format!("generator count mismatch: {closed}");
                }
                rows.push(r);
            }
        }
        Suite::L3Decompose => {
            for &[n, m, r] in DEFAULT_PARAMS
                .iter()
                .take(count.unwrap_or(DEFAULT_PARAMS.len()))
            {
                let l = build_lk(&[n, m, r])?;
                let mut out = row(format!("L3({n},{m},{r})"), &l, OrderSpec::Grevlex)?;
                let start = Instant::now();
                let cert = limit_or(verify_theorem2(n, m, r, budget))?;
                out.wall_ms += start.elapsed().as_secs_f64() * 1e3;
                if out.status == "ok" {
                    out.status = match cert {
                        Ok(c) => match c.conclusion {
                            Conclusion::Radical => "radical".into(),
                            Conclusion::Failed(stage) => format!("failed: {stage}"),
                        },
                        Err(msg) => format!("resource-limit: {msg}"),
                    };
                }
                rows.push(out);
            }
        }
    }
    Ok(rows)
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut s = format!("{BENCH_HEADER}\n");
    for r in rows {
        let status = if r.status.contains(',') {
            format!("\"{}\"", r.status)
        } else {
            r.status.clone()
        };
        writeln!(
            s,
            "{},{},{},{},{:.3},{}",
            r.instance, r.vars, r.generators, r.spairs, r.wall_ms, status
        )
        .expect("string write");
    }
    s
}

/// What a subcommand produced.
enum Artifact {
    Certificate(String, Envelope),
    Text(String, String, Outcome),
}

struct Run {
    inputs: BTreeMap<String, String>,
    order: Option<OrderSpec>,
    budget: Budget,
}

impl Run {
    fn lattice(&mut self, src: &LatticeSource) -> Result<Lattice> {
        if let Some(path) = &src.lattice {
            let bytes = std::fs::read(path).map_err(|e| {
                Error::Io(std::io::Error::new(
                    e.kind(),
                    format!("cannot read lattice file `{}`: {e}", path.display()),
                ))
            })?;
            self.inputs
                .insert(path.display().to_string(), sha256_hex(&bytes));
            let text = String::from_utf8(bytes)
                .map_err(|_| Error::InvalidParams(format!("`{}` is not UTF-8", path.display())))?;
            return Lattice::from_json_str(&text);
        }
        let spec = src.family.as_ref().expect("clap enforces one source");
        spec.build()
    }

    fn order(&mut self, default: OrderSpec, cli: &Option<OrderSpec>) -> OrderSpec {
        let o = cli.clone().unwrap_or(default);
        self.order = Some(o.clone());
        o
    }
}

fn family_numbers(set: SetArg, p: &FamilyNumbers) -> Result<(FamilySpec, BasisSet)> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Error::InvalidParams(format!("--{name} is required for this set")))
    };
    Ok(match set {
        SetArg::PaperL2 => (
            FamilySpec::Lk(vec![need(p.n, "n")?, need(p.m, "m")?]),
            BasisSet::L2Sets,
        ),
        SetArg::PaperGlued => (
            FamilySpec::L2Glued {
                n1: need(p.n1, "n1")?,
                n2: need(p.n2, "n2")?,
                kp: need(p.kp, "kp")?,
                i1: need(p.i1, "i1")?,
                i2: need(p.i2, "i2")?,
            },
            BasisSet::GluedSets,
        ),
        SetArg::PaperOn => (FamilySpec::On(need(p.n, "n")?), BasisSet::OnGenerators),
    })
}

fn execute(cli: &Cli, run: &mut Run) -> Result<Vec<Artifact>> {
    let budget = run.budget;
    let cert = |name: &str, env: Result<Envelope>| -> Result<Artifact> {
        Ok(Artifact::Certificate(name.into(), env?))
    };
    Ok(match &cli.command {
        Command::Family { kind } => {
            let spec = match kind {
                FamilyCmd::Lk { n } => FamilySpec::Lk(n.clone()),
                &FamilyCmd::Glued { n1, n2, kp, i1, i2 } => {
                    FamilySpec::L2Glued { n1, n2, kp, i1, i2 }
                }
                &FamilyCmd::On { n } => FamilySpec::On(n),
                &FamilyCmd::Divisor { p, q, k } => FamilySpec::DivisorPqk { p, q, k },
            };
            spec.validate()?;
            let l = spec.build()?;
            let json = serde_json::to_string_pretty(&l.to_json())?;
            vec![Artifact::Text(
                "lattice.json".into(),
                json,
                Outcome::Verified,
            )]
        }
        Command::Gb { source, emit } => {
            let l = run.lattice(source)?;
            let order = run.order(OrderSpec::Grevlex, &cli.order);
            match emit {
                Emit::Certificate => {
                    let c = certify_radical(&l, &order, budget)?;
                    vec![cert("gb", Envelope::new(kind::GB, &c))?]
                }
                Emit::Basis | Emit::Initial => {
                    let ideal = joinmeet_generators(&l);
                    let lines = if ideal.generators().is_empty() {
                        Vec::new()
                    } else {
                        let gb = reduced_gb(&ideal, &order.resolve(&l)?, budget)?;
                        if *emit == Emit::Basis {
                            gb.basis_texts()
                        } else {
                            initial_ideal(&gb).to_strings(gb.vars())
                        }
                    };
                    let name = if *emit == Emit::Basis {
                        "basis.txt"
                    } else {
                        "initial.txt"
                    };
                    let mut text = lines.join("\n");
                    text.push('\n');
                    vec![Artifact::Text(name.into(), text, Outcome::Verified)]
                }
            }
        }
        Command::VerifyBasis { set, p } => {
            let (family, which) = family_numbers(*set, p)?;
            let default = if which == BasisSet::OnGenerators {
                OrderSpec::RankGrevlex
            } else {
                OrderSpec::Grevlex
            };
            let order = run.order(default, &cli.order);
            let r = basis_check(&family, which, &order, budget)?;
            vec![cert("basis-check", Envelope::new(kind::BASIS_CHECK, &r))?]
        }
        Command::Radical { source } => {
            let l = run.lattice(source)?;
            let order = run.order(OrderSpec::Grevlex, &cli.order);
            let c = certify_radical(&l, &order, budget)?;
            vec![cert("radical", Envelope::new(kind::RADICAL, &c))?]
        }
        Command::SearchOrder {
            source,
            strategy,
            samples,
            seed,
            lex,
        } => {
            let l = run.lattice(source)?;
            let strategy = match strategy {
                StrategyArg::AllRevlex => SearchStrategy::AllRevlex,
                StrategyArg::AllLex => SearchStrategy::AllLex,
                StrategyArg::All => SearchStrategy::AllRevlexLex,
                StrategyArg::Sampled => SearchStrategy::Sampled {
                    count: *samples,
                    seed: *seed,
                    lex: *lex,
                },
            };
            let c = search_certificate(&l, &strategy, budget)?;
            vec![cert("search", Envelope::new(kind::SEARCH, &c))?]
        }
        &Command::Decompose {
            n,
            m,
            r,
            extended,
            all,
        } => {
            let params: Vec<[usize; 3]> = if all {
                let mut v = DEFAULT_PARAMS.to_vec();
                if extended {
                    v.extend_from_slice(EXTENDED_PARAMS);
                }
                v
            } else {
                if !extended && !DEFAULT_PARAMS.contains(&[n, m, r]) {
                    return Err(Error::InvalidParams(format!(
                        "({n},{m},{r}) is outside the default set; pass --extended"
                    )));
                }
                vec![[n, m, r]]
            };
            params
                .into_iter()
                .map(|[n, m, r]| {
                    let c = verify_theorem2(n, m, r, budget)?;
                    cert(
                        &format!("decomposition-{n}-{m}-{r}"),
                        Envelope::new(kind::DECOMPOSITION, &c),
                    )
                })
                .collect::<Result<_>>()?
        }
        Command::Props { source } => {
            let l = run.lattice(source)?;
            vec![cert(
                "props",
                Envelope::new(kind::PROPS, &props_report(&l)),
            )?]
        }
        Command::Birkhoff { source } => {
            let l = run.lattice(source)?;
            let r = birkhoff_report(&l)?;
            vec![cert("birkhoff", Envelope::new(kind::BIRKHOFF, &r))?]
        }
        Command::Gorenstein { source } => {
            let l = run.lattice(source)?;
            let c = gorenstein_certificate(&l);
            vec![cert("gorenstein", Envelope::new(kind::GORENSTEIN, &c))?]
        }
        &Command::IsoCheck { k, p, q } => {
            let c = verify_theorem_5_1(k, p, q)?;
            vec![cert(
                &format!("iso-{k}-{p}-{q}"),
                Envelope::new(kind::ISO, &c),
            )?]
        }
        &Command::Bench { suite, count } => {
            let rows = bench(suite, count, budget)?;
            let name = format!(
                "bench-{}.csv",
                suite.to_possible_value().expect("value").get_name()
            );
            vec![Artifact::Text(name, bench_csv(&rows), Outcome::Verified)]
        }
        Command::VerifyPaper {
            claim,
            n,
            m,
            r,
            k,
            p,
            q,
            glued,
        } => {
            let params = ClaimParams {
                n: *n,
                m: *m,
                r: *r,
                k: *k,
                p: *p,
                q: *q,
                glued: glued.as_ref().map(|g| [g[0], g[1], g[2], g[3], g[4]]),
            };
            let rep = run_claim(claim, &params, budget)?;
            vec![cert(
                &format!("claim-{claim}"),
                Envelope::new(kind::CLAIM, &rep),
            )?]
        }
    })
}

fn combine(a: Outcome, b: Outcome) -> Outcome {
    use Outcome::*;
    match (a, b) {
        (Failed, _) | (_, Failed) => Failed,
        (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
        _ => Verified,
    }
}

/// Stdout write that tolerates a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    if !text.ends_with('\n') {
        let _ = out.write_all(b"\n");
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), contents)?;
    Ok(())
}

fn run_parsed(cli: &Cli, argv: &[String]) -> Result<i32> {
    let start = Instant::now();
    let extended = matches!(cli.command, Command::Decompose { extended: true, .. });
    let base = if extended {
        Budget {
            max_pairs: 2_000_000,
            max_degree: 32,
        }
    } else {
        Budget::default()
    };
    let budget = Budget {
        max_pairs: cli.budget_pairs.unwrap_or(base.max_pairs),
        max_degree: cli.budget_degree.unwrap_or(base.max_degree),
    };
    let mut run = Run {
        inputs: BTreeMap::new(),
        order: None,
        budget,
    };
    let artifacts = execute(cli, &mut run)?;

    let mut outcome = Outcome::Verified;
    let mut certificates = BTreeMap::new();
    let mut envelopes = Vec::new();
    for a in &artifacts {
        match a {
            Artifact::Certificate(name, env) => {
                outcome = combine(outcome, outcome_of(env)?);
                if cli.recheck {
                    let rep = recheck(env, budget)?;
                    for c in &rep.checks {
                        eprintln!(
                            "recheck {name}: {} {}",
                            if c.passed { "ok" } else { "FAILED" },
                            c.name
                        );
                    }
                    if !rep.passed {
                        outcome = Outcome::Failed;
                    }
                }
                let file = format!("{name}.json");
                certificates.insert(file.clone(), env.payload_digest());
                if let Some(dir) = &cli.out {
                    write_file(dir, &file, &env.to_pretty())?;
                }
                envelopes.push(env);
            }
            Artifact::Text(name, text, o) => {
                outcome = combine(outcome, *o);
                certificates.insert(name.clone(), sha256_hex(text.as_bytes()));
                if let Some(dir) = &cli.out {
                    write_file(dir, name, text)?;
                }
                emit(text);
            }
        }
    }
    match envelopes.as_slice() {
        [] => {}
        [one] => emit(&one.to_pretty()),
        many => emit(&serde_json::to_string_pretty(many)?),
    }
    let code = outcome.exit_code() as i32;
    if let Some(dir) = &cli.out {
        let manifest = RunManifest {
            schema: SCHEMA,
            command_line: argv.to_vec(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            order: run.order,
            budget,
            input_digests: run.inputs,
            certificates,
            outcome,
            exit_code: code,
            wall_time_ms: start.elapsed().as_millis(),
        };
        write_file(
            dir,
            "manifest.json",
            &serde_json::to_string_pretty(&manifest)?,
        )?;
    }
    match outcome {
        Outcome::Verified => {}
        Outcome::Inconclusive => eprintln!("result: inconclusive"),
        Outcome::Failed => eprintln!("result: verification failed"),
    }
    Ok(code)
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run_parsed(&cli, &argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
