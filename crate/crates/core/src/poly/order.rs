use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, VariableSet};
use crate::error::{Error, Result};

/// Monomial order given by a variable precedence (smallest variable first).
///
/// A top-level `Lex`, `GrLex` or `GrevLex` must list every variable once.
/// `Block` compares block by block, most significant block first; each block
/// only looks at the variables in its own precedence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "precedence", rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex(Vec<usize>),
    GrLex(Vec<usize>),
    GrevLex(Vec<usize>),
    Block(Vec<MonomialOrder>),
}

impl MonomialOrder {
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder::Lex((0..nvars).collect())
    }

    pub fn grlex(nvars: usize) -> Self {
        MonomialOrder::GrLex((0..nvars).collect())
    }

    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder::GrevLex((0..nvars).collect())
    }

    /// Variables covered by this order, in precedence order.
    pub fn variables(&self) -> Vec<usize> {
        match self {
            MonomialOrder::Lex(p) | MonomialOrder::GrLex(p) | MonomialOrder::GrevLex(p) => {
                p.clone()
            }
            MonomialOrder::Block(b) => b.iter().flat_map(|o| o.variables()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.variables().len()
    }

    /// Checks that the order covers each of `nvars` variables exactly once.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        let mut seen = vec![false; nvars];
        for v in self.variables() {
            if v >= nvars || seen[v] {
                return Err(Error::InvalidParams(format!(
                    "monomial order does not list each of {nvars} variables once"
                )));
            }
            seen[v] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidParams(format!(
                "monomial order does not cover all {nvars} variables"
            )));
        }
        Ok(())
    }

    /// Fast comparison; monomials must match the order's variable count.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_raw(&a.0, &b.0)
    }

    fn cmp_raw(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex(p) => cmp_lex(p, a, b),
            MonomialOrder::GrLex(p) => deg(p, a).cmp(&deg(p, b)).then_with(|| cmp_lex(p, a, b)),
            MonomialOrder::GrevLex(p) => deg(p, a).cmp(&deg(p, b)).then_with(|| {
                for &v in p {
                    if a[v] != b[v] {
                        return b[v].cmp(&a[v]);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Block(blocks) => {
                for o in blocks {
                    let c = o.cmp_raw(a, b);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Short human-readable description, e.g. `grevlex(s<a1<b1<t)`.
    pub fn describe(&self, vars: &VariableSet) -> String {
        let prec = |p: &[usize]| {
            p.iter()
                .map(|&v| vars.name(v))
                .collect::<Vec<_>>()
                .join("<")
        };
        match self {
            MonomialOrder::Lex(p) => format!("lex({})", prec(p)),
            MonomialOrder::GrLex(p) => format!("grlex({})", prec(p)),
            MonomialOrder::GrevLex(p) => format!("grevlex({})", prec(p)),
            MonomialOrder::Block(b) => format!(
                "block[{}]",
                b.iter()
                    .map(|o| o.describe(vars))
                    .collect::<Vec<_>>()
                    .join(" >> ")
            ),
        }
    }
}

fn deg(p: &[usize], a: &[u32]) -> u32 {
    if p.len() == a.len() {
        a.iter().sum()
    } else {
        p.iter().map(|&v| a[v]).sum()
    }
}

fn cmp_lex(p: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    for &v in p.iter().rev() {
        if a[v] != b[v] {
            return a[v].cmp(&b[v]);
        }
    }
    Ordering::Equal
}

/// Checked comparison of two monomials under `ord`.
pub fn compare(m1: &Monomial, m2: &Monomial, ord: &MonomialOrder) -> Result<Ordering> {
    let n = ord.nvars();
    if m1.nvars() != n || m2.nvars() != n {
        return Err(Error::VariableSetMismatch);
    }
    Ok(ord.cmp(m1, m2))
}
