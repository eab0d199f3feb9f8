use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, VariableSet};
use super::order::MonomialOrder;
use crate::error::{Error, Result};

pub type Coeff = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
}

/// Polynomial with exact rational coefficients.
///
/// Terms are kept strictly decreasing under the order the polynomial was
/// built with and never carry a zero coefficient. Arithmetic takes that same
/// order; [`Polynomial::sorted`] re-sorts under another one. Equality is
/// term-by-term, so compare polynomials sorted under the same order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: Coeff, nvars: usize) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn term(c: Coeff, m: Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: vec![Term { coeff: c, mono: m }],
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Coeff::one(), m)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i))
    }

    /// Builds a normalized polynomial from arbitrary terms.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Coeff, Monomial)>,
        ord: &MonomialOrder,
    ) -> Self {
        let mut raw: Vec<Term> = terms
            .into_iter()
            .map(|(coeff, mono)| Term { coeff, mono })
            .collect();
        raw.sort_by(|x, y| ord.cmp(&y.mono, &x.mono));
        let mut out: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff += t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Polynomial { terms: out }
    }

    /// `m1 - m2` with unit coefficients.
    pub fn binomial(m1: Monomial, m2: Monomial, ord: &MonomialOrder) -> Self {
        Self::from_terms([(Coeff::one(), m1), (-Coeff::one(), m2)], ord)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms; see `is_zero` for the empty case.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nvars(&self) -> Option<usize> {
        self.terms.first().map(|t| t.mono.nvars())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.mono.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn is_sorted(&self, ord: &MonomialOrder) -> bool {
        self.terms
            .windows(2)
            .all(|w| ord.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater)
    }

    /// Same polynomial with terms sorted under `ord`.
    pub fn sorted(&self, ord: &MonomialOrder) -> Polynomial {
        if self.is_sorted(ord) {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|x, y| ord.cmp(&y.mono, &x.mono));
        Polynomial { terms }
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|t| t.mono.0[v] > 0)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -t.coeff.clone(),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// `c * m * self`; term order is preserved since orders are multiplicative.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn add(&self, other: &Polynomial, ord: &MonomialOrder) -> Polynomial {
        merge(&self.terms, &other.terms, false, ord)
    }

    pub fn sub(&self, other: &Polynomial, ord: &MonomialOrder) -> Polynomial {
        merge(&self.terms, &other.terms, true, ord)
    }

    pub fn mul(&self, other: &Polynomial, ord: &MonomialOrder) -> Polynomial {
        let mut acc = Polynomial::zero();
        for t in &other.terms {
            acc = acc.add(&self.mul_term(&t.coeff, &t.mono), ord);
        }
        acc
    }

    /// Applies `var -> target[var]` to every monomial and re-normalizes.
    pub fn map_variables(&self, target: &[usize], nvars: usize, ord: &MonomialOrder) -> Polynomial {
        Polynomial::from_terms(
            self.terms.iter().map(|t| {
                let mut e = vec![0u32; nvars];
                for (v, &x) in t.mono.0.iter().enumerate() {
                    e[target[v]] += x;
                }
                (t.coeff.clone(), Monomial(e))
            }),
            ord,
        )
    }

    /// Appends zero exponents for extra trailing variables.
    pub fn padded(&self, nvars: usize) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    mono: t.mono.padded(nvars),
                })
                .collect(),
        }
    }

    /// Drops trailing variables, if none of them occurs.
    pub fn truncated(&self, nvars: usize) -> Option<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                t.mono.truncated(nvars).map(|mono| Term {
                    coeff: t.coeff.clone(),
                    mono,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial { terms })
    }

    pub fn display<'a>(&'a self, vars: &'a VariableSet) -> PolyDisplay<'a> {
        PolyDisplay { p: self, vars }
    }

    pub fn to_text(&self, vars: &VariableSet) -> String {
        self.display(vars).to_string()
    }
}

fn merge(a: &[Term], b: &[Term], negate_b: bool, ord: &MonomialOrder) -> Polynomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let nb = |t: &Term| Term {
        coeff: if negate_b {
            -t.coeff.clone()
        } else {
            t.coeff.clone()
        },
        mono: t.mono.clone(),
    };
    while i < a.len() && j < b.len() {
        match ord.cmp(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(nb(&b[j]));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a[i].coeff - &b[j].coeff
                } else {
                    &a[i].coeff + &b[j].coeff
                };
                if !c.is_zero() {
                    out.push(Term {
                        coeff: c,
                        mono: a[i].mono.clone(),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(nb));
    Polynomial { terms: out }
}

/// `S(f, g) = (L/lt(f)) f - (L/lt(g)) g` with `L` the lcm of leading monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial> {
    let f = f.sorted(ord);
    let g = g.sorted(ord);
    let (tf, tg) = match (f.leading_term(), g.leading_term()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::ZeroPolynomial),
    };
    if tf.mono.nvars() != tg.mono.nvars() {
        return Err(Error::VariableSetMismatch);
    }
    Ok(s_poly_sorted(&f, &g, ord))
}

pub(crate) fn s_poly_sorted(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Polynomial {
    let (tf, tg) = (&f.terms[0], &g.terms[0]);
    let l = tf.mono.lcm(&tg.mono);
    let uf = l.div(&tf.mono).expect("lcm is a multiple");
    let ug = l.div(&tg.mono).expect("lcm is a multiple");
    let a = f.mul_term(&tf.coeff.recip(), &uf);
    let b = g.mul_term(&tg.coeff.recip(), &ug);
    a.sub(&b, ord)
}

/// Quotients and remainder of multivariate division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Full reduction of `f` by `divisors`.
///
/// The highest remaining term is treated first; it is reduced by the first
/// divisor (in list order) whose leading monomial divides it, otherwise it
/// moves to the remainder. Zero divisors are skipped.
pub fn divide(f: &Polynomial, divisors: &[Polynomial], ord: &MonomialOrder) -> Division {
    let divisors: Vec<Polynomial> = divisors.iter().map(|g| g.sorted(ord)).collect();
    let mut quotients = vec![Vec::new(); divisors.len()];
    let remainder = reduce_impl(&f.sorted(ord), &divisors, ord, Some(&mut quotients));
    Division {
        quotients: quotients
            .into_iter()
            .map(|q| Polynomial::from_terms(q, ord))
            .collect(),
        remainder,
    }
}

/// Remainder of [`divide`], without tracking quotients.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
    let divisors: Vec<Polynomial> = divisors.iter().map(|g| g.sorted(ord)).collect();
    reduce_impl(&f.sorted(ord), &divisors, ord, None)
}

/// Reduction with pre-sorted inputs.
pub(crate) fn reduce_sorted(
    f: &Polynomial,
    divisors: &[Polynomial],
    ord: &MonomialOrder,
) -> Polynomial {
    reduce_impl(f, divisors, ord, None)
}

fn reduce_impl(
    f: &Polynomial,
    divisors: &[Polynomial],
    ord: &MonomialOrder,
    mut quotients: Option<&mut Vec<Vec<(Coeff, Monomial)>>>,
) -> Polynomial {
    let mut p = f.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some(lt) = p.terms.first().cloned() {
        let hit = divisors
            .iter()
            .enumerate()
            .find(|(_, g)| g.leading_monomial().is_some_and(|lm| lm.divides(&lt.mono)));
        match hit {
            Some((k, g)) => {
                let gl = &g.terms[0];
                let c = &lt.coeff / &gl.coeff;
                let m = lt.mono.div(&gl.mono).expect("divisible");
                let tail = Polynomial {
                    terms: g.terms[1..].to_vec(),
                };
                let rest = Polynomial {
                    terms: p.terms[1..].to_vec(),
                };
                p = rest.sub(&tail.mul_term(&c, &m), ord);
                if let Some(q) = quotients.as_deref_mut() {
                    q[k].push((c, m));
                }
            }
            None => {
                rem.push(lt);
                p.terms.remove(0);
            }
        }
    }
    Polynomial { terms: rem }
}

pub struct PolyDisplay<'a> {
    p: &'a Polynomial,
    vars: &'a VariableSet,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.p.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = t.coeff.abs();
            if t.mono.is_one() {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c}*")?;
                }
                write!(f, "{}", t.mono.display(self.vars))?;
            }
        }
        Ok(())
    }
}
