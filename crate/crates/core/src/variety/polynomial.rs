use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactalg::Field;

/// Exponent vector of a monomial `t0^a0 ... tn^an`.
pub type Exponents = Vec<u32>;

/// Graded-lex comparison with `t0 > t1 > ... > tn`: higher total degree
/// first, then lexicographically larger exponent vectors first.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

/// All exponent vectors of total degree `deg` in `nvars` variables, in
/// graded-lex order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Exponents> {
    fn rec(nvars: usize, left: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            rec(nvars, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(nvars, deg, &mut Vec::with_capacity(nvars), &mut out);
    }
    out
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept merged, nonzero, and sorted in graded-lex order, so two
/// equal polynomials compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(BigRational, Exponents)>,
}

impl Polynomial {
    pub fn new(nvars: usize, terms: impl IntoIterator<Item = (BigRational, Exponents)>) -> Self {
        let mut merged: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector has wrong length");
            *merged.entry(e).or_insert_with(BigRational::zero) += c;
        }
        let mut terms: Vec<_> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c, e))
            .collect();
        terms.sort_by(|a, b| grlex_cmp(&a.1, &b.1));
        Self { nvars, terms }
    }

    pub fn monomial(exps: Exponents) -> Self {
        let nvars = exps.len();
        Self {
            nvars,
            terms: vec![(BigRational::one(), exps)],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(BigRational, Exponents)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common total degree of all terms; `None` for the zero polynomial or
    /// when terms of different degrees are present.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.iter().map(|(_, e)| e.iter().sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|(_, e)| e[var] > 0).map(|(c, e)| {
            let mut e = e.clone();
            let k = e[var];
            e[var] -= 1;
            (c * BigRational::from_integer(k.into()), e)
        });
        Self::new(self.nvars, terms)
    }

    /// Largest exponent of any single variable.
    pub fn max_exponent(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|(_, e)| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Coefficients mapped into `field`; `None` if a denominator vanishes there.
    pub fn compile<F: Field>(&self, field: &F) -> Option<CompiledPolynomial<F::Elem>> {
        let terms = self
            .terms
            .iter()
            .map(|(c, e)| field.from_rational(c).map(|c| (c, e.clone())))
            .collect::<Option<Vec<_>>>()?;
        Some(CompiledPolynomial { terms })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (c, e)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        format!("t{i}")
                    } else {
                        format!("t{i}^{a}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A polynomial whose coefficients already live in some field.
#[derive(Clone, Debug)]
pub struct CompiledPolynomial<E> {
    terms: Vec<(E, Exponents)>,
}

impl<E: Clone> CompiledPolynomial<E> {
    /// Evaluates given `powers[i][a] = t_i^a`.
    pub fn eval<F: Field<Elem = E>>(&self, field: &F, powers: &[Vec<E>]) -> E {
        let mut acc = field.zero();
        for (c, e) in &self.terms {
            let mut term = c.clone();
            for (i, &a) in e.iter().enumerate() {
                if a > 0 {
                    term = field.mul(&term, &powers[i][a as usize]);
                }
            }
            acc = field.add(&acc, &term);
        }
        acc
    }
}
