//! Raw nonassociative terms over variables `x1, x2, …` and their linear
//! combinations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::scalar::{Field, Scalar};

/// A binary product tree. Variable indices start at 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(u32),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        assert!(i >= 1, "variable indices start at 1");
        Term::Var(i)
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn degree(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Mul(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn degree_in(&self, i: u32) -> usize {
        match self {
            Term::Var(v) => usize::from(*v == i),
            Term::Mul(a, b) => a.degree_in(i) + b.degree_in(i),
        }
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn max_var(&self) -> u32 {
        match self {
            Term::Var(v) => *v,
            Term::Mul(a, b) => a.max_var().max(b.max_var()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "x{v}"),
            Term::Mul(a, b) => write!(f, "({a} {b})"),
        }
    }
}

/// A linear combination of terms. Distinct trees are kept apart even when
/// they are equal modulo the defining identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermSum {
    field: Field,
    terms: BTreeMap<Term, Scalar>,
}

impl TermSum {
    pub fn zero(field: Field) -> TermSum {
        TermSum {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(field: Field, t: Term) -> TermSum {
        let mut s = TermSum::zero(field);
        s.add_term(field.one(), t);
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: Scalar, t: Term) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add(&self, other: &TermSum) -> TermSum {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(c.clone(), t.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> TermSum {
        let mut out = TermSum::zero(self.field);
        for (t, c) in &self.terms {
            out.add_term(c * s, t.clone());
        }
        out
    }

    /// Distributive product of two combinations.
    pub fn mul(&self, other: &TermSum) -> TermSum {
        let mut out = TermSum::zero(self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(ca * cb, Term::mul(a.clone(), b.clone()));
            }
        }
        out
    }

    pub fn commutator(&self, other: &TermSum) -> TermSum {
        self.mul(other).add(&other.mul(self).scale(&-self.field.one()))
    }

    pub fn associator(&self, b: &TermSum, c: &TermSum) -> TermSum {
        let left = self.mul(b).mul(c);
        let right = self.mul(&b.mul(c));
        left.add(&right.scale(&-self.field.one()))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Term::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|t| t.variables()).collect()
    }
}

impl fmt::Display for TermSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<(Scalar, String)> = self
            .terms
            .iter()
            .map(|(t, c)| (c.clone(), t.to_string()))
            .collect();
        let s = crate::algebra::format_combination(rendered.iter().map(|(c, n)| (c, n.as_str())));
        f.write_str(&s)
    }
}
