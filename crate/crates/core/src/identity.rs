//! Evaluation of terms in concrete algebras and exact identity testing.
//!
//! `f = 0` is an identity of `A` when every coordinate of `f` under the
//! generic substitution `x_v ↦ Σₖ t_{v,k} eₖ` is the zero polynomial. Over
//! small prime fields this is stronger than vanishing at every point.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::free::{FreeElement, Term, TermSum};
use crate::linalg::{Coefficient, SparseVec};
use crate::parse::parse_terms;
use crate::poly::Poly;
use crate::scalar::Field;

pub type Assignment = BTreeMap<u32, Element>;

pub(crate) fn eval_term_with<C: Coefficient>(
    alg: &Algebra,
    t: &Term,
    lookup: &impl Fn(u32) -> Result<SparseVec<C>>,
) -> Result<SparseVec<C>> {
    match t {
        Term::Var(v) => lookup(*v),
        Term::Mul(a, b) => {
            let x = eval_term_with(alg, a, lookup)?;
            if x.is_empty() {
                return Ok(x);
            }
            let y = eval_term_with(alg, b, lookup)?;
            Ok(alg.mul_vec(&x, &y))
        }
    }
}

fn lookup_in<'a>(
    alg: &'a Algebra,
    assignment: &'a Assignment,
) -> impl Fn(u32) -> Result<SparseVec> + 'a {
    move |v| match assignment.get(&v) {
        None => Err(Error::UnboundVariable(v)),
        Some(e) if e.algebra_id() != alg.id() => Err(Error::MixedAlgebras),
        Some(e) => Ok(e.coeffs().clone()),
    }
}

pub fn evaluate_term(alg: &Algebra, t: &Term, assignment: &Assignment) -> Result<Element> {
    let v = eval_term_with(alg, t, &lookup_in(alg, assignment))?;
    Ok(alg.wrap(v))
}

/// Value of a raw term combination under an assignment of its variables.
pub fn evaluate_terms(alg: &Algebra, f: &TermSum, assignment: &Assignment) -> Result<Element> {
    let lookup = lookup_in(alg, assignment);
    let mut out = SparseVec::new();
    for (t, c) in f.terms() {
        let v = eval_term_with(alg, t, &lookup)?;
        crate::linalg::add_scaled(&mut out, c, &v);
    }
    Ok(alg.wrap(out))
}

/// Value of a normal-form element. Normal forms are only meaningful modulo
/// the defining identities, so `alg` must satisfy them.
pub fn evaluate(alg: &Algebra, f: &FreeElement, assignment: &Assignment) -> Result<Element> {
    if !in_variety(alg) {
        return Err(Error::AlgebraNotInVariety);
    }
    evaluate_terms(alg, &f.to_terms(), assignment)
}

/// Index of the indeterminate `t_{v,k}`.
pub(crate) fn generic_index(dim: usize, v: u32, k: usize) -> u32 {
    ((v as usize - 1) * dim + k) as u32
}

pub(crate) fn generic_vector(alg: &Algebra, v: u32) -> SparseVec<Poly> {
    (0..alg.dim())
        .map(|k| (k, Poly::var(alg.field(), generic_index(alg.dim(), v, k))))
        .collect()
}

/// Image of `f` under the generic substitution.
pub fn generic_value(alg: &Algebra, f: &TermSum) -> SparseVec<Poly> {
    let lookup = |v: u32| -> Result<SparseVec<Poly>> { Ok(generic_vector(alg, v)) };
    let mut out: SparseVec<Poly> = SparseVec::new();
    for (t, c) in f.terms() {
        let v = eval_term_with(alg, t, &lookup).expect("generic lookup never fails");
        crate::linalg::add_scaled(&mut out, c, &v);
    }
    out
}

pub fn is_identity(alg: &Algebra, f: &TermSum) -> bool {
    alg.dim() == 0 || generic_value(alg, f).is_empty()
}

pub fn is_identity_free(alg: &Algebra, f: &FreeElement) -> bool {
    is_identity(alg, &f.to_terms())
}

/// A substitution under which a polynomial does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub assignment: Assignment,
    pub value: Element,
}

impl Witness {
    pub fn describe(&self, alg: &Algebra) -> String {
        let parts: Vec<String> = self
            .assignment
            .iter()
            .map(|(v, e)| format!("x{v} = {}", alg.format_element(e)))
            .collect();
        format!("{} gives {}", parts.join(", "), alg.format_element(&self.value))
    }
}

/// Looks for a concrete nonvanishing substitution. Returns `None` when `f` is
/// an identity, and may also return `None` when `f` vanishes as a function
/// on the field without being an identity (small finite fields).
pub fn find_witness(alg: &Algebra, f: &TermSum) -> Option<Witness> {
    let image = generic_value(alg, f);
    let (_, poly) = image.iter().next()?;
    let vars: Vec<u32> = f.variables().into_iter().collect();
    let dim = alg.dim();
    let try_assignment = |a: Assignment| -> Option<Witness> {
        let value = evaluate_terms(alg, f, &a).ok()?;
        (!value.is_zero()).then_some(Witness {
            assignment: a,
            value,
        })
    };

    // First guess: read a surviving monomial of the generic image.
    if let Some((mono, _)) = poly.terms().next() {
        let mut a: Assignment = vars.iter().map(|&v| (v, alg.zero())).collect();
        for &t in mono {
            let v = t as usize / dim + 1;
            let k = t as usize % dim;
            let e = a.entry(v as u32).or_insert_with(|| alg.zero());
            if e.coeff(k).is_none() {
                *e = &*e + &alg.basis(k);
            }
        }
        if let Some(w) = try_assignment(a) {
            return Some(w);
        }
    }

    // Basis tuples in lexicographic order, up to a budget.
    let budget = 5000usize;
    let mut idx = vec![0usize; vars.len()];
    for _ in 0..budget {
        let a: Assignment = vars
            .iter()
            .zip(&idx)
            .map(|(&v, &k)| (v, alg.basis(k)))
            .collect();
        if let Some(w) = try_assignment(a) {
            return Some(w);
        }
        if !advance(&mut idx, dim) {
            break;
        }
    }

    // Random small combinations.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..500 {
        let a: Assignment = vars
            .iter()
            .map(|&v| {
                let coeffs = (0..dim)
                    .map(|k| (k, alg.field().random_small(&mut rng)))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                (v, alg.wrap(coeffs))
            })
            .collect();
        if let Some(w) = try_assignment(a) {
            return Some(w);
        }
    }
    None
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Outcome of testing one identity on an algebra.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub label: &'static str,
    pub identity: String,
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug)]
pub struct VarietyReport {
    pub checks: Vec<IdentityCheck>,
}

impl VarietyReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

impl fmt::Display for VarietyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: {}",
                if c.holds { "PASS" } else { "FAIL" },
                c.label,
                c.identity
            )?;
        }
        Ok(())
    }
}

/// The defining identities: `[[a,b],c] = 0`, `(ab)a = 0`, `(ab)(cd) = 0`.
pub fn defining_identities(field: Field) -> Vec<(&'static str, TermSum)> {
    [
        ("commutators central on the right", "[[x1,x2],x3]"),
        ("left nil of index 2 on products", "(x1 x2) x1"),
        ("metabelian", "(x1 x2)(x3 x4)"),
    ]
    .into_iter()
    .map(|(label, text)| (label, parse_terms(field, text).expect("valid identity")))
    .collect()
}

pub fn check_identity(alg: &Algebra, label: &'static str, f: &TermSum) -> IdentityCheck {
    let holds = is_identity(alg, f);
    IdentityCheck {
        label,
        identity: f.to_string(),
        holds,
        witness: if holds { None } else { find_witness(alg, f) },
    }
}

pub fn check_variety(alg: &Algebra) -> VarietyReport {
    let checks = defining_identities(alg.field())
        .iter()
        .map(|(label, f)| check_identity(alg, label, f))
        .collect();
    VarietyReport { checks }
}

/// Cached membership in the variety.
pub fn in_variety(alg: &Algebra) -> bool {
    *alg.variety_cache.get_or_init(|| check_variety(alg).passes())
}

/// Evaluates `f` at basis-element tuples; used by exhaustive checks of
/// multilinear identities.
pub fn vanishes_on_basis_tuples(alg: &Algebra, f: &TermSum) -> Option<Assignment> {
    let vars: Vec<u32> = f.variables().into_iter().collect();
    if alg.dim() == 0 {
        return None;
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let a: Assignment = vars
            .iter()
            .zip(&idx)
            .map(|(&v, &k)| (v, alg.basis(k)))
            .collect();
        if !evaluate_terms(alg, f, &a).expect("bound").is_zero() {
            return Some(a);
        }
        if !advance(&mut idx, alg.dim()) {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_square_fails_left_nil() {
        // e e = e: (ee)e = e
        let a = Algebra::from_named(Field::Rational, &["e"], &[("e", "e", &[(1, "e")])]).unwrap();
        let report = check_variety(&a);
        assert!(!report.passes());
        let failed = report.checks.iter().find(|c| !c.holds).unwrap();
        assert!(failed.witness.is_some());
        assert!(!in_variety(&a));
    }

    #[test]
    fn zero_algebra_satisfies_everything() {
        let z = Algebra::zero_algebra(Field::Prime(2), 3);
        assert!(check_variety(&z).passes());
        let f = parse_terms(Field::Prime(2), "x1 x2").unwrap();
        assert!(is_identity(&z, &f));
        assert!(find_witness(&z, &f).is_none());
    }

    #[test]
    fn polynomial_not_function_semantics() {
        // In GF(2)e with ee = e the element (x1 x1) x1 + x1 x1 sends te to
        // (t^3 + t^2)e: zero at both points of the field, not the zero polynomial.
        let f2 = Field::Prime(2);
        let a = Algebra::from_named(f2, &["e"], &[("e", "e", &[(1, "e")])]).unwrap();
        let f = parse_terms(f2, "(x1 x1) x1 + x1 x1").unwrap();
        assert!(!is_identity(&a, &f));
        assert!(find_witness(&a, &f).is_none());
    }

    #[test]
    fn unbound_variable() {
        let a = Algebra::zero_algebra(Field::Rational, 2);
        let f = parse_terms(Field::Rational, "x1 x2").unwrap();
        let mut asg = Assignment::new();
        asg.insert(1, a.basis(0));
        assert_eq!(evaluate_terms(&a, &f, &asg).unwrap_err(), Error::UnboundVariable(2));
    }
}
