//! Normal words of the free algebra and the multiplication table that keeps
//! linear combinations of them closed under products.
//!
//! A word `x_h [R_j] V_{p1,q1} … V_{pk,qk} [L_s]` denotes the element obtained
//! from `x_h` by applying the operators left to right, where `aR_y = ay`,
//! `aL_y = ya` and `aV_{y,z} = (ya)z`. The admissible shapes are
//!
//! * `x_h`
//! * `x_h L_s`
//! * `x_h R_j L_s` with `h <= j`
//! * `x_h [R_j] V…V [L_s]` with at least one `V`, `h <= j`, every `p < q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::term::Term;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalWord {
    pub head: u32,
    pub r: Option<u32>,
    pub pairs: Vec<(u32, u32)>,
    pub l: Option<u32>,
}

impl NormalWord {
    pub fn var(h: u32) -> NormalWord {
        NormalWord {
            head: h,
            r: None,
            pairs: Vec::new(),
            l: None,
        }
    }

    /// Validating constructor.
    pub fn new(head: u32, r: Option<u32>, pairs: Vec<(u32, u32)>, l: Option<u32>) -> Result<Self> {
        let w = NormalWord { head, r, pairs, l };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidWord(format!("{self}: {why}")));
        let indices = std::iter::once(self.head)
            .chain(self.r)
            .chain(self.l)
            .chain(self.pairs.iter().flat_map(|&(p, q)| [p, q]));
        if indices.into_iter().any(|i| i == 0) {
            return bad("variable indices start at 1");
        }
        if let Some(j) = self.r {
            if self.head > j {
                return bad("head must not exceed the R index");
            }
            if self.pairs.is_empty() && self.l.is_none() {
                return bad("R without V or L is not a normal shape");
            }
        }
        if self.pairs.iter().any(|&(p, q)| p >= q) {
            return bad("V pairs must be strictly increasing");
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        1 + usize::from(self.r.is_some()) + 2 * self.pairs.len() + usize::from(self.l.is_some())
    }

    pub fn variables(&self) -> Vec<u32> {
        let mut v = vec![self.head];
        v.extend(self.r);
        for &(p, q) in &self.pairs {
            v.push(p);
            v.push(q);
        }
        v.extend(self.l);
        v
    }

    pub fn degree_in(&self, i: u32) -> usize {
        self.variables().into_iter().filter(|&v| v == i).count()
    }

    pub fn max_var(&self) -> u32 {
        self.variables().into_iter().max().unwrap_or(0)
    }

    /// The product tree this word abbreviates.
    pub fn to_term(&self) -> Term {
        let mut t = Term::var(self.head);
        if let Some(j) = self.r {
            t = Term::mul(t, Term::var(j));
        }
        for &(p, q) in &self.pairs {
            t = Term::mul(Term::mul(Term::var(p), t), Term::var(q));
        }
        if let Some(s) = self.l {
            t = Term::mul(Term::var(s), t);
        }
        t
    }

    fn key(&self) -> (usize, u32, Option<u32>, &[(u32, u32)], Option<u32>) {
        (self.degree(), self.head, self.r, &self.pairs, self.l)
    }
}

impl Ord for NormalWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for NormalWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.head)?;
        if let Some(j) = self.r {
            write!(f, " R[x{j}]")?;
        }
        for (p, q) in &self.pairs {
            write!(f, " V[x{p},x{q}]")?;
        }
        if let Some(s) = self.l {
            write!(f, " L[x{s}]")?;
        }
        Ok(())
    }
}

/// Linear combination of normal words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement {
    field: Field,
    terms: BTreeMap<NormalWord, Scalar>,
}

impl FreeElement {
    pub fn zero(field: Field) -> FreeElement {
        FreeElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(field: Field, h: u32) -> FreeElement {
        FreeElement::word(field, NormalWord::var(h))
    }

    pub fn word(field: Field, w: NormalWord) -> FreeElement {
        let mut f = FreeElement::zero(field);
        f.add_word(field.one(), w);
        f
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &NormalWord) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(NormalWord::degree).max().unwrap_or(0)
    }

    pub fn max_var(&self) -> u32 {
        self.terms.keys().map(NormalWord::max_var).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: u32) -> usize {
        self.terms.keys().map(|w| w.degree_in(i)).max().unwrap_or(0)
    }

    pub fn add_word(&mut self, c: Scalar, w: NormalWord) {
        if c.is_zero() {
            return;
        }
        debug_assert!(w.validate().is_ok(), "invalid word {w}");
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e += &c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &FreeElement) {
        for (w, c) in &other.terms {
            self.add_word(c.clone(), w.clone());
        }
    }

    pub fn add_scaled(&mut self, s: &Scalar, other: &FreeElement) {
        if s.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_word(c * s, w.clone());
        }
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        out.add_scaled(&-self.field.one(), other);
        out
    }

    pub fn scale(&self, s: &Scalar) -> FreeElement {
        let mut out = FreeElement::zero(self.field);
        out.add_scaled(s, self);
        out
    }

    /// Product in the free algebra, bilinear over the word table.
    pub fn mul(&self, other: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero(self.field);
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                let c = cu * cv;
                for (w, s) in mul_words(u, v) {
                    out.add_word(&c * &self.field.from_i64(s), w);
                }
            }
        }
        out
    }

    /// Keeps only the words satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&NormalWord) -> bool) -> FreeElement {
        FreeElement {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_terms(&self) -> super::term::TermSum {
        let mut s = super::term::TermSum::zero(self.field);
        for (w, c) in &self.terms {
            s.add_term(c.clone(), w.to_term());
        }
        s
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<(Scalar, String)> = self
            .terms
            .iter()
            .map(|(w, c)| (c.clone(), w.to_string()))
            .collect();
        let s = crate::algebra::format_combination(rendered.iter().map(|(c, n)| (c, n.as_str())));
        f.write_str(&s)
    }
}

/// `V_{a,b}` with the pair sorted: `V_{b,a} = -V_{a,b}` and `V_{a,a} = 0`.
fn pair(a: u32, b: u32) -> Option<((u32, u32), i64)> {
    match a.cmp(&b) {
        Ordering::Less => Some(((a, b), 1)),
        Ordering::Greater => Some(((b, a), -1)),
        Ordering::Equal => None,
    }
}

type Combo = Vec<(NormalWord, i64)>;

fn with_pair(w: &NormalWord, a: u32, b: u32, sign: i64) -> Combo {
    match pair(a, b) {
        None => Vec::new(),
        Some((p, s)) => {
            let mut out = w.clone();
            out.pairs.push(p);
            vec![(out, sign * s)]
        }
    }
}

fn word(head: u32, r: Option<u32>, pairs: Vec<(u32, u32)>, l: Option<u32>) -> NormalWord {
    NormalWord { head, r, pairs, l }
}

/// `w · x_r` as an integer combination of normal words.
pub fn right_mul_word(w: &NormalWord, r: u32) -> Combo {
    match (w.r, w.pairs.is_empty(), w.l) {
        // x_h x_r
        (None, true, None) => vec![(word(r, None, vec![], Some(w.head)), 1)],
        // (x_s x_h) x_r = x_h V_{s,r}
        (None, true, Some(s)) => with_pair(&word(w.head, None, vec![], None), s, r, 1),
        // (x_s (x_h x_j)) x_r = x_h R_j V_{s,r}
        (Some(j), true, Some(s)) => with_pair(&word(w.head, Some(j), vec![], None), s, r, 1),
        // V R = 0
        (_, false, None) => Vec::new(),
        // u L_s R_r = u V_{s,r}
        (_, false, Some(s)) => {
            let mut u = w.clone();
            u.l = None;
            with_pair(&u, s, r, 1)
        }
        (Some(_), true, None) => unreachable!("invalid word {w}"),
    }
}

/// `x_r · w` as an integer combination of normal words.
pub fn left_mul_word(w: &NormalWord, r: u32) -> Combo {
    match (w.r, w.pairs.is_empty(), w.l) {
        (None, true, None) => vec![(word(w.head, None, vec![], Some(r)), 1)],
        // x_r (x_s x_h)
        (None, true, Some(s)) => {
            let h = w.head;
            if s <= h {
                vec![(word(s, Some(h), vec![], Some(r)), 1)]
            } else {
                // x_s R_h L_r = x_s V_{r,h} + x_h R_s L_r - x_h V_{r,s}
                let mut out = with_pair(&NormalWord::var(s), r, h, 1);
                out.push((word(h, Some(s), vec![], Some(r)), 1));
                out.extend(with_pair(&NormalWord::var(h), r, s, -1));
                out
            }
        }
        // x_h R_j L_s L_r = x_j V_{h,s} L_r - x_h R_j V_{r,s}
        (Some(j), true, Some(s)) => {
            let mut out: Combo = with_pair(&NormalWord::var(j), w.head, s, 1)
                .into_iter()
                .map(|(mut u, c)| {
                    u.l = Some(r);
                    (u, c)
                })
                .collect();
            out.extend(with_pair(&word(w.head, Some(j), vec![], None), r, s, -1));
            out
        }
        (_, false, None) => {
            let mut u = w.clone();
            u.l = Some(r);
            vec![(u, 1)]
        }
        // u L_s L_r = -u V_{r,s}
        (_, false, Some(s)) => {
            let mut u = w.clone();
            u.l = None;
            with_pair(&u, r, s, -1)
        }
        (Some(_), true, None) => unreachable!("invalid word {w}"),
    }
}

/// Product of two normal words. Products of two words of degree at least two
/// vanish because `(ab)(cd) = 0`.
pub fn mul_words(u: &NormalWord, v: &NormalWord) -> Combo {
    match (u.degree(), v.degree()) {
        (_, 1) => right_mul_word(u, v.head),
        (1, _) => left_mul_word(v, u.head),
        _ => Vec::new(),
    }
}

/// Rewrites a term into a combination of normal words, bottom-up.
pub fn normal_form_term(field: Field, t: &Term) -> FreeElement {
    match t {
        Term::Var(v) => FreeElement::var(field, *v),
        Term::Mul(a, b) => normal_form_term(field, a).mul(&normal_form_term(field, b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(t: &Term) -> FreeElement {
        normal_form_term(Field::Rational, t)
    }

    fn x(i: u32) -> Term {
        Term::var(i)
    }

    fn m(a: Term, b: Term) -> Term {
        Term::mul(a, b)
    }

    #[test]
    fn small_products() {
        assert_eq!(nf(&m(x(2), x(1))).to_string(), "x1 L[x2]");
        assert_eq!(nf(&m(x(3), m(x(1), x(2)))).to_string(), "x1 R[x2] L[x3]");
        assert!(nf(&m(m(m(x(1), x(2)), x(3)), x(4))).is_zero());
        assert!(nf(&m(m(x(1), x(2)), m(x(3), x(4)))).is_zero());
        assert!(nf(&m(m(x(1), x(2)), x(1))).is_zero());
    }

    #[test]
    fn validation() {
        assert!(NormalWord::new(2, Some(1), vec![(3, 4)], None).is_err());
        assert!(NormalWord::new(1, Some(1), vec![], Some(2)).is_ok());
        assert!(NormalWord::new(1, Some(2), vec![], None).is_err());
        assert!(NormalWord::new(1, None, vec![(3, 3)], None).is_err());
        assert!(NormalWord::new(0, None, vec![], None).is_err());
    }

    #[test]
    fn word_term_round_trip() {
        let w = NormalWord::new(1, Some(2), vec![(3, 4)], Some(5)).unwrap();
        assert_eq!(w.to_term().to_string(), "(x5 ((x3 (x1 x2)) x4))");
        assert_eq!(nf(&w.to_term()), FreeElement::word(Field::Rational, w));
    }
}
