//! Formal elements of `E₀`: combinations of products of `V_{x_p,x_q}` with
//! `p < q`. Distinct words are linearly independent in the free algebra, so
//! `E₀` is free associative on these generators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::free::{FreeElement, NormalWord, RkTag};
use crate::scalar::{Field, Scalar};

/// Product `V_{x_{p₁},x_{q₁}} ⋯ V_{x_{p_k},x_{q_k}}`, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OperatorWord {
    pairs: Vec<(u32, u32)>,
}

impl OperatorWord {
    pub fn new(pairs: Vec<(u32, u32)>) -> Result<OperatorWord> {
        if pairs.is_empty() {
            return Err(Error::InvalidWord("operator word needs at least one V".into()));
        }
        if let Some(&(p, q)) = pairs.iter().find(|(p, q)| p >= q || *p == 0) {
            return Err(Error::InvalidWord(format!("V[x{p},x{q}] needs 0 < p < q")));
        }
        Ok(OperatorWord { pairs })
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn concat(&self, other: &OperatorWord) -> OperatorWord {
        let mut pairs = self.pairs.clone();
        pairs.extend_from_slice(&other.pairs);
        OperatorWord { pairs }
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.pairs.iter().flat_map(|&(p, q)| [p, q]).collect()
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(p, q)| format!("V[x{p},x{q}]")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Linear substitution `x_v ↦ Σ c·x_u` used to specialise operator elements.
pub type LinearSubstitution = BTreeMap<u32, Vec<(Scalar, u32)>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorElement {
    field: Field,
    terms: BTreeMap<OperatorWord, Scalar>,
}

impl OperatorElement {
    pub fn zero(field: Field) -> OperatorElement {
        OperatorElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    /// `V_{x_p,x_q}`, using `V_{x_q,x_p} = -V_{x_p,x_q}` and `V_{x,x} = 0`.
    pub fn generator(field: Field, p: u32, q: u32) -> OperatorElement {
        let mut g = OperatorElement::zero(field);
        match p.cmp(&q) {
            std::cmp::Ordering::Less => g.add_word(field.one(), OperatorWord { pairs: vec![(p, q)] }),
            std::cmp::Ordering::Greater => {
                g.add_word(field.from_i64(-1), OperatorWord { pairs: vec![(q, p)] })
            }
            std::cmp::Ordering::Equal => {}
        }
        g
    }

    pub fn word(field: Field, w: OperatorWord) -> OperatorElement {
        let mut g = OperatorElement::zero(field);
        g.add_word(field.one(), w);
        g
    }

    /// Product of generators `V_{x_p,x_q}` in the given order; the empty
    /// product is zero since `E₀` has no unit.
    pub fn product_of(field: Field, pairs: &[(u32, u32)]) -> OperatorElement {
        let mut it = pairs.iter();
        let Some(&(p, q)) = it.next() else {
            return OperatorElement::zero(field);
        };
        it.fold(OperatorElement::generator(field, p, q), |acc, &(p, q)| {
            acc.mul(&OperatorElement::generator(field, p, q))
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OperatorWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &OperatorWord) -> Option<&Scalar> {
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

    pub fn add_word(&mut self, c: Scalar, w: OperatorWord) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, s: &Scalar, other: &OperatorElement) {
        for (w, c) in &other.terms {
            self.add_word(c * s, w.clone());
        }
    }

    pub fn add(&self, other: &OperatorElement) -> OperatorElement {
        let mut out = self.clone();
        out.add_scaled(&self.field.one(), other);
        out
    }

    pub fn sub(&self, other: &OperatorElement) -> OperatorElement {
        let mut out = self.clone();
        out.add_scaled(&self.field.from_i64(-1), other);
        out
    }

    pub fn scale(&self, s: &Scalar) -> OperatorElement {
        let mut out = OperatorElement::zero(self.field);
        out.add_scaled(s, self);
        out
    }

    /// Associative product: `self` acts first.
    pub fn mul(&self, other: &OperatorElement) -> OperatorElement {
        let mut out = OperatorElement::zero(self.field);
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                out.add_word(cu * cv, u.concat(v));
            }
        }
        out
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &OperatorElement) -> OperatorElement {
        self.mul(other).sub(&other.mul(self))
    }

    /// `a∘b = ab + ba`.
    pub fn circle(&self, other: &OperatorElement) -> OperatorElement {
        self.mul(other).add(&other.mul(self))
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|w| w.variables()).collect()
    }

    pub fn max_var(&self) -> u32 {
        self.variables().into_iter().next_back().unwrap_or(0)
    }

    /// Longest word length.
    pub fn length(&self) -> usize {
        self.terms.keys().map(OperatorWord::len).max().unwrap_or(0)
    }

    /// Image under a linear substitution of variables; unmapped variables are
    /// kept.
    pub fn substitute(&self, phi: &LinearSubstitution) -> OperatorElement {
        let image = |v: u32| -> Vec<(Scalar, u32)> {
            phi.get(&v).cloned().unwrap_or_else(|| vec![(self.field.one(), v)])
        };
        let mut out = OperatorElement::zero(self.field);
        for (w, c) in &self.terms {
            let mut acc: Option<OperatorElement> = None;
            for &(p, q) in &w.pairs {
                let mut factor = OperatorElement::zero(self.field);
                for (cp, vp) in image(p) {
                    for (cq, vq) in image(q) {
                        factor.add_scaled(&(&cp * &cq), &OperatorElement::generator(self.field, vp, vq));
                    }
                }
                acc = Some(match acc {
                    None => factor,
                    Some(a) => a.mul(&factor),
                });
            }
            if let Some(a) = acc {
                out.add_scaled(c, &a);
            }
        }
        out
    }

    /// The free-algebra element `x_head · self`.
    pub fn apply_to_variable(&self, head: u32) -> FreeElement {
        let mut f = FreeElement::zero(self.field);
        for (w, c) in &self.terms {
            let word = NormalWord::new(head, None, w.pairs.clone(), None).expect("valid pairs");
            f.add_word(c.clone(), word);
        }
        f
    }

    /// Writes an `R₀`-supported element as `Σ x_i g_i`, grouped by head.
    pub fn split_by_head(f: &FreeElement) -> Result<BTreeMap<u32, OperatorElement>> {
        let mut out: BTreeMap<u32, OperatorElement> = BTreeMap::new();
        for (w, c) in f.terms() {
            if crate::free::rk_tag(w) != RkTag::R0 {
                return Err(Error::InvalidWord(format!("{w} is not of the form x V…V")));
            }
            out.entry(w.head)
                .or_insert_with(|| OperatorElement::zero(f.field()))
                .add_word(c.clone(), OperatorWord { pairs: w.pairs.clone() });
        }
        out.retain(|_, g| !g.is_zero());
        Ok(out)
    }
}

impl fmt::Display for OperatorElement {
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

/// `[[f₁,f₂]∘[f₃,f₄],f₅]`.
pub fn hall_element(f: [&OperatorElement; 5]) -> OperatorElement {
    f[0].commutator(f[1]).circle(&f[2].commutator(f[3])).commutator(f[4])
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn generator_is_antisymmetric() {
        let g = OperatorElement::generator(Q, 2, 1);
        assert_eq!(g, OperatorElement::generator(Q, 1, 2).scale(&Q.from_i64(-1)));
        assert!(OperatorElement::generator(Q, 3, 3).is_zero());
        assert!(OperatorWord::new(vec![(2, 1)]).is_err());
        assert!(OperatorWord::new(vec![]).is_err());
    }

    #[test]
    fn hall_expansion_has_sixteen_words() {
        let f: Vec<OperatorElement> = (0..5).map(|i| OperatorElement::generator(Q, 2 * i + 1, 2 * i + 2)).collect();
        let s = hall_element([&f[0], &f[1], &f[2], &f[3], &f[4]]);
        assert_eq!(s.len(), 16);
        assert!(s.terms().all(|(w, c)| w.len() == 5 && (c.is_one() || (-c).is_one())));
        assert!(hall_element([&f[0], &f[0], &f[2], &f[3], &f[4]]).is_zero());
    }

    #[test]
    fn substitution_expands_bilinearly() {
        let g = OperatorElement::generator(Q, 1, 2);
        let mut phi = LinearSubstitution::new();
        phi.insert(2, vec![(Q.one(), 1), (Q.from_i64(2), 3)]);
        assert_eq!(g.substitute(&phi), OperatorElement::generator(Q, 1, 3).scale(&Q.from_i64(2)));
        assert_eq!(g.to_string(), "V[x1,x2]");
    }

    #[test]
    fn head_split_round_trips() {
        let g = OperatorElement::product_of(Q, &[(1, 2), (3, 4)]);
        assert_eq!(g.to_string(), "V[x1,x2] V[x3,x4]");
        let f = g.apply_to_variable(5);
        let split = OperatorElement::split_by_head(&f).unwrap();
        assert_eq!(split[&5], g);
    }
}
