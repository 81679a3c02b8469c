//! Normalization entry points, the Δ-operators, linearization, substitution
//! and the split of normal forms by word shape.

use std::collections::BTreeMap;

use super::term::{Term, TermSum};
use super::word::{normal_form_term, FreeElement, NormalWord};
use crate::error::{Error, Result};
use crate::scalar::Field;

pub const DEFAULT_DEGREE_CAP: usize = 12;

/// Normal form of a linear combination of terms.
pub fn normal_form(f: &TermSum, degree_cap: usize) -> Result<FreeElement> {
    let degree = f.degree();
    if degree > degree_cap {
        return Err(Error::DegreeCapExceeded {
            degree,
            cap: degree_cap,
        });
    }
    let mut out = FreeElement::zero(f.field());
    for (t, c) in f.terms() {
        out.add_scaled(c, &normal_form_term(f.field(), t));
    }
    Ok(out)
}

pub fn normal_form_of(field: Field, t: &Term) -> FreeElement {
    normal_form_term(field, t)
}

/// `fΔ^k_{x_i}(y)`: the part of `f(x_i + y)` of degree `k` in `y`, normalized.
pub fn delta(f: &FreeElement, i: u32, k: usize, y: &FreeElement) -> FreeElement {
    let mut out = FreeElement::zero(f.field());
    for (w, c) in f.terms() {
        let levels = delta_term(f.field(), &w.to_term(), i, k, y);
        out.add_scaled(c, &levels[k]);
    }
    out
}

/// All levels `tΔ^0 … tΔ^k` of a term.
fn delta_term(field: Field, t: &Term, i: u32, k: usize, y: &FreeElement) -> Vec<FreeElement> {
    let mut levels = vec![FreeElement::zero(field); k + 1];
    match t {
        Term::Var(v) => {
            levels[0] = FreeElement::var(field, *v);
            if *v == i && k >= 1 {
                levels[1] = y.clone();
            }
        }
        Term::Mul(a, b) => {
            let la = delta_term(field, a, i, k, y);
            let lb = delta_term(field, b, i, k, y);
            for r in 0..=k {
                for s in 0..=(k - r) {
                    if la[r].is_zero() || lb[s].is_zero() {
                        continue;
                    }
                    let p = la[r].mul(&lb[s]);
                    levels[r + s].add_assign(&p);
                }
            }
        }
    }
    levels
}

/// Full linearization of `f` in `x_i`: with `k = deg_{x_i} f`, the
/// coefficient of `y_1⋯y_k` in `f(x_i := y_1 + … + y_k)`. The fresh
/// variables `y_l` are `x_{M+l}` where `M` is the largest index in `f`.
/// Returns the result and the indices used for `y_1 … y_k`.
pub fn full_linearization(f: &FreeElement, i: u32) -> (FreeElement, Vec<u32>) {
    let k = f.degree_in(i);
    let base = f.max_var();
    let fresh: Vec<u32> = (1..=k as u32).map(|l| base + l).collect();
    // Only words of full degree k in x_i contribute a multilinear part.
    let mut g = f.filter(|w| w.degree_in(i) == k);
    for &y in &fresh {
        g = delta(&g, i, 1, &FreeElement::var(f.field(), y));
    }
    (g, fresh)
}

/// Substitutes free-algebra elements for variables and normalizes.
/// Variables missing from `map` are left in place.
pub fn substitute(f: &FreeElement, map: &BTreeMap<u32, FreeElement>) -> FreeElement {
    let mut out = FreeElement::zero(f.field());
    for (w, c) in f.terms() {
        out.add_scaled(c, &substitute_term(f.field(), &w.to_term(), map));
    }
    out
}

fn substitute_term(field: Field, t: &Term, map: &BTreeMap<u32, FreeElement>) -> FreeElement {
    match t {
        Term::Var(v) => map.get(v).cloned().unwrap_or_else(|| FreeElement::var(field, *v)),
        Term::Mul(a, b) => substitute_term(field, a, map).mul(&substitute_term(field, b, map)),
    }
}

/// Shape class of a normal word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RkTag {
    /// `x V…V`
    R0,
    /// `x V…V L`
    R1,
    /// `x R V…V`
    R2,
    /// `x R V…V L`
    R3,
    /// Words without any `V`, all of degree at most three.
    LowDegree,
}

pub fn rk_tag(w: &NormalWord) -> RkTag {
    if w.pairs.is_empty() {
        return RkTag::LowDegree;
    }
    match (w.r.is_some(), w.l.is_some()) {
        (false, false) => RkTag::R0,
        (false, true) => RkTag::R1,
        (true, false) => RkTag::R2,
        (true, true) => RkTag::R3,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub f0: FreeElement,
    pub f1: FreeElement,
    pub f2: FreeElement,
    pub f3: FreeElement,
    pub low: FreeElement,
}

impl Decomposition {
    pub fn component(&self, tag: RkTag) -> &FreeElement {
        match tag {
            RkTag::R0 => &self.f0,
            RkTag::R1 => &self.f1,
            RkTag::R2 => &self.f2,
            RkTag::R3 => &self.f3,
            RkTag::LowDegree => &self.low,
        }
    }

    pub fn total(&self) -> FreeElement {
        self.f0
            .add(&self.f1)
            .add(&self.f2)
            .add(&self.f3)
            .add(&self.low)
    }
}

pub fn decompose(f: &FreeElement) -> Decomposition {
    let part = |tag| f.filter(|w| rk_tag(w) == tag);
    Decomposition {
        f0: part(RkTag::R0),
        f1: part(RkTag::R1),
        f2: part(RkTag::R2),
        f3: part(RkTag::R3),
        low: part(RkTag::LowDegree),
    }
}

/// All normal words using each of `x_1 … x_m` exactly once, in word order.
pub fn multilinear_basis(m: usize) -> Vec<NormalWord> {
    let m = m as u32;
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let vars: Vec<u32> = (1..=m).collect();
    for perm in permutations(&vars) {
        for has_r in [false, true] {
            for has_l in [false, true] {
                let fixed = 1 + u32::from(has_r) + u32::from(has_l);
                if fixed > m || (m - fixed) % 2 != 0 {
                    continue;
                }
                let k = ((m - fixed) / 2) as usize;
                if k == 0 {
                    // x, x L, x R L only
                    let ok = matches!((m, has_r, has_l), (1, false, false) | (2, false, true) | (3, true, true));
                    if !ok {
                        continue;
                    }
                }
                let mut it = perm.iter().copied();
                let head = it.next().unwrap();
                let r = if has_r { it.next() } else { None };
                let pairs: Vec<(u32, u32)> = (0..k)
                    .map(|_| (it.next().unwrap(), it.next().unwrap()))
                    .collect();
                let l = if has_l { it.next() } else { None };
                let w = NormalWord { head, r, pairs, l };
                // Multilinear words need strict inequalities; validate covers p<q
                // and head <= R, which is strict here since indices differ.
                if w.validate().is_ok() {
                    out.push(w);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub(crate) fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}
