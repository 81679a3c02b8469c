//! Reduction of identities of `P_n` to operator identities `z·g = 0`, and a
//! bounded search for membership in the ideal of `E₀` generated by a set of
//! operator identities.

use std::collections::{BTreeMap, HashMap};

use super::element::{LinearSubstitution, OperatorElement, OperatorWord};
use crate::error::{Error, Result};
use crate::free::{decompose, delta, FreeElement, RkTag};
use crate::identity::is_identity_free;
use crate::linalg::{Echelon, SparseVec};
use crate::pn::Pn;
use crate::scalar::Scalar;

/// One operator identity produced by the reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedIdentity {
    /// Shape class of the part of `f` this came from.
    pub source: RkTag,
    /// For `R₂`/`R₃` parts, the variable `x_i` the Δ-operator was applied to.
    pub delta_variable: Option<u32>,
    /// Head variable `x_h` of the `R₀` element `Σ x_h g_h` it was read off.
    pub head: u32,
    pub g: OperatorElement,
}

/// Largest number of operator identities the reduction can produce for an
/// identity in `m` variables.
pub fn reduction_bound(m: usize) -> usize {
    2 * m * (m + 3)
}

/// Turns an identity `f(x_1, …, x_m) = 0` of `P_n` (`n ≥ 2`) into operator
/// elements `g` such that `f = 0` holds in `P_n` iff every `z·g = 0` does:
///
/// * `R₀` part `Σ x_i g_i`: the `g_i` directly;
/// * `R₁` part: multiply by `x_{m+1}` to land in `R₀`;
/// * `R₂` part: apply `Δ_{x_i}(x_{m+1}x_{m+2})` for each `i ≤ m`;
/// * `R₃` part: multiply by `x_{m+1}`, then apply `Δ_{x_i}(x_{m+2}x_{m+3})`.
pub fn reduce_to_operator_identities(f: &FreeElement, p: &Pn) -> Result<Vec<ReducedIdentity>> {
    if p.n() < 2 {
        return Err(Error::InvalidN(p.n()));
    }
    if !is_identity_free(p.algebra(), f) {
        return Err(Error::NotAnIdentity(f.to_string()));
    }
    let field = f.field();
    let m = f.max_var();
    let var = |v: u32| FreeElement::var(field, v);
    let d = decompose(f);
    if !d.low.is_zero() {
        // Identities of P_n (n ≥ 2) have no component of degree ≤ 3.
        return Err(Error::NotAnIdentity(d.low.to_string()));
    }
    let mut out = Vec::new();
    let mut emit = |source: RkTag, delta_variable: Option<u32>, r0: &FreeElement| -> Result<()> {
        for (head, g) in OperatorElement::split_by_head(r0)? {
            out.push(ReducedIdentity {
                source,
                delta_variable,
                head,
                g,
            });
        }
        Ok(())
    };
    emit(RkTag::R0, None, &d.f0)?;
    emit(RkTag::R1, None, &d.f1.mul(&var(m + 1)))?;
    let y12 = var(m + 1).mul(&var(m + 2));
    for i in 1..=m {
        emit(RkTag::R2, Some(i), &delta(&d.f2, i, 1, &y12))?;
    }
    let f3x = d.f3.mul(&var(m + 1));
    let y23 = var(m + 2).mul(&var(m + 3));
    for i in 1..=m {
        emit(RkTag::R3, Some(i), &delta(&f3x, i, 1, &y23))?;
    }
    Ok(out)
}

/// Search bounds for [`ideal_membership_expand`].
#[derive(Clone, Debug)]
pub struct MembershipBounds {
    /// Give up when more than this many candidate products would be built.
    pub max_candidates: usize,
}

impl Default for MembershipBounds {
    fn default() -> Self {
        MembershipBounds {
            max_candidates: 200_000,
        }
    }
}

/// One summand `c · u · φ(G[index]) · v`; `u`, `v` absent means the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipTerm {
    pub coefficient: Scalar,
    pub left: Option<OperatorWord>,
    pub generator: usize,
    pub substitution: LinearSubstitution,
    pub right: Option<OperatorWord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Certificate(Vec<MembershipTerm>),
    /// Not found within the bounds; this is not a refutation.
    Unknown,
}

impl MembershipTerm {
    pub fn value(&self, gens: &[OperatorElement]) -> OperatorElement {
        let field = gens[self.generator].field();
        let mut x = gens[self.generator].substitute(&self.substitution);
        if let Some(u) = &self.left {
            x = OperatorElement::word(field, u.clone()).mul(&x);
        }
        if let Some(v) = &self.right {
            x = x.mul(&OperatorElement::word(field, v.clone()));
        }
        x.scale(&self.coefficient)
    }
}

/// Recomputes `Σ c·u·φ(g)·v` and compares with `target`.
pub fn check_certificate(target: &OperatorElement, gens: &[OperatorElement], terms: &[MembershipTerm]) -> bool {
    let mut sum = OperatorElement::zero(target.field());
    for t in terms {
        sum = sum.add(&t.value(gens));
    }
    &sum == target
}

type Multidegree = BTreeMap<u32, usize>;

fn word_multidegree(w: &OperatorWord) -> Multidegree {
    let mut md = Multidegree::new();
    for &(p, q) in w.pairs() {
        *md.entry(p).or_default() += 1;
        *md.entry(q).or_default() += 1;
    }
    md
}

/// Common multidegree of all words, or `None` for inhomogeneous input.
fn multidegree(x: &OperatorElement) -> Option<Multidegree> {
    let mut mds = x.terms().map(|(w, _)| word_multidegree(w));
    let first = mds.next()?;
    mds.all(|m| m == first).then_some(first)
}

fn residual(total: &Multidegree, part: &Multidegree) -> Option<Multidegree> {
    let mut out = total.clone();
    for (v, &k) in part {
        let e = out.get_mut(v)?;
        *e = e.checked_sub(k)?;
    }
    out.retain(|_, k| *k > 0);
    Some(out)
}

/// All sequences of pairs `(p, q)`, `p < q`, using exactly the multiset `md`.
fn pair_sequences(md: &Multidegree) -> Vec<Vec<(u32, u32)>> {
    if md.is_empty() {
        return vec![Vec::new()];
    }
    let vars: Vec<u32> = md.keys().copied().collect();
    let mut out = Vec::new();
    for (i, &p) in vars.iter().enumerate() {
        for &q in &vars[i + 1..] {
            let mut rest = md.clone();
            for v in [p, q] {
                let e = rest.get_mut(&v).expect("present");
                *e -= 1;
                if *e == 0 {
                    rest.remove(&v);
                }
            }
            for mut tail in pair_sequences(&rest) {
                tail.insert(0, (p, q));
                out.push(tail);
            }
        }
    }
    out
}

/// All maps from `source` into `targets`.
fn renamings(field: crate::scalar::Field, source: &[u32], targets: &[u32]) -> Vec<LinearSubstitution> {
    let mut out = vec![LinearSubstitution::new()];
    for &v in source {
        out = out
            .into_iter()
            .flat_map(|phi| {
                targets.iter().map(move |&t| {
                    let mut phi = phi.clone();
                    phi.insert(v, vec![(field.one(), t)]);
                    phi
                })
            })
            .collect();
    }
    out
}

/// Looks for `g = Σ c_r u_r φ_r(G_{j_r}) v_r` where `φ_r` renames variables
/// into those of `g` and `u_r, v_r` are words (or the unit) chosen so that
/// each product has the multidegree of some word of `g`. Generators whose
/// renamed image is not multihomogeneous are skipped. A certificate is always
/// correct; `Unknown` only means nothing was found in this family.
pub fn ideal_membership_expand(
    g: &OperatorElement,
    gens: &[OperatorElement],
    bounds: &MembershipBounds,
) -> Membership {
    if g.is_zero() {
        return Membership::Certificate(Vec::new());
    }
    let field = g.field();
    let vars: Vec<u32> = g.variables().into_iter().collect();
    let targets: std::collections::BTreeSet<Multidegree> = g.terms().map(|(w, _)| word_multidegree(w)).collect();
    let mut candidates: Vec<(MembershipTerm, OperatorElement)> = Vec::new();
    for (j, h) in gens.iter().enumerate() {
        let hvars: Vec<u32> = h.variables().into_iter().collect();
        let phis = renamings(field, &hvars, &vars);
        if candidates.len() + phis.len() > bounds.max_candidates {
            return Membership::Unknown;
        }
        for phi in phis {
            let image = h.substitute(&phi);
            let Some(md) = multidegree(&image) else {
                continue;
            };
            for t in &targets {
                let Some(rest) = residual(t, &md) else {
                    continue;
                };
                for seq in pair_sequences(&rest) {
                    for split in 0..=seq.len() {
                        if candidates.len() >= bounds.max_candidates {
                            return Membership::Unknown;
                        }
                        let word = |s: &[(u32, u32)]| (!s.is_empty()).then(|| OperatorWord::new(s.to_vec()).expect("sorted"));
                        let term = MembershipTerm {
                            coefficient: field.one(),
                            left: word(&seq[..split]),
                            generator: j,
                            substitution: phi.clone(),
                            right: word(&seq[split..]),
                        };
                        let value = term.value(gens);
                        candidates.push((term, value));
                    }
                }
            }
        }
    }
    let mut index: HashMap<OperatorWord, usize> = HashMap::new();
    for (w, _) in g.terms() {
        let next = index.len();
        index.entry(w.clone()).or_insert(next);
    }
    for (_, value) in &candidates {
        for (w, _) in value.terms() {
            let next = index.len();
            index.entry(w.clone()).or_insert(next);
        }
    }
    let to_vec = |x: &OperatorElement| -> SparseVec {
        x.terms().map(|(w, c)| (index[w], c.clone())).collect()
    };
    let mut echelon = Echelon::tracked(field, index.len());
    for (_, value) in &candidates {
        echelon.insert(&to_vec(value));
    }
    let Some(combo) = echelon.express(&to_vec(g)) else {
        return Membership::Unknown;
    };
    let mut terms: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (k, c) in combo {
        terms.insert(k, c);
    }
    let cert: Vec<MembershipTerm> = terms
        .into_iter()
        .map(|(k, c)| MembershipTerm {
            coefficient: c,
            ..candidates[k].0.clone()
        })
        .collect();
    debug_assert!(check_certificate(g, gens, &cert));
    Membership::Certificate(cert)
}
