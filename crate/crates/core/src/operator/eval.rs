//! Operator elements acting on concrete algebras.

use std::collections::BTreeMap;

use super::element::{OperatorElement, OperatorWord};
use crate::algebra::{unit, Algebra, LinOp, Subspace};
use crate::error::{Error, Result};
use crate::identity::{generic_vector, Assignment};
use crate::linalg::{add_scaled, Coefficient, SparseVec};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Matrix of `g` on `alg` under `x_v ↦ assignment[v]`.
pub fn eval_operator(g: &OperatorElement, alg: &Algebra, assignment: &Assignment) -> Result<LinOp> {
    let mut cache: BTreeMap<(u32, u32), LinOp> = BTreeMap::new();
    for (p, q) in g.terms().flat_map(|(w, _)| w.pairs().iter().copied()) {
        if cache.contains_key(&(p, q)) {
            continue;
        }
        let x = assignment.get(&p).ok_or(Error::UnboundVariable(p))?;
        let y = assignment.get(&q).ok_or(Error::UnboundVariable(q))?;
        cache.insert((p, q), alg.v_op(x, y)?);
    }
    let mut out = LinOp::zero(alg.field(), alg.dim());
    for (w, c) in g.terms() {
        let mut m = cache[&w.pairs()[0]].clone();
        for pair in &w.pairs()[1..] {
            m = m.then(&cache[pair]);
        }
        out = out.add(&m.scale(c));
    }
    Ok(out)
}

/// Applies every word of `g` to the row vector `start`, sharing common
/// prefixes. `step(v, p, q)` computes `v·V_{x_p,x_q}`.
fn apply_words<C: Coefficient>(
    words: &[(&OperatorWord, &Scalar)],
    depth: usize,
    current: &SparseVec<C>,
    step: &impl Fn(&SparseVec<C>, u32, u32) -> SparseVec<C>,
    out: &mut SparseVec<C>,
) {
    if current.is_empty() {
        return;
    }
    let mut i = 0;
    while i < words.len() {
        let (w, c) = words[i];
        if w.len() == depth {
            add_scaled(out, c, current);
            i += 1;
            continue;
        }
        let pair = w.pairs()[depth];
        let mut j = i;
        while j < words.len() && words[j].0.len() > depth && words[j].0.pairs()[depth] == pair {
            j += 1;
        }
        let next = step(current, pair.0, pair.1);
        apply_words(&words[i..j], depth + 1, &next, step, out);
        i = j;
    }
}

fn sorted_words(g: &OperatorElement) -> Vec<(&OperatorWord, &Scalar)> {
    // BTreeMap order on OperatorWord groups words by common prefix, with a
    // prefix sorting before its extensions.
    g.terms().collect()
}

/// `g` evaluated at generic points `x_v = Σ t_{v,k} s_k`, where `s_k` runs
/// over `spanning` (a list of coordinate vectors). Row `i` of the result is
/// the image of `eᵢ`.
fn generic_rows(alg: &Algebra, g: &OperatorElement, spanning: Option<&[SparseVec]>) -> Vec<SparseVec<Poly>> {
    let field = alg.field();
    let mut points: BTreeMap<u32, SparseVec<Poly>> = BTreeMap::new();
    for v in g.variables() {
        let point = match spanning {
            None => generic_vector(alg, v),
            Some(basis) => {
                let mut out: SparseVec<Poly> = SparseVec::new();
                for (k, s) in basis.iter().enumerate() {
                    let t = Poly::var(field, ((v as usize - 1) * basis.len() + k) as u32);
                    for (&i, c) in s {
                        crate::linalg::add_entry(&mut out, i, t.scale(c));
                    }
                }
                out
            }
        };
        points.insert(v, point);
    }
    let step = |u: &SparseVec<Poly>, p: u32, q: u32| {
        let xu = alg.mul_vec(&points[&p], u);
        alg.mul_vec(&xu, &points[&q])
    };
    let words = sorted_words(g);
    (0..alg.dim())
        .map(|i| {
            let start: SparseVec<Poly> = unit(field, i)
                .into_iter()
                .map(|(k, c)| (k, Poly::constant(c)))
                .collect();
            let mut out = SparseVec::new();
            apply_words(&words, 0, &start, &step, &mut out);
            out
        })
        .collect()
}

/// Whether `z·g = 0` holds identically in `alg`: the matrix of `g` under the
/// generic substitution is zero.
pub fn is_v_identity(alg: &Algebra, g: &OperatorElement) -> bool {
    alg.dim() == 0 || g.is_zero() || generic_rows(alg, g, None).iter().all(|r| r.is_empty())
}

/// Whether `g` vanishes as an operator on `alg` for all values of its
/// variables in `sub` (generic coordinates over a basis of `sub`).
pub fn vanishes_on_subspace(alg: &Algebra, sub: &Subspace, g: &OperatorElement) -> bool {
    let basis = sub.rows();
    alg.dim() == 0 || g.is_zero() || generic_rows(alg, g, Some(&basis)).iter().all(|r| r.is_empty())
}

/// Value of `t·g` on a concrete vector `t`, with the same prefix sharing as
/// the symbolic check.
pub fn apply_operator(
    alg: &Algebra,
    g: &OperatorElement,
    assignment: &Assignment,
    t: &SparseVec,
) -> Result<SparseVec> {
    for v in g.variables() {
        let e = assignment.get(&v).ok_or(Error::UnboundVariable(v))?;
        if e.algebra_id() != alg.id() {
            return Err(Error::MixedAlgebras);
        }
    }
    let step = |u: &SparseVec, p: u32, q: u32| {
        let xu = alg.mul_vec(assignment[&p].coeffs(), u);
        alg.mul_vec(&xu, assignment[&q].coeffs())
    };
    let mut out = SparseVec::new();
    apply_words(&sorted_words(g), 0, t, &step, &mut out);
    Ok(out)
}
