//! Linear independence of the multilinear normal words, certified by
//! evaluating them in some `P_N`.

use super::calculus::multilinear_basis;
use super::word::NormalWord;
use crate::identity::{evaluate_term, Assignment};
use crate::linalg::{rank, SparseVec};
use crate::pn::Pn;
use crate::scalar::Field;

#[derive(Clone, Debug)]
pub struct IndependenceCertificate {
    pub words: Vec<NormalWord>,
    /// `N` of the algebra `P_N` the words were evaluated in.
    pub n: usize,
    pub substitutions: Vec<Assignment>,
    pub rank: usize,
}

impl IndependenceCertificate {
    pub fn is_valid(&self) -> bool {
        self.rank == self.words.len()
    }
}

/// The substitution singling out `w`: the head (and R-argument) produce
/// `c_2`, the `r`-th `V` carries `c_{r+1}` to `c_{r+2}` via
/// `V_{a, -b}`, and a trailing `L` lifts the result to a `d`.
fn substitution_for(p: &Pn, w: &NormalWord) -> Assignment {
    let alg = p.algebra();
    let mut a = Assignment::new();
    if w.degree() == 1 {
        a.insert(w.head, p.c(1));
        return a;
    }
    if w.pairs.is_empty() && w.r.is_none() {
        // x_s x_h with x_h = c_1, x_s = a_11
        a.insert(w.head, p.c(1));
        a.insert(w.l.expect("degree two word has L"), p.a(1, 1));
        return a;
    }
    match w.r {
        Some(j) => {
            a.insert(w.head, p.d(1, 2));
            a.insert(j, -&p.b(1, 2));
        }
        None => {
            a.insert(w.head, p.c(2));
        }
    }
    for (r, &(pv, qv)) in w.pairs.iter().enumerate() {
        let i = r + 2;
        a.insert(pv, p.a(i, i + 1));
        a.insert(qv, -&p.b(i, i + 1));
    }
    if let Some(s) = w.l {
        let k = w.pairs.len();
        a.insert(s, p.a(k + 2, k + 3));
    }
    debug_assert!(a.values().all(|e| e.algebra_id() == alg.id()));
    a
}

fn needed_n(w: &NormalWord) -> usize {
    if w.pairs.is_empty() && w.r.is_none() {
        return 1;
    }
    w.pairs.len() + 2 + usize::from(w.l.is_some())
}

/// Evaluates every multilinear word of degree `m` under every word's
/// distinguished substitution and returns the rank of the resulting matrix.
pub fn independence_certificate(m: usize, field: Field) -> IndependenceCertificate {
    let words = multilinear_basis(m);
    let n = words.iter().map(needed_n).max().unwrap_or(1).max(1);
    let p = Pn::new(n, field).expect("n >= 1");
    let alg = p.algebra();
    let subs: Vec<Assignment> = words.iter().map(|w| substitution_for(&p, w)).collect();
    let dim = alg.dim();
    let columns: Vec<SparseVec> = words
        .iter()
        .map(|w| {
            let t = w.to_term();
            let mut col = SparseVec::new();
            for (si, s) in subs.iter().enumerate() {
                let v = evaluate_term(alg, &t, s).expect("all variables assigned");
                for (k, c) in v.coeffs() {
                    col.insert(si * dim + k, c.clone());
                }
            }
            col
        })
        .collect();
    let r = rank(field, subs.len() * dim, &columns);
    IndependenceCertificate {
        words,
        n,
        substitutions: subs,
        rank: r,
    }
}
