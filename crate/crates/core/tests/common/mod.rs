//! Independent oracles shared by the integration tests.
//!
//! `FreeQuotient` models one homogeneous component of the free algebra of the
//! variety directly: all binary trees with a given multiset of leaves, modulo
//! the span of every consequence of the defining identities of that
//! multidegree. It knows nothing about normal words.
//!
//! `enumerate_words` lists normal words of a multidegree by brute force over
//! all placements of variables into the word slots.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use rsym_core::free::{NormalWord, Term};
use rsym_core::linalg::{Echelon, SparseVec};
use rsym_core::Field;

pub type Multiset = Vec<u32>;

fn sorted(mut m: Multiset) -> Multiset {
    m.sort();
    m
}

/// All ordered ways to split `m` into `k` nonempty sub-multisets.
fn splits(m: &[u32], k: usize) -> Vec<Vec<Multiset>> {
    // assign each position a part index, dedupe by resulting multisets
    let mut out = std::collections::BTreeSet::new();
    let n = m.len();
    if k == 0 || n < k {
        return Vec::new();
    }
    let mut idx = vec![0usize; n];
    loop {
        let mut parts = vec![Vec::new(); k];
        for (p, &x) in idx.iter().zip(m) {
            parts[*p].push(x);
        }
        if parts.iter().all(|p| !p.is_empty()) {
            out.insert(parts.into_iter().map(sorted).collect::<Vec<_>>());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out.into_iter().collect();
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < k {
                break;
            }
            idx[i] = 0;
        }
    }
}

pub struct FreeQuotient {
    field: Field,
    trees: HashMap<Multiset, Vec<Term>>,
    index: HashMap<Multiset, HashMap<Term, usize>>,
    ideals: HashMap<Multiset, Echelon>,
}

type Lin = BTreeMap<Term, i64>;

impl FreeQuotient {
    pub fn new(field: Field) -> Self {
        FreeQuotient {
            field,
            trees: HashMap::new(),
            index: HashMap::new(),
            ideals: HashMap::new(),
        }
    }

    pub fn trees(&mut self, m: &Multiset) -> Vec<Term> {
        let m = sorted(m.clone());
        if let Some(t) = self.trees.get(&m) {
            return t.clone();
        }
        let mut out = Vec::new();
        if m.len() == 1 {
            out.push(Term::var(m[0]));
        } else {
            for parts in splits(&m, 2) {
                let left = self.trees(&parts[0]);
                let right = self.trees(&parts[1]);
                for a in &left {
                    for b in &right {
                        out.push(Term::mul(a.clone(), b.clone()));
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        let index = out.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        self.index.insert(m.clone(), index);
        self.trees.insert(m, out.clone());
        out
    }

    fn vector(&mut self, m: &Multiset, f: &Lin) -> SparseVec {
        let m = sorted(m.clone());
        self.trees(&m);
        let idx = &self.index[&m];
        let mut v = SparseVec::new();
        for (t, &c) in f {
            let k = idx[t];
            rsym_core::linalg::add_entry(&mut v, k, self.field.from_i64(c));
        }
        v
    }

    fn mul(a: &Lin, b: &Lin) -> Lin {
        let mut out = Lin::new();
        for (x, cx) in a {
            for (y, cy) in b {
                *out.entry(Term::mul(x.clone(), y.clone())).or_insert(0) += cx * cy;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn single(t: &Term) -> Lin {
        let mut l = Lin::new();
        l.insert(t.clone(), 1);
        l
    }

    fn add(a: &Lin, b: &Lin, s: i64) -> Lin {
        let mut out = a.clone();
        for (t, c) in b {
            *out.entry(t.clone()).or_insert(0) += s * c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Echelon basis of the consequences of the identities in multidegree `m`.
    pub fn ideal(&mut self, m: &Multiset) -> Echelon {
        let m = sorted(m.clone());
        if let Some(e) = self.ideals.get(&m) {
            return e.clone();
        }
        let n_trees = self.trees(&m).len();
        let mut gens: Vec<Lin> = Vec::new();
        // (uv)(wz) and [[u,v],w], (uv)w + (wv)u over monomial arguments
        for parts in splits(&m, 3) {
            let (tu, tv, tw) = (self.trees(&parts[0]), self.trees(&parts[1]), self.trees(&parts[2]));
            for u in &tu {
                for v in &tv {
                    for w in &tw {
                        let (lu, lv, lw) = (Self::single(u), Self::single(v), Self::single(w));
                        let uv = Self::mul(&lu, &lv);
                        let vu = Self::mul(&lv, &lu);
                        let comm = Self::add(&uv, &vu, -1);
                        let cw = Self::mul(&comm, &lw);
                        let wc = Self::mul(&lw, &comm);
                        gens.push(Self::add(&cw, &wc, -1));
                        let wv = Self::mul(&lw, &lv);
                        gens.push(Self::add(&Self::mul(&uv, &lw), &Self::mul(&wv, &lu), 1));
                    }
                }
            }
        }
        // (uv)u
        for parts in splits(&m, 2) {
            // parts[0] = 2β, parts[1] = γ
            let p0 = &parts[0];
            let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
            for &x in p0 {
                *counts.entry(x).or_default() += 1;
            }
            if counts.values().any(|c| c % 2 != 0) {
                continue;
            }
            let half: Multiset = counts
                .iter()
                .flat_map(|(&x, &c)| std::iter::repeat(x).take(c / 2))
                .collect();
            let (tu, tv) = (self.trees(&half), self.trees(&parts[1]));
            for u in &tu {
                for v in &tv {
                    let lu = Self::single(u);
                    gens.push(Self::mul(&Self::mul(&lu, &Self::single(v)), &lu));
                }
            }
        }
        let mut e = Echelon::new(self.field, n_trees);
        for t in self.trees(&m) {
            if let Term::Mul(a, b) = &t {
                if a.degree() >= 2 && b.degree() >= 2 {
                    gens.push(Self::single(&t));
                }
            }
        }
        for g in &gens {
            let v = self.vector(&m, g);
            e.insert(&v);
        }
        // contexts: I_β · x and x · I_β, and I_β · t, t · I_β for trees t
        for parts in splits(&m, 2) {
            for (ideal_part, other, ideal_left) in [(&parts[0], &parts[1], true), (&parts[1], &parts[0], false)] {
                if ideal_part.len() < 3 {
                    continue;
                }
                let sub = self.ideal(ideal_part);
                let sub_trees = self.trees(ideal_part);
                let others = self.trees(other);
                self.trees(&m);
                for o in &others {
                    let target: Vec<usize> = sub_trees
                        .iter()
                        .map(|t| {
                            let prod = if ideal_left {
                                Term::mul(t.clone(), o.clone())
                            } else {
                                Term::mul(o.clone(), t.clone())
                            };
                            self.index[&m][&prod]
                        })
                        .collect();
                    for row in sub.rows() {
                        let v: SparseVec = row.iter().map(|(&k, c)| (target[k], c.clone())).collect();
                        e.insert(&v);
                    }
                }
            }
        }
        self.ideals.insert(m, e.clone());
        e
    }

    /// Dimension of the quotient in multidegree `m`.
    pub fn quotient_dim(&mut self, m: &Multiset) -> usize {
        let n = self.trees(m).len();
        n - self.ideal(m).rank()
    }

    /// Whether `f` (a combination of trees of multidegree `m`) lies in the ideal.
    pub fn in_ideal(&mut self, m: &Multiset, f: &[(i64, Term)]) -> bool {
        let mut lin = Lin::new();
        for (c, t) in f {
            *lin.entry(t.clone()).or_insert(0) += c;
        }
        lin.retain(|_, c| *c != 0);
        let v = self.vector(m, &lin);
        self.ideal(m).contains(&v)
    }
}

/// Brute-force list of normal words with exactly the variables of `m`.
pub fn enumerate_words(m: &Multiset) -> Vec<NormalWord> {
    let m = sorted(m.clone());
    let d = m.len();
    let mut out = std::collections::BTreeSet::new();
    let perms = distinct_perms(&m);
    for has_r in [false, true] {
        for has_l in [false, true] {
            let fixed = 1 + has_r as usize + has_l as usize;
            if fixed > d || (d - fixed) % 2 != 0 {
                continue;
            }
            let k = (d - fixed) / 2;
            if k == 0 && !matches!((d, has_r, has_l), (1, false, false) | (2, false, true) | (3, true, true)) {
                continue;
            }
            for p in &perms {
                let mut it = p.iter().copied();
                let head = it.next().unwrap();
                let r = if has_r { it.next() } else { None };
                let pairs: Vec<(u32, u32)> = (0..k).map(|_| (it.next().unwrap(), it.next().unwrap())).collect();
                let l = if has_l { it.next() } else { None };
                if let Some(j) = r {
                    if head > j {
                        continue;
                    }
                }
                if pairs.iter().any(|&(a, b)| a >= b) {
                    continue;
                }
                out.insert(NormalWord { head, r, pairs, l });
            }
        }
    }
    out.into_iter().collect()
}

fn distinct_perms(m: &[u32]) -> Vec<Vec<u32>> {
    let mut out = std::collections::BTreeSet::new();
    fn go(rest: &mut Vec<u32>, cur: &mut Vec<u32>, out: &mut std::collections::BTreeSet<Vec<u32>>) {
        if rest.is_empty() {
            out.insert(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    go(&mut m.to_vec(), &mut Vec::new(), &mut out);
    out.into_iter().collect()
}
