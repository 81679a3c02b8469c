//! Sparse vectors over exact coefficient rings and an incremental reduced
//! row-echelon builder.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::scalar::{Field, Scalar};

/// Coefficient ring for sparse vectors: the ground field itself, or the
/// polynomial ring used for symbolic (generic) substitution.
pub trait Coefficient: Clone + Debug + PartialEq {
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn negated(&self) -> Self;
}

impl Coefficient for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// Index-to-coefficient map with no stored zeros.
pub type SparseVec<C = Scalar> = BTreeMap<usize, C>;

/// `target += coef * v`.
pub fn axpy<C: Coefficient>(target: &mut SparseVec<C>, coef: &C, v: &SparseVec<C>) {
    for (&k, c) in v {
        add_entry(target, k, c.mul_ref(coef));
    }
}

/// `target += s * v` for a scalar multiplier.
pub fn add_scaled<C: Coefficient>(target: &mut SparseVec<C>, s: &Scalar, v: &SparseVec<C>) {
    if s.is_zero() {
        return;
    }
    for (&k, c) in v {
        add_entry(target, k, c.scale(s));
    }
}

pub fn add_entry<C: Coefficient>(target: &mut SparseVec<C>, k: usize, c: C) {
    if c.is_zero() {
        return;
    }
    match target.get_mut(&k) {
        Some(existing) => {
            existing.add_assign_ref(&c);
            if existing.is_zero() {
                target.remove(&k);
            }
        }
        None => {
            target.insert(k, c);
        }
    }
}

pub fn scaled<C: Coefficient>(v: &SparseVec<C>, s: &Scalar) -> SparseVec<C> {
    let mut out = SparseVec::new();
    add_scaled(&mut out, s, v);
    out
}

pub fn negated<C: Coefficient>(v: &SparseVec<C>) -> SparseVec<C> {
    v.iter().map(|(&k, c)| (k, c.negated())).collect()
}

pub fn sum<C: Coefficient>(a: &SparseVec<C>, b: &SparseVec<C>) -> SparseVec<C> {
    let mut out = a.clone();
    for (&k, c) in b {
        add_entry(&mut out, k, c.clone());
    }
    out
}

pub fn difference<C: Coefficient>(a: &SparseVec<C>, b: &SparseVec<C>) -> SparseVec<C> {
    let mut out = a.clone();
    for (&k, c) in b {
        add_entry(&mut out, k, c.negated());
    }
    out
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    /// Expression of this row in terms of the inserted vectors (tracked mode).
    combo: SparseVec,
}

/// Incrementally maintained reduced row-echelon basis of a subspace of
/// `field^dim`. Rows are monic at their pivot and every pivot column is zero
/// in all other rows, so two echelons of the same space have identical
/// [`Echelon::rows`].
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<Row>,
    pivots: BTreeMap<usize, usize>,
    track: bool,
    inserted: usize,
}

/// Result of reducing a vector against an echelon basis.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub remainder: SparseVec,
    /// `v - remainder` written over the inserted vectors (tracked mode only).
    pub combo: SparseVec,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            track: false,
            inserted: 0,
        }
    }

    /// An echelon that remembers how every row was built from the inserted
    /// vectors, so that membership comes with explicit coefficients.
    pub fn tracked(field: Field, dim: usize) -> Self {
        Echelon {
            track: true,
            ..Echelon::new(field, dim)
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut rem = v.clone();
        let mut combo = SparseVec::new();
        let hits: Vec<usize> = rem
            .keys()
            .copied()
            .filter(|k| self.pivots.contains_key(k))
            .collect();
        for p in hits {
            let Some(c) = rem.get(&p).cloned() else {
                continue;
            };
            let row = &self.rows[self.pivots[&p]];
            add_scaled(&mut rem, &-&c, &row.vec);
            if self.track {
                add_scaled(&mut combo, &c, &row.combo);
            }
        }
        Reduction {
            remainder: rem,
            combo,
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).remainder.is_empty()
    }

    /// Inserts `v`; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        self.insert_tracked(v).is_ok()
    }

    /// Inserts `v`. On linear dependence returns the relation
    /// `e_new - Σ cᵢ e_i` (over inserted-vector indices) that `v` satisfies;
    /// the relation is only populated in tracked mode.
    pub fn insert_tracked(&mut self, v: &SparseVec) -> Result<(), SparseVec> {
        debug_assert!(v.keys().all(|&k| k < self.dim));
        let label = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        if red.remainder.is_empty() {
            let mut relation = negated(&red.combo);
            if self.track {
                add_entry(&mut relation, label, self.field.one());
            }
            return Err(relation);
        }
        let (&pivot, lead) = red.remainder.iter().next().expect("nonempty");
        let inv = lead.inv().expect("nonzero lead");
        let vec = scaled(&red.remainder, &inv);
        let combo = if self.track {
            let mut c = negated(&red.combo);
            add_entry(&mut c, label, self.field.one());
            scaled(&c, &inv)
        } else {
            SparseVec::new()
        };
        for row in &mut self.rows {
            if let Some(c) = row.vec.get(&pivot).cloned() {
                let neg = -&c;
                add_scaled(&mut row.vec, &neg, &vec);
                if self.track {
                    add_scaled(&mut row.combo, &neg, &combo);
                }
            }
        }
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(Row { vec, combo });
        Ok(())
    }

    /// Basis rows ordered by increasing pivot.
    pub fn rows(&self) -> Vec<SparseVec> {
        self.pivots
            .values()
            .map(|&i| self.rows[i].vec.clone())
            .collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Coordinates of `v` with respect to [`Echelon::rows`], or `None` when
    /// `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.pivots
                .keys()
                .map(|p| v.get(p).cloned().unwrap_or_else(|| self.field.zero()))
                .collect(),
        )
    }

    /// Writes `v` as a combination of the inserted vectors (tracked mode).
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "express requires a tracked echelon");
        let red = self.reduce(v);
        red.remainder.is_empty().then_some(red.combo)
    }
}

/// Rank of a list of vectors.
pub fn rank(field: Field, dim: usize, vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new(field, dim);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
