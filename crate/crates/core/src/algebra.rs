//! Finite-dimensional algebras given by sparse structure constants, with
//! multiplication operators, subspaces, closures, quotients and tensor
//! products.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{self, add_entry, add_scaled, Coefficient, Echelon, SparseVec};
use crate::scalar::{Field, Scalar};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// An algebra `A` with basis `e₀ … e_{d-1}` and products
/// `eᵢeⱼ = Σₖ c_{ijk} eₖ`. Omitted products are zero.
#[derive(Clone, Debug)]
pub struct Algebra {
    id: u64,
    field: Field,
    names: Vec<String>,
    index: HashMap<String, usize>,
    table: BTreeMap<(usize, usize), SparseVec>,
    pub(crate) variety_cache: OnceLock<bool>,
}

impl Algebra {
    /// Builds an algebra from `(i, j, k, c)` entries meaning `eᵢeⱼ += c·eₖ`.
    /// Repeated entries accumulate; zero constants are dropped.
    pub fn new<I>(field: Field, names: Vec<String>, entries: I) -> Result<Algebra>
    where
        I: IntoIterator<Item = (usize, usize, usize, Scalar)>,
    {
        let dim = names.len();
        let mut index = HashMap::with_capacity(dim);
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::DuplicateBasisName(n.clone()));
            }
        }
        let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (i, j, k, c) in entries {
            for index in [i, j, k] {
                if index >= dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
            if c.field() != field {
                return Err(Error::Spec(format!(
                    "structure constant {c} does not belong to {field}"
                )));
            }
            add_entry(table.entry((i, j)).or_default(), k, c);
        }
        table.retain(|_, v| !v.is_empty());
        Ok(Algebra {
            id: fresh_id(),
            field,
            names,
            index,
            table,
            variety_cache: OnceLock::new(),
        })
    }

    /// Convenience constructor from named products with integer coefficients.
    pub fn from_named(
        field: Field,
        names: &[&str],
        products: &[(&str, &str, &[(i64, &str)])],
    ) -> Result<Algebra> {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let lookup = |n: &str| {
            names
                .iter()
                .position(|m| *m == n)
                .ok_or_else(|| Error::UnknownBasisName(n.to_string()))
        };
        let mut entries = Vec::new();
        for (l, r, terms) in products {
            let (i, j) = (lookup(l)?, lookup(r)?);
            for (c, k) in terms.iter() {
                entries.push((i, j, lookup(k)?, field.from_i64(*c)));
            }
        }
        Algebra::new(field, owned, entries)
    }

    /// The algebra with zero multiplication on basis `e1 … e_dim`.
    pub fn zero_algebra(field: Field, dim: usize) -> Algebra {
        let names = (1..=dim).map(|i| format!("e{i}")).collect();
        Algebra::new(field, names, std::iter::empty()).expect("valid zero algebra")
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownBasisName(name.to_string()))
    }

    /// Nonzero structure constants keyed by `(i, j)` in index order.
    pub fn structure_constants(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVec)> {
        self.table.iter()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Option<&SparseVec> {
        self.table.get(&(i, j))
    }

    // ---- elements -------------------------------------------------------

    pub fn zero(&self) -> Element {
        Element {
            algebra: self.id,
            coeffs: SparseVec::new(),
        }
    }

    pub fn basis(&self, i: usize) -> Element {
        assert!(i < self.dim(), "basis index {i} out of range");
        let mut coeffs = SparseVec::new();
        coeffs.insert(i, self.field.one());
        Element {
            algebra: self.id,
            coeffs,
        }
    }

    pub fn basis_named(&self, name: &str) -> Result<Element> {
        Ok(self.basis(self.index_of(name)?))
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        (0..self.dim()).map(|i| self.basis(i)).collect()
    }

    /// Wraps a coefficient vector, checking indices and dropping zeros.
    pub fn element(&self, coeffs: SparseVec) -> Result<Element> {
        let dim = self.dim();
        if let Some((&index, _)) = coeffs.iter().find(|(&k, _)| k >= dim) {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        Ok(Element {
            algebra: self.id,
            coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub(crate) fn wrap(&self, coeffs: SparseVec) -> Element {
        Element {
            algebra: self.id,
            coeffs,
        }
    }

    /// Parses `3/2*a11 - c1` style linear combinations of basis names.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let terms = crate::parse::parse_linear_combination(self.field, text)?;
        let mut coeffs = SparseVec::new();
        for (c, name) in terms {
            add_entry(&mut coeffs, self.index_of(&name)?, c);
        }
        Ok(self.wrap(coeffs))
    }

    pub fn format_element(&self, u: &Element) -> String {
        format_combination(u.coeffs.iter().map(|(&k, c)| (c, self.names[k].as_str())))
    }

    fn check(&self, u: &Element) -> Result<()> {
        if u.algebra == self.id {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }

    // ---- products -------------------------------------------------------

    /// Bilinear product of coordinate vectors over any coefficient ring.
    pub fn mul_vec<C: Coefficient>(&self, u: &SparseVec<C>, v: &SparseVec<C>) -> SparseVec<C> {
        let mut out = SparseVec::new();
        for (&i, cu) in u {
            for (&(_, j), prod) in self.table.range((i, 0)..=(i, usize::MAX)) {
                if let Some(cv) = v.get(&j) {
                    let c = cu.mul_ref(cv);
                    for (&k, s) in prod {
                        add_entry(&mut out, k, c.scale(s));
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, u: &Element, v: &Element) -> Result<Element> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.wrap(self.mul_vec(&u.coeffs, &v.coeffs)))
    }

    /// `uv - vu`.
    pub fn commutator(&self, u: &Element, v: &Element) -> Result<Element> {
        Ok(&self.mul(u, v)? - &self.mul(v, u)?)
    }

    /// `(uv)w - u(vw)`.
    pub fn associator(&self, u: &Element, v: &Element, w: &Element) -> Result<Element> {
        let left = self.mul(&self.mul(u, v)?, w)?;
        let right = self.mul(u, &self.mul(v, w)?)?;
        Ok(&left - &right)
    }

    /// Matrix of `R_x : a ↦ ax`.
    pub fn right_mul(&self, x: &Element) -> Result<LinOp> {
        self.check(x)?;
        Ok(self.op_from_rows(|i| self.mul_vec(&unit(self.field, i), &x.coeffs)))
    }

    /// Matrix of `L_x : a ↦ xa`.
    pub fn left_mul(&self, x: &Element) -> Result<LinOp> {
        self.check(x)?;
        Ok(self.op_from_rows(|i| self.mul_vec(&x.coeffs, &unit(self.field, i))))
    }

    /// Matrix of `V_{x,y} = L_x R_y : a ↦ (xa)y`.
    pub fn v_op(&self, x: &Element, y: &Element) -> Result<LinOp> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.v_op_vec(&x.coeffs, &y.coeffs))
    }

    pub(crate) fn v_op_vec(&self, x: &SparseVec, y: &SparseVec) -> LinOp {
        self.op_from_rows(|i| {
            let xa = self.mul_vec(x, &unit(self.field, i));
            self.mul_vec(&xa, y)
        })
    }

    fn op_from_rows(&self, row: impl Fn(usize) -> SparseVec) -> LinOp {
        LinOp {
            field: self.field,
            dim: self.dim(),
            rows: (0..self.dim()).map(row).collect(),
        }
    }

    // ---- subspaces ------------------------------------------------------

    pub fn span(&self, elements: &[Element]) -> Result<Subspace> {
        let mut s = self.zero_subspace();
        for e in elements {
            self.check(e)?;
            s.echelon.insert(&e.coeffs);
        }
        Ok(s)
    }

    pub fn zero_subspace(&self) -> Subspace {
        Subspace {
            algebra: self.id,
            echelon: Echelon::new(self.field, self.dim()),
        }
    }

    pub fn whole(&self) -> Subspace {
        let mut s = self.zero_subspace();
        for i in 0..self.dim() {
            s.echelon.insert(&unit(self.field, i));
        }
        s
    }

    /// `span{uv : u ∈ U, v ∈ V}`.
    pub fn product_span(&self, left: &Subspace, right: &Subspace) -> Result<Subspace> {
        self.check_sub(left)?;
        self.check_sub(right)?;
        let mut out = self.zero_subspace();
        let rb = right.echelon.rows();
        for u in left.echelon.rows() {
            for v in &rb {
                out.echelon.insert(&self.mul_vec(&u, v));
            }
        }
        Ok(out)
    }

    fn check_sub(&self, s: &Subspace) -> Result<()> {
        if s.algebra == self.id {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }

    /// `{x : xA = 0}`.
    pub fn left_annihilator(&self) -> Subspace {
        let d = self.dim();
        // x ↦ (x e₀, …, x e_{d-1}) flattened; the annihilator is its kernel.
        let images: Vec<SparseVec> = (0..d)
            .map(|i| {
                let mut v = SparseVec::new();
                for j in 0..d {
                    if let Some(p) = self.table.get(&(i, j)) {
                        for (&k, c) in p {
                            v.insert(j * d + k, c.clone());
                        }
                    }
                }
                v
            })
            .collect();
        let mut s = self.zero_subspace();
        for rel in kernel(self.field, d * d.max(1), &images) {
            s.echelon.insert(&rel);
        }
        s
    }

    /// Smallest subalgebra containing `gens`.
    pub fn subalgebra(&self, gens: &[Element]) -> Result<Subspace> {
        for g in gens {
            self.check(g)?;
        }
        let mut sub = self.zero_subspace();
        let mut found: Vec<SparseVec> = Vec::new();
        for g in gens {
            if sub.echelon.insert(&g.coeffs) {
                found.push(g.coeffs.clone());
            }
        }
        let mut next = 0;
        while next < found.len() {
            let b = found[next].clone();
            for prev in 0..=next {
                let a = found[prev].clone();
                for p in [self.mul_vec(&a, &b), self.mul_vec(&b, &a)] {
                    if sub.echelon.insert(&p) {
                        found.push(p);
                    }
                }
            }
            next += 1;
            if found.len() > self.dim() {
                return Err(Error::ClosureDiverged);
            }
        }
        Ok(sub)
    }

    /// Smallest two-sided ideal containing `gens`.
    pub fn ideal(&self, gens: &[Element]) -> Result<Subspace> {
        for g in gens {
            self.check(g)?;
        }
        let mut sub = self.zero_subspace();
        let mut found: Vec<SparseVec> = Vec::new();
        for g in gens {
            if sub.echelon.insert(&g.coeffs) {
                found.push(g.coeffs.clone());
            }
        }
        let mut next = 0;
        while next < found.len() {
            let b = found[next].clone();
            for i in 0..self.dim() {
                let e = unit(self.field, i);
                for p in [self.mul_vec(&e, &b), self.mul_vec(&b, &e)] {
                    if sub.echelon.insert(&p) {
                        found.push(p);
                    }
                }
            }
            next += 1;
        }
        Ok(sub)
    }

    /// Checks that `ideal` is a two-sided ideal of the subalgebra `within`
    /// (pass [`Algebra::whole`] for the algebra itself).
    pub fn check_ideal_of(&self, ideal: &Subspace, within: &Subspace) -> Result<()> {
        self.check_sub(ideal)?;
        self.check_sub(within)?;
        if !ideal.is_subspace_of(within) {
            return Err(Error::NotAnIdeal("not contained in the ambient subalgebra".into()));
        }
        for l in within.echelon.rows() {
            for i in ideal.echelon.rows() {
                for (p, side) in [(self.mul_vec(&l, &i), "left"), (self.mul_vec(&i, &l), "right")] {
                    if !ideal.echelon.contains(&p) {
                        return Err(Error::NotAnIdeal(format!(
                            "{side} product {} escapes",
                            self.format_element(&self.wrap(p))
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `A / I` on the complement spanned by the non-pivot basis vectors of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        self.check_ideal_of(ideal, &self.whole())?;
        let pivots: std::collections::BTreeSet<usize> =
            ideal.echelon.pivot_columns().into_iter().collect();
        let complement: Vec<usize> = (0..self.dim()).filter(|k| !pivots.contains(k)).collect();
        let position: HashMap<usize, usize> =
            complement.iter().enumerate().map(|(p, &k)| (k, p)).collect();
        let project = |v: &SparseVec| -> SparseVec {
            ideal
                .echelon
                .reduce(v)
                .remainder
                .into_iter()
                .map(|(k, c)| (position[&k], c))
                .collect()
        };
        let mut entries = Vec::new();
        for (a, &i) in complement.iter().enumerate() {
            for (b, &j) in complement.iter().enumerate() {
                if let Some(p) = self.table.get(&(i, j)) {
                    for (k, c) in project(p) {
                        entries.push((a, b, k, c));
                    }
                }
            }
        }
        let names = complement.iter().map(|&k| self.names[k].clone()).collect();
        let algebra = Algebra::new(self.field, names, entries)?;
        Ok(Quotient {
            source: self.id,
            algebra,
            ideal: ideal.clone(),
            position,
        })
    }

    /// The subalgebra `sub` as an algebra in its own right, with basis the
    /// echelon rows of `sub` (named after their pivot basis vectors).
    pub fn restrict(&self, sub: &Subspace) -> Result<Restriction> {
        self.check_sub(sub)?;
        let rows = sub.echelon.rows();
        let pivots = sub.echelon.pivot_columns();
        let mut entries = Vec::new();
        for (a, u) in rows.iter().enumerate() {
            for (b, v) in rows.iter().enumerate() {
                let p = self.mul_vec(u, v);
                let coords = sub.echelon.coordinates(&p).ok_or_else(|| {
                    Error::Spec("subspace is not closed under multiplication".into())
                })?;
                for (k, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        entries.push((a, b, k, c));
                    }
                }
            }
        }
        let names = pivots.iter().map(|&k| self.names[k].clone()).collect();
        Ok(Restriction {
            source: self.id,
            algebra: Algebra::new(self.field, names, entries)?,
            sub: sub.clone(),
            rows,
        })
    }

    /// Verifies commutativity and associativity on basis elements.
    pub fn check_commutative_associative(&self) -> std::result::Result<(), String> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let (ei, ej) = (unit(self.field, i), unit(self.field, j));
                if self.mul_vec(&ei, &ej) != self.mul_vec(&ej, &ei) {
                    return Err(format!("{} and {} do not commute", self.names[i], self.names[j]));
                }
                let eij = self.mul_vec(&ei, &ej);
                for k in 0..d {
                    let ek = unit(self.field, k);
                    if self.mul_vec(&eij, &ek) != self.mul_vec(&ei, &self.mul_vec(&ej, &ek)) {
                        return Err(format!(
                            "({}, {}, {}) is not associative",
                            self.names[i], self.names[j], self.names[k]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// `C ⊗ A` with `(c⊗a)(c'⊗a') = cc' ⊗ aa'`; basis `cᵢ⊗aⱼ` at index
    /// `i·dim A + j`, named `ci.aj`.
    pub fn tensor(left: &Algebra, right: &Algebra) -> Result<Algebra> {
        left.check_commutative_associative()
            .map_err(Error::LeftFactorNotCommutativeAssociative)?;
        if left.field != right.field {
            return Err(Error::MixedAlgebras);
        }
        let da = right.dim();
        let mut names = Vec::with_capacity(left.dim() * da);
        for c in &left.names {
            for a in &right.names {
                names.push(format!("{c}.{a}"));
            }
        }
        let mut entries = Vec::new();
        for (&(i1, i2), cp) in &left.table {
            for (&(j1, j2), ap) in &right.table {
                for (&k1, c1) in cp {
                    for (&k2, c2) in ap {
                        entries.push((i1 * da + j1, i2 * da + j2, k1 * da + k2, c1 * c2));
                    }
                }
            }
        }
        Algebra::new(left.field, names, entries)
    }

    /// The one-dimensional algebra `F` with `1·1 = 1`.
    pub fn ground_field(field: Field) -> Algebra {
        Algebra::new(field, vec!["1".into()], [(0, 0, 0, field.one())]).expect("valid")
    }
}

pub(crate) fn unit(field: Field, i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, field.one());
    v
}

/// Basis of `{α : Σ αᵢ vᵢ = 0}`.
pub fn kernel(field: Field, dim: usize, vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::tracked(field, dim);
    let mut rels = Vec::new();
    for v in vectors {
        if let Err(rel) = e.insert_tracked(v) {
            rels.push(rel);
        }
    }
    rels
}

/// Formats `Σ cᵢ·nameᵢ` as `3/2*a11 - c1`, or `0`.
pub fn format_combination<'a>(terms: impl Iterator<Item = (&'a Scalar, &'a str)>) -> String {
    let mut out = String::new();
    for (c, name) in terms {
        let (neg, abs) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Vector in a specific algebra; no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    algebra: u64,
    coeffs: SparseVec,
}

impl Element {
    pub fn algebra_id(&self) -> u64 {
        self.algebra
    }

    pub fn coeffs(&self) -> &SparseVec {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&Scalar> {
        self.coeffs.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element {
            algebra: self.algebra,
            coeffs: linalg::scaled(&self.coeffs, s),
        }
    }

    pub fn apply(&self, op: &LinOp) -> Element {
        Element {
            algebra: self.algebra,
            coeffs: op.apply(&self.coeffs),
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.algebra, rhs.algebra, "elements of different algebras");
        Element {
            algebra: self.algebra,
            coeffs: linalg::sum(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.algebra, rhs.algebra, "elements of different algebras");
        Element {
            algebra: self.algebra,
            coeffs: linalg::difference(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            algebra: self.algebra,
            coeffs: linalg::negated(&self.coeffs),
        }
    }
}

/// Linear operator acting on row vectors: `u·Op`, row `i` is the image of
/// `eᵢ`. Products compose left to right: `u·(PQ) = (u·P)·Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinOp {
    field: Field,
    dim: usize,
    rows: Vec<SparseVec>,
}

impl LinOp {
    pub fn zero(field: Field, dim: usize) -> LinOp {
        LinOp {
            field,
            dim,
            rows: vec![SparseVec::new(); dim],
        }
    }

    pub fn identity(field: Field, dim: usize) -> LinOp {
        LinOp {
            field,
            dim,
            rows: (0..dim).map(|i| unit(field, i)).collect(),
        }
    }

    /// From a dense row-major matrix.
    pub fn from_dense(field: Field, entries: &[Vec<Scalar>]) -> LinOp {
        let dim = entries.len();
        let rows = entries
            .iter()
            .map(|r| {
                assert_eq!(r.len(), dim, "matrix must be square");
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, c)| (j, c.clone()))
                    .collect()
            })
            .collect();
        LinOp { field, dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.rows[i].get(&j).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn apply(&self, u: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, c) in u {
            add_scaled(&mut out, c, &self.rows[i]);
        }
        out
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &LinOp) -> LinOp {
        assert_eq!(self.dim, other.dim);
        LinOp {
            field: self.field,
            dim: self.dim,
            rows: self.rows.iter().map(|r| other.apply(r)).collect(),
        }
    }

    pub fn add(&self, other: &LinOp) -> LinOp {
        LinOp {
            field: self.field,
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| linalg::sum(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &LinOp) -> LinOp {
        LinOp {
            field: self.field,
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| linalg::difference(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> LinOp {
        LinOp {
            field: self.field,
            dim: self.dim,
            rows: self.rows.iter().map(|r| linalg::scaled(r, s)).collect(),
        }
    }

    /// Row-major flattening into a vector of length `dim²`.
    pub fn flatten(&self) -> SparseVec {
        let mut v = SparseVec::new();
        for (i, r) in self.rows.iter().enumerate() {
            for (&j, c) in r {
                v.insert(i * self.dim + j, c.clone());
            }
        }
        v
    }

    pub fn unflatten(field: Field, dim: usize, v: &SparseVec) -> LinOp {
        let mut rows = vec![SparseVec::new(); dim];
        for (&k, c) in v {
            rows[k / dim].insert(k % dim, c.clone());
        }
        LinOp { field, dim, rows }
    }

    /// Span of the images of all basis vectors.
    pub fn image_rows(&self) -> &[SparseVec] {
        &self.rows
    }
}

impl fmt::Display for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Subspace of an algebra, stored in reduced row-echelon form so that equal
/// subspaces compare equal.
#[derive(Clone, Debug)]
pub struct Subspace {
    algebra: u64,
    echelon: Echelon,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn algebra_id(&self) -> u64 {
        self.algebra
    }

    pub fn basis(&self) -> Vec<Element> {
        self.echelon
            .rows()
            .into_iter()
            .map(|coeffs| Element {
                algebra: self.algebra,
                coeffs,
            })
            .collect()
    }

    pub fn rows(&self) -> Vec<SparseVec> {
        self.echelon.rows()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon.pivot_columns()
    }

    pub fn contains(&self, u: &Element) -> bool {
        u.algebra == self.algebra && self.echelon.contains(&u.coeffs)
    }

    pub(crate) fn reduce_vec(&self, v: &SparseVec) -> SparseVec {
        self.echelon.reduce(v).remainder
    }

    pub fn insert(&mut self, u: &Element) -> bool {
        assert_eq!(u.algebra, self.algebra, "element of a different algebra");
        self.echelon.insert(&u.coeffs)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.algebra == other.algebra
            && self.echelon.rows().iter().all(|r| other.echelon.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.algebra, other.algebra);
        let mut out = self.clone();
        for r in other.echelon.rows() {
            out.echelon.insert(&r);
        }
        out
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.echelon.rows() == other.echelon.rows()
    }
}

/// `A / I` together with the projection `A → A/I`.
#[derive(Clone, Debug)]
pub struct Quotient {
    source: u64,
    pub algebra: Algebra,
    ideal: Subspace,
    position: HashMap<usize, usize>,
}

impl Quotient {
    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn project(&self, u: &Element) -> Result<Element> {
        if u.algebra != self.source {
            return Err(Error::MixedAlgebras);
        }
        Ok(self.algebra.wrap(self.project_vec(&u.coeffs)))
    }

    pub(crate) fn project_vec(&self, v: &SparseVec) -> SparseVec {
        self.ideal
            .reduce_vec(v)
            .into_iter()
            .map(|(k, c)| (self.position[&k], c))
            .collect()
    }
}

/// A subalgebra presented as an algebra on its echelon basis.
#[derive(Clone, Debug)]
pub struct Restriction {
    source: u64,
    pub algebra: Algebra,
    sub: Subspace,
    rows: Vec<SparseVec>,
}

impl Restriction {
    pub fn subspace(&self) -> &Subspace {
        &self.sub
    }

    /// Coordinates of an ambient element lying in the subalgebra.
    pub fn pull(&self, u: &Element) -> Result<Element> {
        if u.algebra != self.source {
            return Err(Error::MixedAlgebras);
        }
        let coords = self
            .sub
            .echelon
            .coordinates(&u.coeffs)
            .ok_or_else(|| Error::Spec("element lies outside the subalgebra".into()))?;
        let v = coords
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(self.algebra.wrap(v))
    }

    pub fn push(&self, s: &Element) -> Element {
        let mut v = SparseVec::new();
        for (&k, c) in s.coeffs() {
            add_scaled(&mut v, c, &self.rows[k]);
        }
        Element {
            algebra: self.source,
            coeffs: v,
        }
    }
}
