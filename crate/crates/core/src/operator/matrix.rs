//! Associative algebras of operators on a concrete algebra, recognition of
//! full matrix algebras, and Hall's identity on explicit matrices.

use rand::Rng;

use crate::algebra::{Algebra, Element, LinOp};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::scalar::{Field, Scalar};

/// Span of a set of operators closed under composition.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    field: Field,
    ambient: usize,
    basis: Vec<LinOp>,
    echelon: Echelon,
    /// Number of generators the closure started from (before deduplication).
    pub generator_count: usize,
    /// Number of closure rounds until the span stabilised.
    pub rounds: usize,
}

impl MatrixAlgebra {
    /// Closes the span of `gens` under products. Every product of generators
    /// is reached by repeatedly multiplying new basis elements on the right by
    /// a generator, so the loop stops once a round adds nothing.
    pub fn generated_by(field: Field, ambient: usize, gens: &[LinOp]) -> Result<MatrixAlgebra> {
        let mut ma = MatrixAlgebra {
            field,
            ambient,
            basis: Vec::new(),
            echelon: Echelon::new(field, ambient * ambient),
            generator_count: gens.len(),
            rounds: 0,
        };
        for g in gens {
            ma.try_insert(g);
        }
        let multipliers = ma.basis.clone();
        let mut frontier = ma.basis.clone();
        while !frontier.is_empty() {
            ma.rounds += 1;
            if ma.rounds > ambient * ambient + 1 {
                return Err(Error::ClosureDiverged);
            }
            let mut next = Vec::new();
            for a in &frontier {
                for g in &multipliers {
                    let p = a.then(g);
                    if ma.try_insert(&p) {
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        Ok(ma)
    }

    fn try_insert(&mut self, op: &LinOp) -> bool {
        if op.is_zero() || !self.echelon.insert(&op.flatten()) {
            return false;
        }
        self.basis.push(op.clone());
        true
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LinOp] {
        &self.basis
    }

    pub fn contains(&self, op: &LinOp) -> bool {
        self.echelon.contains(&op.flatten())
    }

    /// Sum of the images of all elements.
    pub fn image(&self) -> Echelon {
        let mut e = Echelon::new(self.field, self.ambient);
        for op in &self.basis {
            for r in op.image_rows() {
                e.insert(r);
            }
        }
        e
    }
}

/// `E₀(A)`: the algebra generated by all `V_{eᵢ,eⱼ}`.
pub fn e0_algebra(alg: &Algebra) -> Result<MatrixAlgebra> {
    operator_algebra(alg, &alg.basis_elements())
}

/// The algebra generated by `V_{x,y}` for `x, y` in the span of `elements`.
pub fn operator_algebra(alg: &Algebra, elements: &[Element]) -> Result<MatrixAlgebra> {
    let mut gens = Vec::new();
    for x in elements {
        for y in elements {
            gens.push(alg.v_op(x, y)?);
        }
    }
    MatrixAlgebra::generated_by(alg.field(), alg.dim(), &gens)
}

/// A system of matrix units `E_ij` (`w_i E_ij = w_j`, `E_ij E_kl = δ_jk E_il`)
/// inside a matrix algebra, together with the module `W` they act on.
#[derive(Clone, Debug)]
pub struct MatrixUnits {
    /// Basis `w_1 … w_n` of the sum of all images.
    pub module: Vec<SparseVec>,
    /// `units[i][j] = E_ij`.
    pub units: Vec<Vec<LinOp>>,
}

impl MatrixUnits {
    pub fn n(&self) -> usize {
        self.module.len()
    }

    /// Rechecks the multiplication table of the units.
    pub fn verify(&self) -> bool {
        let n = self.n();
        let Some(first) = self.units.first().and_then(|r| r.first()) else {
            return n == 0;
        };
        let zero = LinOp::zero(first.field(), first.dim());
        for i in 0..n {
            for j in 0..n {
                if self.units[i][j].apply(&self.module[i]) != self.module[j] {
                    return false;
                }
                for k in 0..n {
                    for l in 0..n {
                        let prod = self.units[i][j].then(&self.units[k][l]);
                        let expected = if j == k { &self.units[i][l] } else { &zero };
                        if &prod != expected {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Recognises `ma ≅ M_n(𝔽)` acting on the sum `W` of its images: requires
/// `dim W = n`, `dim ma = n²`, and restriction to `W` injective (hence onto
/// `End W`). Returns matrix units on success. An algebra isomorphic to
/// `M_n` that acts on several copies of its simple module is not recognised.
pub fn matrix_units(ma: &MatrixAlgebra, n: usize) -> Option<MatrixUnits> {
    if ma.dim() != n * n {
        return None;
    }
    let image = ma.image();
    if image.rank() != n {
        return None;
    }
    let module = image.rows();
    let field = ma.field();
    let mut restricted = Echelon::tracked(field, n * n);
    for op in ma.basis() {
        let mut flat = SparseVec::new();
        for (i, w) in module.iter().enumerate() {
            let coords = image.coordinates(&op.apply(w))?;
            for (j, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    flat.insert(i * n + j, c);
                }
            }
        }
        restricted.insert(&flat);
    }
    if restricted.rank() != n * n {
        return None;
    }
    let mut units = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let mut target = SparseVec::new();
            target.insert(i * n + j, field.one());
            let combo = restricted.express(&target)?;
            let mut op = LinOp::zero(field, ma.ambient_dim());
            for (k, c) in combo {
                op = op.add(&ma.basis()[k].scale(&c));
            }
            row.push(op);
        }
        units.push(row);
    }
    let units = MatrixUnits { module, units };
    units.verify().then_some(units)
}

pub fn is_full_matrix_algebra(ma: &MatrixAlgebra, n: usize) -> bool {
    matrix_units(ma, n).is_some()
}

/// `[[a,b]∘[c,d],e]` for explicit operators, composing left to right.
pub fn hall_value(f: [&LinOp; 5]) -> LinOp {
    let comm = |x: &LinOp, y: &LinOp| x.then(y).sub(&y.then(x));
    let circle = |x: &LinOp, y: &LinOp| x.then(y).add(&y.then(x));
    comm(&circle(&comm(f[0], f[1]), &comm(f[2], f[3])), f[4])
}

pub fn random_matrix<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> LinOp {
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|_| (0..n).map(|_| field.random_small(rng)).collect())
        .collect();
    LinOp::from_dense(field, &rows)
}

/// Random search for five `n×n` matrices on which Hall's identity fails.
pub fn find_hall_violation<R: Rng + ?Sized>(
    field: Field,
    n: usize,
    trials: usize,
    rng: &mut R,
) -> Option<[LinOp; 5]> {
    for _ in 0..trials {
        let f: [LinOp; 5] = std::array::from_fn(|_| random_matrix(field, n, rng));
        if !hall_value([&f[0], &f[1], &f[2], &f[3], &f[4]]).is_zero() {
            return Some(f);
        }
    }
    None
}

/// Whether `[[a,b]∘[c,d],e] = 0` for all `a, …, e` in `ma`. The expression
/// is multilinear, so it suffices that `[k∘k', x] = 0` for `k, k'` in a basis
/// of the span of commutators and `x` in a basis of `ma`. Returns a failing
/// `(k∘k', x)` pair otherwise.
pub fn hall_identity_holds(ma: &MatrixAlgebra) -> std::result::Result<(), (LinOp, LinOp)> {
    let n = ma.ambient_dim();
    let field = ma.field();
    let mut comm = Echelon::new(field, n * n);
    let mut comms = Vec::new();
    let basis = ma.basis();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            let c = a.then(b).sub(&b.then(a));
            if !c.is_zero() && comm.insert(&c.flatten()) {
                comms.push(c);
            }
        }
    }
    for (i, k) in comms.iter().enumerate() {
        for l in &comms[i..] {
            let j = k.then(l).add(&l.then(k));
            for x in basis {
                if !j.then(x).sub(&x.then(&j)).is_zero() {
                    return Err((j, x.clone()));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn closure_of_matrix_units_is_everything() {
        let q = Field::Rational;
        let e12 = LinOp::from_dense(q, &[vec![q.zero(), q.one()], vec![q.zero(), q.zero()]]);
        let e21 = LinOp::from_dense(q, &[vec![q.zero(), q.zero()], vec![q.one(), q.zero()]]);
        let ma = MatrixAlgebra::generated_by(q, 2, &[e12, e21]).unwrap();
        assert_eq!(ma.dim(), 4);
        let units = matrix_units(&ma, 2).unwrap();
        assert!(units.verify());
        assert!(hall_identity_holds(&ma).is_ok());
    }

    #[test]
    fn hall_fails_for_three_by_three() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        assert!(find_hall_violation(Field::Rational, 3, 20, &mut rng).is_some());
        let full = MatrixAlgebra::generated_by(
            Field::Rational,
            3,
            &(0..9)
                .map(|k| {
                    let mut v = SparseVec::new();
                    v.insert(k, Field::Rational.one());
                    LinOp::unflatten(Field::Rational, 3, &v)
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(hall_identity_holds(&full).is_err());
    }
}
