//! The algebras `P_n` with basis `a_ij, b_ij, c_i, d_ij, e_ij` and products
//!
//! ```text
//! a_ij c_i = d_ij,   b_ij c_i = e_ij,
//! a_ij e_ij = e_ij a_ij = -b_ij d_ij = -d_ij b_ij = c_j.
//! ```

use crate::algebra::{Algebra, Element, Subspace};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::scalar::Field;

/// Largest `n` the command line builds without an explicit override.
pub const DEFAULT_MAX_N: usize = 6;

#[derive(Clone, Debug)]
pub struct Pn {
    n: usize,
    alg: Algebra,
    a_n: Subspace,
    d_n: Subspace,
    c_n: Subspace,
    cbar_n: Subspace,
}

fn pair_name(prefix: char, n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("{prefix}{i}{j}")
    } else {
        format!("{prefix}{i}_{j}")
    }
}

impl Pn {
    /// Builds `P_n` (dimension `4n² + n`); basis order is all `a`, all `b`,
    /// all `c`, all `d`, all `e`, each block in row-major `(i, j)` order.
    pub fn new(n: usize, field: Field) -> Result<Pn> {
        if n == 0 {
            return Err(Error::InvalidN(n));
        }
        let nn = n * n;
        let mut names = Vec::with_capacity(4 * nn + n);
        for prefix in ['a', 'b'] {
            for i in 1..=n {
                for j in 1..=n {
                    names.push(pair_name(prefix, n, i, j));
                }
            }
        }
        for i in 1..=n {
            names.push(format!("c{i}"));
        }
        for prefix in ['d', 'e'] {
            for i in 1..=n {
                for j in 1..=n {
                    names.push(pair_name(prefix, n, i, j));
                }
            }
        }
        let idx = Indexer { n };
        let one = field.one();
        let minus = field.from_i64(-1);
        let mut entries = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let (a, b, c_i, c_j) = (idx.a(i, j), idx.b(i, j), idx.c(i), idx.c(j));
                let (d, e) = (idx.d(i, j), idx.e(i, j));
                entries.push((a, c_i, d, one.clone()));
                entries.push((b, c_i, e, one.clone()));
                entries.push((a, e, c_j, one.clone()));
                entries.push((e, a, c_j, one.clone()));
                entries.push((b, d, c_j, minus.clone()));
                entries.push((d, b, c_j, minus.clone()));
            }
        }
        let alg = Algebra::new(field, names, entries)?;
        let span = |ids: Vec<usize>| {
            let els: Vec<Element> = ids.into_iter().map(|k| alg.basis(k)).collect();
            alg.span(&els).expect("same algebra")
        };
        let a_n = span((0..2 * nn).collect());
        let c_n = span((2 * nn..2 * nn + n).collect());
        let cbar_n = span((2 * nn + n..4 * nn + n).collect());
        let d_n = span((2 * nn..4 * nn + n).collect());
        Ok(Pn {
            n,
            alg,
            a_n,
            d_n,
            c_n,
            cbar_n,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn into_algebra(self) -> Algebra {
        self.alg
    }

    fn idx(&self) -> Indexer {
        Indexer { n: self.n }
    }

    /// `a_ij` (indices start at 1).
    pub fn a(&self, i: usize, j: usize) -> Element {
        self.alg.basis(self.idx().a(i, j))
    }

    pub fn b(&self, i: usize, j: usize) -> Element {
        self.alg.basis(self.idx().b(i, j))
    }

    pub fn c(&self, i: usize) -> Element {
        self.alg.basis(self.idx().c(i))
    }

    pub fn d(&self, i: usize, j: usize) -> Element {
        self.alg.basis(self.idx().d(i, j))
    }

    pub fn e(&self, i: usize, j: usize) -> Element {
        self.alg.basis(self.idx().e(i, j))
    }

    pub fn a_n(&self) -> &Subspace {
        &self.a_n
    }

    pub fn d_n(&self) -> &Subspace {
        &self.d_n
    }

    pub fn c_n(&self) -> &Subspace {
        &self.c_n
    }

    pub fn cbar_n(&self) -> &Subspace {
        &self.cbar_n
    }

    /// The subspace equations among `P_n`, `A_n`, `C_n`, `C̄_n`, `D_n`.
    pub fn verify_structure_relations(&self) -> Report {
        let alg = &self.alg;
        let p = alg.whole();
        let zero = alg.zero_subspace();
        let prod = |u: &Subspace, v: &Subspace| alg.product_span(u, v).expect("same algebra");
        let (a, c, cbar, d) = (&self.a_n, &self.c_n, &self.cbar_n, &self.d_n);
        let mut report = Report::new();
        let mut eq = |id: &str, what: &str, lhs: Subspace, rhs: &Subspace| {
            let ok = lhs == *rhs;
            let mut check = Check::new(id, what, ok);
            if !ok {
                check = check.with_detail(format!("dim {} vs {}", lhs.dim(), rhs.dim()));
            }
            report.push(check);
        };
        eq("pn.square", "P*P = D", prod(&p, &p), d);
        eq("pn.a-square", "A*A = 0", prod(a, a), &zero);
        eq("pn.d-square", "D*D = 0", prod(d, d), &zero);
        eq("pn.d-split", "C + Cbar = D", c.sum(cbar), d);
        eq("pn.dp", "D*P = C", prod(d, &p), c);
        eq("pn.pa", "P*A = C", prod(&p, a), c);
        eq("pn.pc", "P*C = Cbar", prod(&p, c), cbar);
        eq("pn.cp", "C*P = 0", prod(c, &p), &zero);
        eq("pn.pcbar", "P*Cbar = C", prod(&p, cbar), c);
        eq("pn.p-split", "A + D = P", a.sum(d), &p);
        let direct = c.dim() + cbar.dim() == d.dim() && a.dim() + d.dim() == p.dim();
        report.push(Check::new("pn.direct", "D = C (+) Cbar and P = A (+) D are direct", direct));
        let a_closed = prod(a, a).is_subspace_of(a);
        report.push(Check::new("pn.a-subalgebra", "A is a subalgebra", a_closed));
        let d_ideal = alg.check_ideal_of(d, &p).is_ok();
        report.push(Check::new("pn.d-ideal", "D is an ideal", d_ideal));
        report
    }

    /// `(A_n + C̄_n)V_{x,y} = 0` and `V_{d,y} = V_{y,d} = 0` for `d ∈ D_n`, on
    /// basis elements; plus the nonvanishing `c_i V_{b_ij, a_ij} = c_j`.
    pub fn verify_v_action(&self) -> Report {
        let alg = &self.alg;
        let dim = alg.dim();
        let killed = self.a_n.sum(&self.cbar_n);
        let d_basis: Vec<usize> = self.d_n.pivot_columns();
        let mut report = Report::new();

        let mut first_bad: Option<String> = None;
        'outer: for x in 0..dim {
            for y in 0..dim {
                let v = alg.v_op(&alg.basis(x), &alg.basis(y)).expect("same algebra");
                for u in killed.basis() {
                    if !u.apply(&v).is_zero() {
                        first_bad = Some(format!(
                            "{} V({}, {}) != 0",
                            alg.format_element(&u),
                            alg.name(x),
                            alg.name(y)
                        ));
                        break 'outer;
                    }
                }
            }
        }
        report.push(
            Check::new("pn.v-kills-a-cbar", "(A + Cbar) V(x,y) = 0", first_bad.is_none())
                .with_detail(first_bad.unwrap_or_default()),
        );

        let mut first_bad: Option<String> = None;
        'outer2: for &dk in &d_basis {
            for y in 0..dim {
                let (de, ye) = (alg.basis(dk), alg.basis(y));
                for (l, r) in [(&de, &ye), (&ye, &de)] {
                    if !alg.v_op(l, r).expect("same algebra").is_zero() {
                        first_bad = Some(format!(
                            "V({}, {}) != 0",
                            alg.format_element(l),
                            alg.format_element(r)
                        ));
                        break 'outer2;
                    }
                }
            }
        }
        report.push(
            Check::new("pn.v-d-vanishes", "V(d,y) = V(y,d) = 0 for d in D", first_bad.is_none())
                .with_detail(first_bad.unwrap_or_default()),
        );

        let mut ok = true;
        for i in 1..=self.n {
            for j in 1..=self.n {
                let v = alg.v_op(&self.b(i, j), &self.a(i, j)).expect("same algebra");
                ok &= self.c(i).apply(&v) == self.c(j);
            }
        }
        report.push(Check::new("pn.v-moves-c", "c_i V(b_ij, a_ij) = c_j", ok));
        report
    }

    /// `Ann_l P_n = C_n`.
    pub fn verify_left_annihilator(&self) -> bool {
        self.alg.left_annihilator() == self.c_n
    }
}

#[derive(Clone, Copy)]
struct Indexer {
    n: usize,
}

impl Indexer {
    fn a(self, i: usize, j: usize) -> usize {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        (i - 1) * self.n + (j - 1)
    }
    fn b(self, i: usize, j: usize) -> usize {
        self.n * self.n + self.a(i, j)
    }
    fn c(self, i: usize) -> usize {
        assert!((1..=self.n).contains(&i));
        2 * self.n * self.n + (i - 1)
    }
    fn d(self, i: usize, j: usize) -> usize {
        2 * self.n * self.n + self.n + self.a(i, j)
    }
    fn e(self, i: usize, j: usize) -> usize {
        3 * self.n * self.n + self.n + self.a(i, j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_names() {
        for (n, dim) in [(1, 5), (2, 18), (3, 39)] {
            assert_eq!(Pn::new(n, Field::Rational).unwrap().algebra().dim(), dim);
        }
        let p1 = Pn::new(1, Field::Rational).unwrap();
        assert_eq!(p1.algebra().names(), ["a11", "b11", "c1", "d11", "e11"]);
        assert!(matches!(Pn::new(0, Field::Rational), Err(Error::InvalidN(0))));
    }

    #[test]
    fn table_entries() {
        let p = Pn::new(2, Field::Rational).unwrap();
        let alg = p.algebra();
        assert_eq!(alg.mul(&p.a(1, 1), &p.c(1)).unwrap(), p.d(1, 1));
        assert_eq!(alg.mul(&p.d(1, 1), &p.b(1, 1)).unwrap(), -&p.c(1));
        assert!(alg.mul(&p.c(1), &p.a(1, 1)).unwrap().is_zero());
        assert!(alg.mul(&p.a(1, 2), &p.c(1)).unwrap() == p.d(1, 2));
        assert!(alg.mul(&p.a(1, 2), &p.c(2)).unwrap().is_zero());
    }
}
