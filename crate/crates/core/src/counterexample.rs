//! A finite algebra `B = L/N′` separating the operator identities of `P₂`
//! that depend on few variables from all of them.
//!
//! `H′ = 𝔽[h₁…h_n]/(h_i²)` stands in for the free commutative associative
//! unital algebra on `h₁ … h_n`: every monomial reached below is squarefree.
//! `L` is the subalgebra of `H′ ⊗ P₃` generated by
//!
//! ```text
//! 1⊗c1, 1⊗a11, 1⊗b11, 1⊗a12, 1⊗b12, h_i⊗a22 (i = 1…n), 1⊗b22, 1⊗a23, 1⊗b23
//! ```
//!
//! and `N′ = W′ ⊗ c₃` where `W′` spans the monomials other than
//! `v = h₁⋯h_n`. Hall's identity holds in `E₀(P₂)`, but a Hall element `S`
//! with `(1⊗c₁)S = v⊗c₃ ≢ 0` exists on `B`; on subalgebras generated by at
//! most `n + 5` of the generators no such witness exists.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element, LinOp, Quotient, Restriction, Subspace};
use crate::error::{Error, Result};
use crate::identity::{check_variety, Assignment};
use crate::operator::{
    apply_operator, eval_operator, hall_element, hall_identity_holds, is_v_identity, operator_algebra,
    vanishes_on_subspace, OperatorElement,
};
use crate::pn::Pn;
use crate::report::{Check, Report};
use crate::scalar::Field;

/// `𝔽[h₁…h_n]/(h_i²)`, basis the squarefree monomials indexed by bitmask.
#[derive(Clone, Debug)]
pub struct SquarefreeAlgebra {
    n: usize,
    alg: Algebra,
}

impl SquarefreeAlgebra {
    pub fn new(n: usize, field: Field) -> Result<SquarefreeAlgebra> {
        if n == 0 || n > 16 {
            return Err(Error::InvalidN(n));
        }
        let size = 1usize << n;
        let names = (0..size).map(|m| monomial_name(m)).collect();
        let mut entries = Vec::new();
        for a in 0..size {
            for b in 0..size {
                if a & b == 0 {
                    entries.push((a, b, a | b, field.one()));
                }
            }
        }
        Ok(SquarefreeAlgebra {
            n,
            alg: Algebra::new(field, names, entries)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    /// Bitmask of `v = h₁⋯h_n`.
    pub fn top(&self) -> usize {
        (1 << self.n) - 1
    }
}

fn monomial_name(mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..usize::BITS as usize)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| format!("h{}", i + 1))
        .collect()
}

/// The algebras `A = H′⊗P₃ ⊇ L ⊇ N ⊇ N′` and `B = L/N′`.
#[derive(Debug)]
pub struct BConstruction {
    pub n: usize,
    pub h: SquarefreeAlgebra,
    pub p3: Pn,
    pub ambient: Algebra,
    /// Generators of `L` in ambient coordinates, in the order listed above.
    pub generators: Vec<Element>,
    pub l: Subspace,
    /// `H′ ⊗ c₃`.
    pub big_n: Subspace,
    /// `W′ ⊗ c₃`.
    pub n_prime: Subspace,
    restriction: Restriction,
    quotient: Quotient,
    /// Images `q₁ … q_{n+8}` of the generators in `B`.
    pub images: Vec<Element>,
}

impl BConstruction {
    pub fn build(n: usize, field: Field) -> Result<BConstruction> {
        let h = SquarefreeAlgebra::new(n, field)?;
        let p3 = Pn::new(3, field)?;
        let ambient = Algebra::tensor(h.algebra(), p3.algebra())?;
        let t = |mask: usize, name: &str| -> Result<Element> {
            ambient.basis_named(&format!("{}.{name}", monomial_name(mask)))
        };
        let mut generators = vec![t(0, "c1")?, t(0, "a11")?, t(0, "b11")?, t(0, "a12")?, t(0, "b12")?];
        for i in 0..n {
            generators.push(t(1 << i, "a22")?);
        }
        generators.extend([t(0, "b22")?, t(0, "a23")?, t(0, "b23")?]);
        let l = ambient.subalgebra(&generators)?;
        let masks = 0..(1usize << n);
        let big_n = ambient.span(&masks.clone().map(|m| t(m, "c3")).collect::<Result<Vec<_>>>()?)?;
        let n_prime = ambient.span(
            &masks
                .filter(|&m| m != h.top())
                .map(|m| t(m, "c3"))
                .collect::<Result<Vec<_>>>()?,
        )?;
        ambient.check_ideal_of(&n_prime, &l)?;
        if !big_n.is_subspace_of(&l) {
            return Err(Error::Spec("H'⊗c3 is not contained in L".into()));
        }
        let restriction = ambient.restrict(&l)?;
        let pulled: Vec<Element> = n_prime
            .basis()
            .iter()
            .map(|x| restriction.pull(x))
            .collect::<Result<_>>()?;
        let ideal = restriction.algebra.span(&pulled)?;
        let quotient = restriction.algebra.quotient(&ideal)?;
        let mut c = BConstruction {
            n,
            h,
            p3,
            ambient,
            generators,
            l,
            big_n,
            n_prime,
            restriction,
            quotient,
            images: Vec::new(),
        };
        c.images = c.generators.iter().map(|g| c.to_b(g)).collect::<Result<_>>()?;
        Ok(c)
    }

    pub fn field(&self) -> Field {
        self.ambient.field()
    }

    /// `s = n + 5`: the largest generator subsets covered by the second
    /// property.
    pub fn s(&self) -> usize {
        self.n + 5
    }

    pub fn b(&self) -> &Algebra {
        &self.quotient.algebra
    }

    /// `h ⊗ x` for a monomial bitmask and a basis name of `P₃`.
    pub fn ambient_element(&self, mask: usize, name: &str) -> Result<Element> {
        self.ambient.basis_named(&format!("{}.{name}", monomial_name(mask)))
    }

    /// `v ⊗ c₃`.
    pub fn top_c3(&self) -> Element {
        self.ambient_element(self.h.top(), "c3").expect("basis name")
    }

    /// Image in `B` of an element of `L`.
    pub fn to_b(&self, x: &Element) -> Result<Element> {
        self.quotient.project(&self.restriction.pull(x)?)
    }

    /// Structural facts about the construction, each as a check.
    pub fn invariants(&self) -> Report {
        let mut r = Report::new();
        r.push(Check::new("b.n-prime-in-n", "N' is contained in N", self.n_prime.is_subspace_of(&self.big_n)));
        r.push(Check::new("b.n-in-l", "N is contained in L", self.big_n.is_subspace_of(&self.l)));
        r.push(Check::new(
            "b.n-prime-ideal",
            "N' is an ideal of L",
            self.ambient.check_ideal_of(&self.n_prime, &self.l).is_ok(),
        ));
        let v3 = self.top_c3();
        r.push(Check::new("b.top-outside", "v(x)c3 is not in N'", !self.n_prime.contains(&v3)));
        let all_c2 = (0..1usize << self.n).all(|m| {
            self.ambient_element(m, "c2")
                .map(|x| self.l.contains(&x))
                .unwrap_or(false)
        });
        r.push(Check::new("b.c2-chain", "h(x)c2 lies in L for every monomial h", all_c2));
        r.push(Check::new(
            "b.dim",
            "dim B = dim L - dim N'",
            self.b().dim() == self.l.dim() - self.n_prime.dim(),
        ));
        let variety = check_variety(self.b());
        r.push(Check::new("b.variety", "B satisfies the defining identities", variety.passes()));
        r
    }

    /// Subalgebra of `B` generated by the images of the chosen generators.
    pub fn generated_subalgebra(&self, subset: &[usize]) -> Result<Subspace> {
        let gens = subset
            .iter()
            .map(|&i| {
                self.images.get(i).cloned().ok_or(Error::IndexOutOfRange {
                    index: i,
                    dim: self.images.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.b().subalgebra(&gens)
    }
}

/// The Hall element `[[f₁,f₂]∘[f₃,f₄],f₅]` used for the separating
/// witness, in `n + 7` variables:
///
/// ```text
/// f₁ = V[x1,x2] V[x3,x5] ⋯ V[x3,x_{n+3}],  f₂ = f₅ = V[x_{n+4},x_{n+5}],
/// f₃ = V[x3,x4],                          f₄ = V[x_{n+6},x_{n+7}].
/// ```
///
/// The assignment [`witness_assignment`] sends `x3 ↦ 1⊗b22` and
/// `x_{3+i} ↦ h_i⊗a22`, so `f₃` contributes the factor `h₁` that `f₁` omits.
pub fn witness_hall_element(n: usize, field: Field) -> OperatorElement {
    let n = n as u32;
    let v = |p, q| OperatorElement::generator(field, p, q);
    let mut f1 = v(1, 2);
    for i in 2..=n {
        f1 = f1.mul(&v(3, 3 + i));
    }
    let f2 = v(n + 4, n + 5);
    let f3 = v(3, 4);
    let f4 = v(n + 6, n + 7);
    hall_element([&f1, &f2, &f3, &f4, &f2])
}

/// The same pattern with all `n` factors `V[x3,x_{3+i}]` in `f₁` and
/// `f₃ = V[x3,x_{n+8}]`, where `x_{n+8} ↦ 1⊗a22`. That element does not lie
/// in `L`, so this form is only evaluated in the ambient algebra.
pub fn display_hall_factors(n: usize, field: Field) -> [OperatorElement; 5] {
    let n = n as u32;
    let v = |p, q| OperatorElement::generator(field, p, q);
    let mut f1 = v(1, 2);
    for i in 1..=n {
        f1 = f1.mul(&v(3, 3 + i));
    }
    let f2 = v(n + 4, n + 5);
    [f1, f2.clone(), v(3, n + 8), v(n + 6, n + 7), f2]
}

/// Variable assignment in the ambient algebra: `x1 = 1⊗b12, x2 = 1⊗a12,
/// x3 = 1⊗b22, x_{3+i} = h_i⊗a22, x_{n+4} = 1⊗b11, x_{n+5} = 1⊗a11,
/// x_{n+6} = 1⊗b23, x_{n+7} = 1⊗a23`, and `x_{n+8} = 1⊗a22` when
/// `with_unit_a22`.
pub fn witness_assignment(c: &BConstruction, with_unit_a22: bool) -> Result<Assignment> {
    let n = c.n as u32;
    let mut a = Assignment::new();
    a.insert(1, c.ambient_element(0, "b12")?);
    a.insert(2, c.ambient_element(0, "a12")?);
    a.insert(3, c.ambient_element(0, "b22")?);
    for i in 1..=n {
        a.insert(3 + i, c.ambient_element(1 << (i - 1), "a22")?);
    }
    a.insert(n + 4, c.ambient_element(0, "b11")?);
    a.insert(n + 5, c.ambient_element(0, "a11")?);
    a.insert(n + 6, c.ambient_element(0, "b23")?);
    a.insert(n + 7, c.ambient_element(0, "a23")?);
    if with_unit_a22 {
        a.insert(n + 8, c.ambient_element(0, "a22")?);
    }
    Ok(a)
}

fn same_op(id: &str, what: &str, lhs: &LinOp, rhs: &LinOp) -> Check {
    let ok = lhs == rhs;
    let check = Check::new(id, what, ok);
    if ok {
        check
    } else {
        check.with_detail("operators differ")
    }
}

/// Checks that Hall's identity separates `B` from `P₂`:
///
/// * the Hall elements used are V-identities of `P₂`;
/// * in `H′⊗P₃`, the factor products `f₁f₂ = 0`, `f₂f₁ = V_{1⊗b12, v⊗a12}`,
///   `f₃f₄ = V_{1⊗b23,1⊗a23}`, `f₄f₃ = 0`, and `S = V_{1⊗b12,v⊗a12}V_{1⊗b23,1⊗a23}`;
/// * in `B`, `q(1⊗c₁)·S = q(v⊗c₃) ≠ 0` for [`witness_hall_element`] under
///   the generator assignment.
pub fn verify_property1(c: &BConstruction) -> Result<Report> {
    let field = c.field();
    let n = c.n;
    let p2 = Pn::new(2, field)?;
    let mut r = Report::new();

    let s = witness_hall_element(n, field);
    r.push(Check::new("p1.s-in-t", "witness Hall element is a V-identity of P2", is_v_identity(p2.algebra(), &s)));
    let f = display_hall_factors(n, field);
    let display_s = hall_element([&f[0], &f[1], &f[2], &f[3], &f[4]]);
    r.push(Check::new(
        "p1.display-s-in-t",
        "Hall element with unit a22 factor is a V-identity of P2",
        is_v_identity(p2.algebra(), &display_s),
    ));

    // Products of the factors in the ambient algebra.
    let amb = &c.ambient;
    let asg = witness_assignment(c, true)?;
    let ev = |g: &OperatorElement| eval_operator(g, amb, &asg);
    let (f1, f2, f3, f4) = (ev(&f[0])?, ev(&f[1])?, ev(&f[2])?, ev(&f[3])?);
    let zero = LinOp::zero(field, amb.dim());
    let v_b12_va12 = amb.v_op(&c.ambient_element(0, "b12")?, &c.ambient_element(c.h.top(), "a12")?)?;
    let v_b23_a23 = amb.v_op(&c.ambient_element(0, "b23")?, &c.ambient_element(0, "a23")?)?;
    r.push(same_op("p1.f1f2", "f1 f2 = 0", &f1.then(&f2), &zero));
    r.push(same_op("p1.f2f1", "f2 f1 = V(1(x)b12, v(x)a12)", &f2.then(&f1), &v_b12_va12));
    r.push(same_op("p1.f3f4", "f3 f4 = V(1(x)b23, 1(x)a23)", &f3.then(&f4), &v_b23_a23));
    r.push(same_op("p1.f4f3", "f4 f3 = 0", &f4.then(&f3), &zero));
    let s_amb = ev(&display_s)?;
    r.push(same_op(
        "p1.s-value",
        "S = V(1(x)b12, v(x)a12) V(1(x)b23, 1(x)a23)",
        &s_amb,
        &v_b12_va12.then(&v_b23_a23),
    ));
    let c1 = c.ambient_element(0, "c1")?;
    let top = c.top_c3();
    r.push(Check::new("p1.ambient-witness", "(1(x)c1) S = v(x)c3", c1.apply(&s_amb) == top));

    // The separating value in B, with every variable sent into L.
    let internal = witness_assignment(c, false)?;
    let mut b_asg = Assignment::new();
    for (k, x) in &internal {
        b_asg.insert(*k, c.to_b(x)?);
    }
    let start = c.to_b(&c1)?;
    let value = c.b().element(apply_operator(c.b(), &s, &b_asg, start.coeffs())?)?;
    let expected = c.to_b(&top)?;
    let ok = value == expected && !value.is_zero();
    r.push(
        Check::new("p1.b-witness", "q(1(x)c1) S = q(v(x)c3) != 0 in B", ok)
            .with_detail(format!("value {}", c.b().format_element(&value))),
    );
    Ok(r)
}

/// Result of checking one generator subset against the second property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetCheck {
    pub subset: Vec<usize>,
    pub subalgebra_dim: usize,
    pub operator_algebra_dim: usize,
    /// Hall's identity holds for all arguments in the operator algebra
    /// generated by `V_{x,y}`, `x, y` in the subalgebra.
    pub hall_holds: bool,
}

fn check_subset(c: &BConstruction, subset: &[usize]) -> Result<()> {
    if subset.len() > c.s() {
        return Err(Error::SubsetTooLarge {
            size: subset.len(),
            max: c.s(),
        });
    }
    if let Some(&i) = subset.iter().find(|&&i| i >= c.images.len()) {
        return Err(Error::IndexOutOfRange {
            index: i,
            dim: c.images.len(),
        });
    }
    Ok(())
}

/// Exact check that every Hall element `[[f₁,f₂]∘[f₃,f₄],f₅]`, with `fᵢ`
/// arbitrary elements of `E₀` and variables ranging over the subalgebra
/// generated by `subset`, acts as zero on `B`. No size limit is applied so
/// that the full generator set can be examined too.
pub fn hall_on_generated_subalgebra(c: &BConstruction, subset: &[usize]) -> Result<SubsetCheck> {
    let sub = c.generated_subalgebra(subset)?;
    let ma = operator_algebra(c.b(), &sub.basis())?;
    Ok(SubsetCheck {
        subset: subset.to_vec(),
        subalgebra_dim: sub.dim(),
        operator_algebra_dim: ma.dim(),
        hall_holds: hall_identity_holds(&ma).is_ok(),
    })
}

/// Second property for one subset of at most `s = n + 5` generators and one
/// operator element `g`: `g` must be a V-identity of `P₂`, and `t·g(c…) = 0`
/// is checked for symbolic `t` (the whole operator matrix) and `trials`
/// random points of the generated subalgebra. With `trials = 0` the points
/// are symbolic as well.
pub fn spot_check_property2(
    c: &BConstruction,
    subset: &[usize],
    g: &OperatorElement,
    trials: usize,
) -> Result<bool> {
    check_subset(c, subset)?;
    let p2 = Pn::new(2, c.field())?;
    if !is_v_identity(p2.algebra(), g) {
        return Err(Error::GNotInT);
    }
    let sub = c.generated_subalgebra(subset)?;
    let b = c.b();
    if trials == 0 {
        return Ok(vanishes_on_subspace(b, &sub, g));
    }
    let basis = sub.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ subset.iter().fold(0u64, |h, &i| h * 31 + i as u64));
    for _ in 0..trials {
        let mut asg = Assignment::new();
        for var in g.variables() {
            let mut x = b.zero();
            for e in &basis {
                x = &x + &e.scale(&c.field().random_small(&mut rng));
            }
            asg.insert(var, x);
        }
        if !eval_operator(g, b, &asg)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All `k`-element subsets of `0..len`, in lexicographic order.
pub fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, k, &mut Vec::new(), &mut out);
    out
}
