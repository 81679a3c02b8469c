mod common;

use std::collections::BTreeMap;

use common::{enumerate_words, FreeQuotient};
use proptest::prelude::*;
use rsym_core::free::{
    decompose, delta, full_linearization, independence_certificate, multilinear_basis, normal_form,
    normal_form_of, rk_tag, substitute, FreeElement, NormalWord, RkTag, Term, TermSum,
    DEFAULT_DEGREE_CAP,
};
use rsym_core::identity::{evaluate, evaluate_terms, Assignment};
use rsym_core::parse::parse_terms;
use rsym_core::pn::Pn;
use rsym_core::{Error, Field};

const Q: Field = Field::Rational;

fn nf(text: &str) -> FreeElement {
    normal_form(&parse_terms(Q, text).unwrap(), DEFAULT_DEGREE_CAP).unwrap()
}

fn word_terms(f: &FreeElement) -> Vec<(i64, Term)> {
    f.terms()
        .map(|(w, c)| (c.to_string().parse::<i64>().expect("integral"), w.to_term()))
        .collect()
}

fn normal_form_matches_quotient(field: Field, multisets: &[Vec<u32>]) {
    let mut oracle = FreeQuotient::new(field);
    for m in multisets {
        let words = enumerate_words(m);
        assert_eq!(
            oracle.quotient_dim(m),
            words.len(),
            "component {m:?} over {field}"
        );
        for t in oracle.trees(m) {
            let n = normal_form_of(field, &t);
            assert!(n.terms().all(|(w, _)| words.contains(w)));
            // t - nf(t) lies in the ideal of consequences
            let mut diff = vec![(1i64, t.clone())];
            for (c, w) in word_terms(&normal_form_of(Field::Rational, &t)) {
                diff.push((-c, w));
            }
            assert!(oracle.in_ideal(m, &diff), "{t} over {field}");
        }
    }
}

#[test]
fn normal_words_are_a_basis_of_small_components() {
    let components: Vec<Vec<u32>> = vec![
        vec![1],
        vec![1, 2],
        vec![1, 1],
        vec![1, 2, 3],
        vec![1, 1, 2],
        vec![1, 2, 2],
        vec![1, 1, 1],
        vec![1, 2, 3, 4],
        vec![1, 1, 2, 3],
        vec![1, 1, 2, 2],
        vec![1, 1, 1, 2],
        vec![1, 1, 1, 1],
    ];
    for field in [Field::Rational, Field::Prime(3)] {
        normal_form_matches_quotient(field, &components);
    }
}

#[test]
fn normal_words_are_a_basis_in_degree_five() {
    normal_form_matches_quotient(Field::Rational, &[vec![1, 2, 3, 4, 5], vec![1, 1, 2, 3, 4]]);
}

#[test]
fn characteristic_two_components() {
    let mut oracle = FreeQuotient::new(Field::Prime(2));
    for m in [vec![1, 1, 1], vec![1, 1, 2], vec![1, 1, 2, 2], vec![1, 2, 3, 4]] {
        let words = enumerate_words(&m);
        let dim = oracle.quotient_dim(&m);
        assert_eq!(dim, words.len(), "{m:?}");
        for t in oracle.trees(&m) {
            let mut diff = vec![(1i64, t.clone())];
            for (c, w) in word_terms(&normal_form_of(Field::Rational, &t)) {
                diff.push((-c, w));
            }
            assert!(oracle.in_ideal(&m, &diff), "{t}");
        }
    }
}

#[test]
fn multilinear_basis_matches_brute_force() {
    for m in 1..=5u32 {
        let vars: Vec<u32> = (1..=m).collect();
        assert_eq!(multilinear_basis(m as usize), enumerate_words(&vars));
    }
    assert_eq!(multilinear_basis(3).len(), 6);
    assert_eq!(multilinear_basis(4).len(), 18);
}

#[test]
fn independence_certificates() {
    for (m, rank) in [(1, 1), (2, 2), (3, 6), (4, 18), (5, 60)] {
        let cert = independence_certificate(m, Q);
        assert_eq!(cert.rank, rank, "m = {m}");
        assert!(cert.is_valid());
    }
}

#[test]
fn normal_form_examples() {
    assert!(nf("(x1 x2) x3 + (x3 x2) x1").is_zero());
    assert_eq!(nf("x3 (x1 x2)").to_string(), "x1 R[x2] L[x3]");
    assert!(nf("((x1 x2) x3) x4").is_zero());
    assert_eq!(nf("x2 x1").to_string(), "x1 L[x2]");
    assert_eq!(nf("x1 x1").to_string(), "x1 L[x1]");
    // the square of a variable is not killed by anything
    assert_eq!(nf("x2 (x1 x1)").to_string(), "x1 R[x1] L[x2]");
}

#[test]
fn degree_cap() {
    let f = parse_terms(Q, "x1 x2 x3 x4 x5").unwrap();
    assert_eq!(
        normal_form(&f, 4).unwrap_err(),
        Error::DegreeCapExceeded { degree: 5, cap: 4 }
    );
}

#[test]
fn delta_examples() {
    let y = FreeElement::var(Q, 7);
    let f = nf("x1 x2");
    assert_eq!(delta(&f, 1, 1, &y), nf("x7 x2"));
    assert!(delta(&nf("x2 x3"), 1, 1, &y).is_zero());
    // second-order part of (x1 x2) x1 in x1 is (y x2) y = 0
    assert!(delta(&nf("(x1 x2) x1"), 1, 2, &y).is_zero());
    // delta at level 0 is the identity
    let g = nf("x3 (x1 x2) + x1 V[x2,x3]");
    assert_eq!(delta(&g, 1, 0, &y), g);
}

#[test]
fn linearization_examples() {
    // (x1 x2) x1 is zero in the free algebra, so linearize the raw tree
    // through its normal form of the separate words.
    let (g, fresh) = full_linearization(&nf("x1 x2"), 1);
    assert_eq!(fresh, [3]);
    assert_eq!(g, nf("x3 x2"));
    let f = nf("x2 (x1 x1)");
    let (g, fresh) = full_linearization(&f, 1);
    assert_eq!(fresh, [3, 4]);
    assert_eq!(g, nf("x2 (x3 x4) + x2 (x4 x3)"));
}

#[test]
fn decompose_examples() {
    let f = nf("x1 R[x2] V[x3,x4] + x1 V[x2,x3] L[x4] + x2 x1 + x1 V[x2,x3] + x1 R[x2] V[x3,x4] L[x5]");
    let d = decompose(&f);
    assert_eq!(d.f2, nf("x1 R[x2] V[x3,x4]"));
    assert_eq!(d.f1, nf("x1 V[x2,x3] L[x4]"));
    assert_eq!(d.f0, nf("x1 V[x2,x3]"));
    assert_eq!(d.f3, nf("x1 R[x2] V[x3,x4] L[x5]"));
    assert_eq!(d.low, nf("x2 x1"));
    assert_eq!(d.total(), f);
}

#[test]
fn evaluation_examples() {
    let p = Pn::new(3, Q).unwrap();
    let alg = p.algebra();
    let w = NormalWord::new(1, Some(2), vec![(3, 4)], None).unwrap();
    let mut asg = Assignment::new();
    asg.insert(1, p.d(1, 2));
    asg.insert(2, -&p.b(1, 2));
    asg.insert(3, p.a(2, 3));
    asg.insert(4, -&p.b(2, 3));
    let value = evaluate(alg, &FreeElement::word(Q, w.clone()), &asg).unwrap();
    assert_eq!(value, p.c(3));
    asg.insert(5, p.a(3, 3));
    let with_l = NormalWord::new(1, Some(2), vec![(3, 4)], Some(5)).unwrap();
    assert_eq!(evaluate(alg, &FreeElement::word(Q, with_l), &asg).unwrap(), p.d(3, 3));
    let zero: Assignment = (1..=4).map(|v| (v, alg.zero())).collect();
    assert!(evaluate(alg, &FreeElement::word(Q, w), &zero).unwrap().is_zero());
}

#[test]
fn evaluation_refuses_algebras_outside_the_variety() {
    let a = rsym_core::Algebra::from_named(Q, &["e"], &[("e", "e", &[(1, "e")])]).unwrap();
    let mut asg = Assignment::new();
    asg.insert(1, a.basis(0));
    assert_eq!(
        evaluate(&a, &FreeElement::var(Q, 1), &asg).unwrap_err(),
        Error::AlgebraNotInVariety
    );
}

fn arb_term(max_var: u32, depth: u32) -> impl Strategy<Value = Term> {
    let leaf = (1..=max_var).prop_map(Term::var);
    leaf.prop_recursive(depth, 8, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Term::mul(a, b))
    })
}

fn arb_small_term() -> impl Strategy<Value = Term> {
    arb_term(4, 4).prop_filter("degree at most 8", |t| t.degree() <= 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent(t in arb_small_term()) {
        let once = normal_form_of(Q, &t);
        let twice = normal_form(&once.to_terms(), DEFAULT_DEGREE_CAP).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn normal_form_is_sound_in_p2(t in arb_term(3, 3).prop_filter("deg", |t| t.degree() <= 6), seed in any::<u64>()) {
        use rand::SeedableRng;
        let p = Pn::new(2, Field::Prime(3)).unwrap();
        let alg = p.algebra();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let asg: Assignment = (1..=3)
            .map(|v| {
                let coeffs = (0..alg.dim()).map(|k| (k, alg.field().random_small(&mut rng))).filter(|(_, c)| !c.is_zero()).collect();
                (v, alg.element(coeffs).unwrap())
            })
            .collect();
        let f = TermSum::from_term(alg.field(), t.clone());
        let n = normal_form_of(alg.field(), &t);
        prop_assert_eq!(evaluate_terms(alg, &f, &asg).unwrap(), evaluate(alg, &n, &asg).unwrap());
    }

    #[test]
    fn delta_is_linear(a in arb_small_term(), b in arb_small_term(), c in -3i64..=3) {
        let y = FreeElement::var(Q, 9);
        let fa = normal_form_of(Q, &a);
        let fb = normal_form_of(Q, &b);
        let s = Q.from_i64(c);
        let combined = fa.scale(&s).add(&fb);
        for k in 0..=2 {
            let lhs = delta(&combined, 1, k, &y);
            let rhs = delta(&fa, 1, k, &y).scale(&s).add(&delta(&fb, 1, k, &y));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn delta_product_rule(a in arb_small_term(), b in arb_small_term()) {
        let y = normal_form_of(Q, &Term::mul(Term::var(8), Term::var(9)));
        let fa = normal_form_of(Q, &a);
        let fb = normal_form_of(Q, &b);
        let product = normal_form_of(Q, &Term::mul(a, b));
        for k in 0..=2usize {
            let mut rhs = FreeElement::zero(Q);
            for r in 0..=k {
                rhs = rhs.add(&delta(&fa, 1, r, &y).mul(&delta(&fb, 1, k - r, &y)));
            }
            prop_assert_eq!(delta(&product, 1, k, &y), rhs);
        }
    }

    #[test]
    fn linearization_specializes_back(t in arb_term(3, 3).prop_filter("deg", |t| t.degree() <= 6)) {
        let f = normal_form_of(Q, &t);
        let k = f.degree_in(1);
        prop_assume!(k >= 1);
        let top = f.filter(|w| w.degree_in(1) == k);
        let (g, fresh) = full_linearization(&f, 1);
        let map: BTreeMap<u32, FreeElement> = fresh.iter().map(|&y| (y, FreeElement::var(Q, 1))).collect();
        let back = substitute(&g, &map);
        let factorial: i64 = (1..=k as i64).product();
        prop_assert_eq!(back, top.scale(&Q.from_i64(factorial)));
    }

    #[test]
    fn decompose_is_a_direct_split(t in arb_small_term(), u in arb_small_term()) {
        let f = normal_form_of(Q, &t).add(&normal_form_of(Q, &u).scale(&Q.from_i64(-2)));
        let d = decompose(&f);
        prop_assert_eq!(d.total(), f.clone());
        for tag in [RkTag::R0, RkTag::R1, RkTag::R2, RkTag::R3, RkTag::LowDegree] {
            prop_assert!(d.component(tag).terms().all(|(w, _)| rk_tag(w) == tag));
        }
    }
}

/// Multiplying an R1/R3 combination by a new variable lands in R0 + R2, and
/// applying Δ(x_{m+1} x_{m+2}) to an R2 combination lands in R0.
#[test]
fn shape_claims_for_the_reduction() {
    for m in 3..=6usize {
        let m32 = m as u32;
        for w in multilinear_basis(m) {
            let f = FreeElement::word(Q, w.clone());
            match rk_tag(&w) {
                RkTag::R1 | RkTag::R3 => {
                    let g = f.mul(&FreeElement::var(Q, m32 + 1));
                    assert!(g.terms().all(|(u, _)| matches!(rk_tag(u), RkTag::R0 | RkTag::R2)), "{w}");
                }
                RkTag::R2 => {
                    let y = normal_form_of(Q, &Term::mul(Term::var(m32 + 1), Term::var(m32 + 2)));
                    for i in 1..=m32 {
                        let g = delta(&f, i, 1, &y);
                        assert!(g.terms().all(|(u, _)| rk_tag(u) == RkTag::R0), "{w} at x{i}");
                    }
                }
                _ => {}
            }
        }
    }
}
