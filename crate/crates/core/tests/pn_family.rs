use rsym_core::identity::{check_variety, is_identity};
use rsym_core::parse::parse_terms;
use rsym_core::pn::Pn;
use rsym_core::relations::{
    check_linearized_left_nil, check_operator_relations, check_right_nilpotency, check_right_symmetry,
};
use rsym_core::{Algebra, Field};

const FIELDS: [Field; 3] = [Field::Rational, Field::Prime(2), Field::Prime(3)];

#[test]
fn pn_lies_in_the_variety() {
    for field in FIELDS {
        for n in 1..=3 {
            let p = Pn::new(n, field).unwrap();
            let report = check_variety(p.algebra());
            assert!(report.passes(), "P_{n} over {field}:\n{report}");
        }
    }
}

#[test]
fn structure_relations_hold() {
    for n in 1..=3 {
        let p = Pn::new(n, Field::Rational).unwrap();
        let r = p.verify_structure_relations();
        assert!(r.passed(), "n = {n}\n{r}");
        let v = p.verify_v_action();
        assert!(v.passed(), "n = {n}\n{v}");
        assert!(p.verify_left_annihilator());
    }
}

#[test]
fn p1_c_is_moved_by_v() {
    let p = Pn::new(1, Field::Rational).unwrap();
    let alg = p.algebra();
    let v = alg.v_op(&p.b(1, 1), &p.a(1, 1)).unwrap();
    assert_eq!(p.c(1).apply(&v), p.c(1));
}

#[test]
fn p2_v_moves_c1_to_c2() {
    let p = Pn::new(2, Field::Rational).unwrap();
    let alg = p.algebra();
    let v = alg.v_op(&p.a(1, 2), &-&p.b(1, 2)).unwrap();
    assert_eq!(p.c(1).apply(&v), p.c(2));
}

#[test]
fn consequences_hold_in_p3() {
    for field in FIELDS {
        let p = Pn::new(3, field).unwrap();
        let alg = p.algebra();
        assert!(check_right_nilpotency(alg).passed());
        assert!(check_right_symmetry(alg).passed());
        assert!(check_linearized_left_nil(alg).passed());
        for c in check_operator_relations(alg) {
            assert!(c.passed(), "{c:?}");
        }
    }
}

#[test]
fn commutators_span_cbar_and_are_central() {
    let p = Pn::new(2, Field::Rational).unwrap();
    let alg = p.algebra();
    let mut comms = alg.zero_subspace();
    for x in alg.basis_elements() {
        for y in alg.basis_elements() {
            comms.insert(&alg.commutator(&x, &y).unwrap());
        }
    }
    assert_eq!(&comms, p.cbar_n());
    for u in p.cbar_n().basis() {
        for y in alg.basis_elements() {
            assert!(alg.commutator(&u, &y).unwrap().is_zero());
        }
    }
}

#[test]
fn associator_and_commutator_examples() {
    let p = Pn::new(2, Field::Rational).unwrap();
    let alg = p.algebra();
    let (a, b, c) = (p.a(1, 1), p.b(1, 1), p.c(1));
    let lhs = alg.associator(&a, &c, &b).unwrap();
    let rhs = alg.associator(&a, &b, &c).unwrap();
    assert!((&lhs - &rhs).is_zero());
    assert!(alg.commutator(&a, &p.e(1, 1)).unwrap().is_zero());
    assert!(alg.commutator(&a, &a).unwrap().is_zero());
}

#[test]
fn identity_examples_on_p2() {
    let p = Pn::new(2, Field::Rational).unwrap();
    let alg = p.algebra();
    let q = Field::Rational;
    assert!(is_identity(alg, &parse_terms(q, "(x1 x2) x1").unwrap()));
    assert!(is_identity(alg, &parse_terms(q, "[[x1,x2],x3]").unwrap()));
    assert!(!is_identity(alg, &parse_terms(q, "x1 x2").unwrap()));
}

#[test]
fn non_member_is_detected() {
    let a = Algebra::from_named(Field::Rational, &["e1"], &[("e1", "e1", &[(1, "e1")])]).unwrap();
    let report = check_variety(&a);
    assert!(!report.checks[1].holds);
    assert!(!check_right_nilpotency(&a).passed());
}

#[test]
fn quotient_by_square_has_zero_product() {
    let p = Pn::new(2, Field::Rational).unwrap();
    let alg = p.algebra();
    let q = alg.quotient(p.d_n()).unwrap();
    assert_eq!(q.algebra.dim(), 8);
    assert_eq!(q.algebra.structure_constants().count(), 0);
    for u in alg.basis_elements() {
        for v in alg.basis_elements() {
            let lhs = q.algebra.mul(&q.project(&u).unwrap(), &q.project(&v).unwrap()).unwrap();
            assert_eq!(lhs, q.project(&alg.mul(&u, &v).unwrap()).unwrap());
        }
    }
}

#[test]
fn closures_in_p2() {
    let p = Pn::new(2, Field::Rational).unwrap();
    let alg = p.algebra();
    let s = alg.subalgebra(&[p.a(1, 1), p.c(1)]).unwrap();
    assert_eq!(s, alg.span(&[p.a(1, 1), p.c(1), p.d(1, 1)]).unwrap());
    let i = alg.ideal(&[p.c(1)]).unwrap();
    assert!(i.contains(&p.d(1, 1)) && i.contains(&p.e(1, 1)));
    // closures are idempotent
    assert_eq!(alg.subalgebra(&s.basis()).unwrap(), s);
    assert_eq!(alg.ideal(&i.basis()).unwrap(), i);
}

#[test]
fn tensor_with_squarefree_lies_in_variety() {
    let p = Pn::new(3, Field::Rational).unwrap();
    let h = Algebra::from_named(
        Field::Rational,
        &["1", "h1"],
        &[("1", "1", &[(1, "1")]), ("1", "h1", &[(1, "h1")]), ("h1", "1", &[(1, "h1")])],
    )
    .unwrap();
    let t = Algebra::tensor(&h, p.algebra()).unwrap();
    assert_eq!(t.dim(), 78);
    assert!(check_variety(&t).passes());
}
