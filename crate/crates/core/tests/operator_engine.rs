use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rsym_core::free::{FreeElement, NormalWord, RkTag};
use rsym_core::identity::Assignment;
use rsym_core::operator::{
    check_certificate, e0_algebra, eval_operator, find_hall_violation, hall_element, hall_value,
    ideal_membership_expand, is_full_matrix_algebra, is_v_identity, matrix_units, random_matrix,
    reduce_to_operator_identities, reduction_bound, Membership, MembershipBounds, OperatorElement,
    OperatorWord,
};
use rsym_core::pn::Pn;
use rsym_core::{Algebra, Error, Field, LinOp};

const Q: Field = Field::Rational;

fn v(p: u32, q: u32) -> OperatorElement {
    OperatorElement::generator(Q, p, q)
}

fn generic_hall_over(field: Field) -> OperatorElement {
    let f: Vec<OperatorElement> = (0..5)
        .map(|i| OperatorElement::generator(field, 2 * i + 1, 2 * i + 2))
        .collect();
    hall_element([&f[0], &f[1], &f[2], &f[3], &f[4]])
}

fn generic_hall() -> OperatorElement {
    generic_hall_over(Q)
}

#[test]
fn evaluation_examples_in_p2() {
    let p = Pn::new(2, Q).unwrap();
    let alg = p.algebra();
    let mut asg = Assignment::new();
    asg.insert(1, p.b(1, 2));
    asg.insert(2, p.a(1, 2));
    let m = eval_operator(&v(1, 2), alg, &asg).unwrap();
    for (k, e) in alg.basis_elements().into_iter().enumerate() {
        let expected = if alg.name(k) == "c1" { p.c(2) } else { alg.zero() };
        assert_eq!(e.apply(&m), expected, "{}", alg.name(k));
    }
    asg.insert(2, p.b(1, 2));
    assert!(eval_operator(&v(1, 2), alg, &asg).unwrap().is_zero());
    assert_eq!(
        eval_operator(&v(1, 3), alg, &asg).unwrap_err(),
        Error::UnboundVariable(3)
    );
}

#[test]
fn same_argument_gives_zero_operator() {
    let p = Pn::new(2, Q).unwrap();
    let alg = p.algebra();
    for x in alg.basis_elements() {
        let s = &x + &p.c(1);
        assert!(alg.v_op(&s, &s).unwrap().is_zero());
    }
}

#[test]
fn products_compose_unit_actions() {
    let p = Pn::new(3, Q).unwrap();
    let alg = p.algebra();
    let mut asg = Assignment::new();
    asg.insert(1, p.b(1, 2));
    asg.insert(2, p.a(1, 2));
    asg.insert(3, p.b(2, 3));
    asg.insert(4, p.a(2, 3));
    let word = OperatorElement::product_of(Q, &[(1, 2), (3, 4)]);
    let m = eval_operator(&word, alg, &asg).unwrap();
    let left = eval_operator(&v(1, 2), alg, &asg).unwrap();
    let right = eval_operator(&v(3, 4), alg, &asg).unwrap();
    assert_eq!(m, left.then(&right));
    assert_eq!(p.c(1).apply(&m), p.c(3));
    assert!(p.c(2).apply(&m).is_zero());
}

#[test]
fn e0_of_pn_is_a_full_matrix_algebra() {
    for field in [Q, Field::Prime(2), Field::Prime(3)] {
        for n in 1..=3 {
            let p = Pn::new(n, field).unwrap();
            let e0 = e0_algebra(p.algebra()).unwrap();
            assert_eq!(e0.dim(), n * n, "n = {n} over {field}");
            let units = matrix_units(&e0, n).expect("matrix units");
            assert!(units.verify());
            // the units act on C_n and kill A_n + C̄_n
            let module = p.algebra().span(&(1..=n).map(|i| p.c(i)).collect::<Vec<_>>()).unwrap();
            for w in &units.module {
                assert!(module.contains(&p.algebra().element(w.clone()).unwrap()));
            }
            let killed = p.a_n().sum(p.cbar_n());
            for op in e0.basis() {
                for x in killed.basis() {
                    assert!(x.apply(op).is_zero());
                }
            }
        }
    }
    let e0 = e0_algebra(Pn::new(2, Q).unwrap().algebra()).unwrap();
    assert!(!is_full_matrix_algebra(&e0, 3));
    assert_eq!(e0_algebra(&Algebra::zero_algebra(Q, 3)).unwrap().dim(), 0);
}

#[test]
fn unit_from_b_and_a_moves_ci_to_cj() {
    let p = Pn::new(3, Q).unwrap();
    let alg = p.algebra();
    for i in 1..=3 {
        for j in 1..=3 {
            let op = alg.v_op(&p.b(i, j), &p.a(i, j)).unwrap();
            for k in 1..=3 {
                let expected = if k == i { p.c(j) } else { alg.zero() };
                assert_eq!(p.c(k).apply(&op), expected);
            }
        }
    }
}

#[test]
fn hall_identity_in_two_by_two_matrices() {
    for (field, seed) in [(Q, 1u64), (Field::Prime(3), 2)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let f: Vec<LinOp> = (0..5).map(|_| random_matrix(field, 2, &mut rng)).collect();
            assert!(hall_value([&f[0], &f[1], &f[2], &f[3], &f[4]]).is_zero());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let witness = find_hall_violation(Q, 3, 50, &mut rng).expect("3x3 violation");
    assert!(!hall_value([&witness[0], &witness[1], &witness[2], &witness[3], &witness[4]]).is_zero());
}

#[test]
fn hall_element_is_a_v_identity_of_p2_only() {
    let s = generic_hall();
    assert!(is_v_identity(Pn::new(2, Q).unwrap().algebra(), &s));
    let f3 = Field::Prime(3);
    assert!(is_v_identity(Pn::new(2, f3).unwrap().algebra(), &generic_hall_over(f3)));
    assert!(!is_v_identity(Pn::new(3, Q).unwrap().algebra(), &s));
    assert!(!is_v_identity(Pn::new(2, Q).unwrap().algebra(), &v(1, 2)));
    assert!(is_v_identity(&Algebra::zero_algebra(Q, 4), &v(1, 2)));
}

fn sample_identities() -> Vec<FreeElement> {
    let (a, b, c) = (v(1, 2), v(1, 3), v(2, 3));
    let halls = [
        hall_element([&a, &b, &a, &b, &c]),
        hall_element([&a, &c, &a, &c, &b]),
        hall_element([&b, &c, &b, &c, &a]),
        hall_element([&a, &b, &a, &c, &b]),
    ];
    let mut out = Vec::new();
    for (k, g) in halls.iter().enumerate() {
        let h = (k % 3) as u32 + 1;
        out.push(g.apply_to_variable(h));
    }
    // x_s (x_h g), (x_h x_j) g, x_s ((x_h x_j) g)
    out.push(FreeElement::var(Q, 3).mul(&halls[0].apply_to_variable(1)));
    out.push(FreeElement::var(Q, 1).mul(&halls[1].apply_to_variable(2)));
    let with_r = |h: u32, j: u32, g: &OperatorElement| {
        let mut f = FreeElement::zero(Q);
        for (w, c) in g.terms() {
            f.add_word(c.clone(), NormalWord::new(h, Some(j), w.pairs().to_vec(), None).unwrap());
        }
        f
    };
    out.push(with_r(1, 2, &halls[0]));
    out.push(with_r(2, 3, &halls[2]));
    out.push(FreeElement::var(Q, 2).mul(&with_r(1, 3, &halls[3])));
    // mixtures of shapes
    out.push(halls[0].apply_to_variable(1).add(&with_r(1, 3, &halls[1])));
    out.push(
        halls[2]
            .apply_to_variable(2)
            .scale(&Q.from_i64(3))
            .sub(&FreeElement::var(Q, 1).mul(&halls[3].apply_to_variable(3))),
    );
    out
}

#[test]
fn reduction_pipeline_on_identities_of_p2() {
    let p = Pn::new(2, Q).unwrap();
    let identities = sample_identities();
    assert!(identities.len() >= 10);
    for f in &identities {
        let m = f.max_var() as usize;
        assert!(m <= 3);
        let out = reduce_to_operator_identities(f, &p).unwrap();
        assert!(!out.is_empty());
        assert!(out.len() <= reduction_bound(m), "{} > {}", out.len(), reduction_bound(m));
        for r in &out {
            assert!(r.g.terms().all(|(w, _)| !w.is_empty()));
            assert!(is_v_identity(p.algebra(), &r.g), "{f}: {}", r.g);
        }
    }
}

#[test]
fn reduction_reads_off_r0_coefficients() {
    let p = Pn::new(2, Q).unwrap();
    let g = generic_hall();
    let out = reduce_to_operator_identities(&g.apply_to_variable(11), &p).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(out[0].source, RkTag::R0);
    assert_eq!(out[0].head, 11);
    assert_eq!(out[0].g, g);
    assert_eq!(reduction_bound(1), 8);
}

#[test]
fn reduction_rejects_non_identities() {
    let p = Pn::new(2, Q).unwrap();
    let f = v(1, 2).apply_to_variable(3);
    assert!(matches!(
        reduce_to_operator_identities(&f, &p),
        Err(Error::NotAnIdentity(_))
    ));
    let p1 = Pn::new(1, Q).unwrap();
    assert_eq!(
        reduce_to_operator_identities(&FreeElement::zero(Q), &p1).unwrap_err(),
        Error::InvalidN(1)
    );
}

#[test]
fn membership_search() {
    let gens = vec![v(1, 2).mul(&v(3, 4))];
    // a generator is its own certificate
    let Membership::Certificate(c) = ideal_membership_expand(&gens[0], &gens, &MembershipBounds::default()) else {
        panic!("expected certificate");
    };
    assert!(check_certificate(&gens[0], &gens, &c));
    // left multiple under a renaming of variables
    let target = v(1, 5).mul(&v(2, 3)).mul(&v(4, 5));
    let Membership::Certificate(c) = ideal_membership_expand(&target, &gens, &MembershipBounds::default()) else {
        panic!("expected certificate");
    };
    assert!(check_certificate(&target, &gens, &c));
    assert!(c.iter().any(|t| t.left.is_some() || t.right.is_some()));
    // the Hall element is not a consequence of squares of single generators
    let squares = vec![v(1, 2).mul(&v(1, 2))];
    assert_eq!(
        ideal_membership_expand(&generic_hall(), &squares, &MembershipBounds::default()),
        Membership::Unknown
    );
    assert!(OperatorWord::new(vec![(1, 2)]).is_ok());
}

fn arb_operator() -> impl Strategy<Value = OperatorElement> {
    let pair = (1u32..=4, 1u32..=4);
    prop::collection::vec((prop::collection::vec(pair, 1..=2), -2i64..=2), 1..=3).prop_map(|terms| {
        let mut g = OperatorElement::zero(Q);
        for (pairs, c) in terms {
            g = g.add(&OperatorElement::product_of(Q, &pairs).scale(&Q.from_i64(c)));
        }
        g
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evaluation_is_multiplicative(g in arb_operator(), h in arb_operator(), seed in any::<u64>()) {
        let p = Pn::new(2, Q).unwrap();
        let alg = p.algebra();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let asg: Assignment = (1..=4)
            .map(|k| {
                let coeffs = (0..alg.dim()).map(|i| (i, Q.random_small(&mut rng))).filter(|(_, c)| !c.is_zero()).collect();
                (k, alg.element(coeffs).unwrap())
            })
            .collect();
        let lhs = eval_operator(&g.mul(&h), alg, &asg).unwrap();
        let rhs = eval_operator(&g, alg, &asg).unwrap().then(&eval_operator(&h, alg, &asg).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
