//! The full battery of exact checks on `P_n`, the free algebra, the operator
//! engine and the counterexample, plus single-constant mutations of an
//! algebra for checking that the battery notices them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::counterexample::{hall_on_generated_subalgebra, spot_check_property2, subsets, verify_property1, witness_hall_element, BConstruction};
use crate::error::Result;
use crate::free::{independence_certificate, multilinear_basis, normal_form, FreeElement, NormalWord, Term, TermSum, DEFAULT_DEGREE_CAP};
use crate::identity::{check_variety, evaluate, evaluate_terms, Assignment};
use crate::operator::{
    e0_algebra, find_hall_violation, hall_element, hall_value, is_full_matrix_algebra, is_v_identity, random_matrix,
    reduce_to_operator_identities, reduction_bound, OperatorElement,
};
use crate::pn::Pn;
use crate::relations::{check_operator_relations, check_right_nilpotency, check_right_symmetry};
use crate::report::{Check, Report};
use crate::scalar::{Field, Scalar};

/// Which parts of the battery to run.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub fields: Vec<Field>,
    /// Largest `n` for the `P_n` checks.
    pub n_max: usize,
    /// Largest `n` for the counterexample (0 skips it).
    pub counterexample_n_max: usize,
    pub random_terms: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            fields: vec![Field::Rational, Field::Prime(2), Field::Prime(3)],
            n_max: 3,
            counterexample_n_max: 2,
            random_terms: 500,
            seed: 1,
        }
    }
}

/// Variety membership with a witness on failure.
pub fn variety_check(alg: &Algebra, id: &str) -> Check {
    let report = check_variety(alg);
    let mut check = Check::new(id, "defining identities hold", report.passes());
    if let Some(bad) = report.checks.iter().find(|c| !c.holds) {
        let witness = bad.witness.as_ref().map(|w| w.describe(alg)).unwrap_or_else(|| "no point witness".into());
        check = check.with_detail(format!("{} fails: {witness}", bad.identity));
    }
    check
}

/// `Ann_l A` equals the span of the basis vectors named `c1 … cn`.
pub fn left_annihilator_check(alg: &Algebra, n: usize, id: &str) -> Check {
    let c: Vec<_> = (1..=n).filter_map(|i| alg.basis_named(&format!("c{i}")).ok()).collect();
    let expected = alg.span(&c).expect("same algebra");
    let ann = alg.left_annihilator();
    let ok = c.len() == n && ann == expected;
    let mut check = Check::new(id, "left annihilator is C", ok);
    if !ok {
        let extra = ann.basis().into_iter().find(|x| !expected.contains(x));
        let missing = expected.basis().into_iter().find(|x| !ann.contains(x));
        let detail = match (extra, missing) {
            (Some(x), _) => format!("{} annihilates from the left but is not in C", alg.format_element(&x)),
            (None, Some(x)) => format!("{} is in C but does not annihilate", alg.format_element(&x)),
            _ => format!("dim {} vs {}", ann.dim(), expected.dim()),
        };
        check = check.with_detail(detail);
    }
    check
}

/// The structural checks on an algebra presented with the basis names of
/// `P_n`: variety membership, right nilpotency and right symmetry, the
/// operator relations, and the left annihilator.
pub fn pn_checks(alg: &Algebra, n: usize, tag: &str) -> Report {
    let mut r = Report::new();
    r.push(variety_check(alg, &format!("c01.variety.{tag}")));
    let mut nil = check_right_nilpotency(alg);
    nil.id = format!("c02.{}.{tag}", nil.id);
    r.push(nil);
    let mut sym = check_right_symmetry(alg);
    sym.id = format!("c02.{}.{tag}", sym.id);
    r.push(sym);
    for mut c in check_operator_relations(alg) {
        c.id = format!("c03.{}.{tag}", c.id);
        r.push(c);
    }
    r.push(left_annihilator_check(alg, n, &format!("c04.left-annihilator.{tag}")));
    r
}

/// A random term with at most `max_degree` leaves over `x1 … x_{max_var}`.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, max_var: u32, max_degree: usize) -> Term {
    let degree = rng.gen_range(1..=max_degree);
    random_term_of_degree(rng, max_var, degree)
}

fn random_term_of_degree<R: Rng + ?Sized>(rng: &mut R, max_var: u32, degree: usize) -> Term {
    if degree == 1 {
        return Term::var(rng.gen_range(1..=max_var));
    }
    let left = rng.gen_range(1..degree);
    Term::mul(
        random_term_of_degree(rng, max_var, left),
        random_term_of_degree(rng, max_var, degree - left),
    )
}

pub fn random_assignment<R: Rng + ?Sized>(alg: &Algebra, vars: u32, rng: &mut R) -> Assignment {
    (1..=vars)
        .map(|v| {
            let coeffs = (0..alg.dim())
                .map(|i| (i, alg.field().random_small(rng)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            (v, alg.element(coeffs).expect("in range"))
        })
        .collect()
}

/// `evaluate(t) = evaluate(normal_form(t))` for random terms of degree at
/// most 6 under three random assignments each, in every given algebra.
pub fn normal_form_soundness(algebras: &[(&str, &Algebra)], terms: usize, seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluations = 0;
    for _ in 0..terms {
        let t = random_term(&mut rng, 4, 6);
        for (name, alg) in algebras {
            let ts = TermSum::from_term(alg.field(), t.clone());
            let nf = normal_form(&ts, DEFAULT_DEGREE_CAP)?;
            for _ in 0..3 {
                let asg = random_assignment(alg, 4, &mut rng);
                let lhs = evaluate_terms(alg, &ts, &asg)?;
                let rhs = evaluate(alg, &nf, &asg)?;
                evaluations += 1;
                if lhs != rhs {
                    return Ok(Check::new("c07.normal-form-sound", "terms and normal forms agree", false)
                        .with_detail(format!("{t} in {name}: {} vs {}", alg.format_element(&lhs), alg.format_element(&rhs))));
                }
            }
        }
    }
    Ok(Check::new("c07.normal-form-sound", "terms and normal forms agree", true)
        .with_detail(format!("{terms} terms, {evaluations} evaluations")))
}

/// Identities of `P₂` in at most three variables built from Hall elements
/// in `V_{12}, V_{13}, V_{23}` (two different commutators, so nothing
/// cancels in characteristic 2), placed in each of the four word shapes and
/// in mixtures of them.
pub fn sample_p2_identities(field: Field) -> Vec<FreeElement> {
    let v = |p, q| OperatorElement::generator(field, p, q);
    let (a, b, c) = (v(1, 2), v(1, 3), v(2, 3));
    let halls = [
        hall_element([&a, &b, &a, &c, &b]),
        hall_element([&a, &b, &b, &c, &a]),
        hall_element([&a, &c, &b, &c, &a]),
        hall_element([&a, &b, &a, &c, &c]),
    ];
    let var = |h| FreeElement::var(field, h);
    let with_r = |h: u32, j: u32, g: &OperatorElement| {
        let mut f = FreeElement::zero(field);
        for (w, coeff) in g.terms() {
            f.add_word(coeff.clone(), NormalWord::new(h, Some(j), w.pairs().to_vec(), None).expect("valid word"));
        }
        f
    };
    let mut out: Vec<FreeElement> = halls
        .iter()
        .enumerate()
        .map(|(k, g)| g.apply_to_variable(k as u32 % 3 + 1))
        .collect();
    out.push(var(3).mul(&halls[0].apply_to_variable(1)));
    out.push(var(1).mul(&halls[1].apply_to_variable(2)));
    out.push(with_r(1, 2, &halls[0]));
    out.push(with_r(2, 3, &halls[2]));
    out.push(var(2).mul(&with_r(1, 3, &halls[3])));
    out.push(halls[0].apply_to_variable(1).add(&with_r(1, 3, &halls[1])));
    out.push(
        halls[2]
            .apply_to_variable(2)
            .scale(&field.from_i64(3))
            .sub(&var(1).mul(&halls[3].apply_to_variable(3))),
    );
    out
}

/// The generic Hall element `[[V₁₂,V₃₄]∘[V₅₆,V₇₈],V₉,₁₀]`.
pub fn generic_hall(field: Field) -> OperatorElement {
    let f: Vec<OperatorElement> = (0..5)
        .map(|i| OperatorElement::generator(field, 2 * i + 1, 2 * i + 2))
        .collect();
    hall_element([&f[0], &f[1], &f[2], &f[3], &f[4]])
}

fn field_tag(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("F{p}"),
    }
}

/// Runs the whole battery.
pub fn verify_suite(opts: &SuiteOptions) -> Result<Report> {
    let mut r = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for &field in &opts.fields {
        let ft = field_tag(field);
        for n in 1..=opts.n_max {
            let p = Pn::new(n, field)?;
            let tag = format!("P{n}.{ft}");
            r.extend(pn_checks(p.algebra(), n, &tag));
            let e0 = e0_algebra(p.algebra())?;
            r.push(
                Check::new(format!("c05.e0.{tag}"), "E0 is a full matrix algebra of degree n", is_full_matrix_algebra(&e0, n))
                    .with_detail(format!("dim {}", e0.dim())),
            );
        }

        // Hall's identity.
        if opts.n_max >= 2 {
            let p2 = Pn::new(2, field)?;
            r.push(Check::new(
                format!("c06.hall-in-p2.{ft}"),
                "Hall element is a V-identity of P2",
                is_v_identity(p2.algebra(), &generic_hall(field)),
            ));
        }
        if opts.n_max >= 3 {
            let p3 = Pn::new(3, field)?;
            r.push(Check::new(
                format!("c06.hall-not-in-p3.{ft}"),
                "Hall element is not a V-identity of P3",
                !is_v_identity(p3.algebra(), &generic_hall(field)),
            ));
        }
        let zero_2x2 = (0..200).all(|_| {
            let f: Vec<_> = (0..5).map(|_| random_matrix(field, 2, &mut rng)).collect();
            hall_value([&f[0], &f[1], &f[2], &f[3], &f[4]]).is_zero()
        });
        r.push(Check::new(format!("c06.hall-2x2.{ft}"), "200 random 2x2 tuples satisfy Hall", zero_2x2));
        let violation = find_hall_violation(field, 3, 200, &mut rng);
        r.push(Check::new(format!("c06.hall-3x3.{ft}"), "a 3x3 tuple violates Hall", violation.is_some()));

        // Independence of the multilinear normal words.
        let mut ok = true;
        let mut sizes = Vec::new();
        for m in 1..=5 {
            let cert = independence_certificate(m, field);
            let size = multilinear_basis(m).len();
            ok &= cert.is_valid() && cert.rank == size;
            sizes.push(size.to_string());
        }
        r.push(
            Check::new(format!("c08.independence.{ft}"), "multilinear normal words are independent", ok)
                .with_detail(format!("sizes {}", sizes.join(", "))),
        );

        // Reduction to operator identities.
        if opts.n_max >= 2 {
            let p2 = Pn::new(2, field)?;
            let mut ok = true;
            let mut detail = String::new();
            let identities = sample_p2_identities(field);
            for f in &identities {
                let m = f.max_var() as usize;
                match reduce_to_operator_identities(f, &p2) {
                    Ok(out) => {
                        let good = !out.is_empty()
                            && out.len() <= reduction_bound(m)
                            && out.iter().all(|g| is_v_identity(p2.algebra(), &g.g));
                        if !good && detail.is_empty() {
                            detail = format!("{f}: {} outputs", out.len());
                        }
                        ok &= good;
                    }
                    Err(e) => {
                        ok = false;
                        detail = format!("{f}: {e}");
                    }
                }
            }
            r.push(
                Check::new(format!("c09.reduction.{ft}"), "reductions stay within the bound and are V-identities", ok)
                    .with_detail(if detail.is_empty() { format!("{} identities", identities.len()) } else { detail }),
            );
        }

        // Counterexample.
        for n in 1..=opts.counterexample_n_max {
            let c = BConstruction::build(n, field)?;
            let mut inv = c.invariants();
            for check in &mut inv.checks {
                check.id = format!("c10.{}.n{n}.{ft}", check.id);
            }
            r.extend(inv);
            let mut p1 = verify_property1(&c)?;
            for check in &mut p1.checks {
                check.id = format!("c10.{}.n{n}.{ft}", check.id);
            }
            r.extend(p1);
        }
        if opts.counterexample_n_max >= 1 {
            let c = BConstruction::build(1, field)?;
            r.push(property2_check(&c, &format!("c11.property2.n1.{ft}"))?);
        }
    }

    if opts.n_max >= 3 {
        let mut algs = Vec::new();
        for &field in &opts.fields {
            for n in [2, 3] {
                algs.push((format!("P{n}.{}", field_tag(field)), Pn::new(n, field)?.into_algebra()));
            }
        }
        let refs: Vec<(&str, &Algebra)> = algs.iter().map(|(n, a)| (n.as_str(), a)).collect();
        r.push(normal_form_soundness(&refs, opts.random_terms, opts.seed)?);
    }

    if opts.n_max >= 2 {
        for &field in &opts.fields {
            r.push(mutation_sensitivity(&Pn::new(2, field)?, &format!("c12.mutations.P2.{}", field_tag(field))));
        }
    }
    Ok(r.sorted())
}

/// For every `s`-subset of the generators, the witness Hall element vanishes
/// symbolically on the generated subalgebra, and so does every Hall element
/// in the operators of that subalgebra.
pub fn property2_check(c: &BConstruction, id: &str) -> Result<Check> {
    let s = witness_hall_element(c.n, c.field());
    let all = subsets(c.generators.len(), c.s());
    let mut bad = None;
    for subset in &all {
        let symbolic = spot_check_property2(c, subset, &s, 0)?;
        let exact = hall_on_generated_subalgebra(c, subset)?.hall_holds;
        if !(symbolic && exact) {
            bad = Some(format!("{subset:?}"));
            break;
        }
    }
    Ok(Check::new(id, "Hall elements vanish on subalgebras generated by s generators", bad.is_none())
        .with_detail(bad.unwrap_or_else(|| format!("{} subsets", all.len()))))
}

/// One structure constant `e_i e_j ∋ c·e_k` changed to `replacement`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub original: Scalar,
    pub replacement: Scalar,
}

impl Mutation {
    pub fn describe(&self, alg: &Algebra) -> String {
        format!(
            "{} {} -> {} {} (was {})",
            alg.name(self.i),
            alg.name(self.j),
            self.replacement,
            alg.name(self.k),
            self.original
        )
    }
}

/// Every single-constant mutation of `alg`: each nonzero constant is
/// replaced by zero, and also by its negative when that differs.
pub fn mutations(alg: &Algebra) -> Vec<Mutation> {
    let mut out = Vec::new();
    for (&(i, j), row) in alg.structure_constants() {
        for (&k, c) in row {
            let neg = -c;
            for replacement in [alg.field().zero(), neg.clone()] {
                if &replacement == c {
                    continue;
                }
                out.push(Mutation {
                    i,
                    j,
                    k,
                    original: c.clone(),
                    replacement,
                });
            }
        }
    }
    out
}

pub fn apply_mutation(alg: &Algebra, m: &Mutation) -> Result<Algebra> {
    let mut entries = Vec::new();
    for (&(i, j), row) in alg.structure_constants() {
        for (&k, c) in row {
            let c = if (i, j, k) == (m.i, m.j, m.k) { m.replacement.clone() } else { c.clone() };
            entries.push((i, j, k, c));
        }
    }
    Algebra::new(alg.field(), alg.names().to_vec(), entries)
}

/// Runs [`pn_checks`] on every mutation of `P_n`; passes when each mutation
/// is caught by some check. The detail lists one caught witness per
/// mutation or the first mutation that slipped through.
pub fn mutation_sensitivity(p: &Pn, id: &str) -> Check {
    let alg = p.algebra();
    let all = mutations(alg);
    for m in &all {
        let mutated = apply_mutation(alg, m).expect("same shape");
        let report = pn_checks(&mutated, p.n(), "mutant");
        if report.passed() {
            return Check::new(id, "every single-constant mutation is detected", false)
                .with_detail(format!("undetected: {}", m.describe(alg)));
        }
    }
    Check::new(id, "every single-constant mutation is detected", true).with_detail(format!("{} mutations", all.len()))
}

/// First failing check of [`pn_checks`] for each mutation.
pub fn mutation_witnesses(p: &Pn) -> Vec<(Mutation, Option<Check>)> {
    let alg = p.algebra();
    mutations(alg)
        .into_iter()
        .map(|m| {
            let mutated = apply_mutation(alg, &m).expect("same shape");
            let failure = pn_checks(&mutated, p.n(), "mutant").failures().next().cloned();
            (m, failure)
        })
        .collect()
}
