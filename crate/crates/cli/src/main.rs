use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rsym_core::counterexample::{hall_on_generated_subalgebra, subsets, verify_property1, BConstruction};
use rsym_core::free::{normal_form, DEFAULT_DEGREE_CAP};
use rsym_core::identity::{find_witness, is_identity};
use rsym_core::operator::{e0_algebra, is_v_identity, matrix_units, reduce_to_operator_identities, reduction_bound};
use rsym_core::parse::parse_terms;
use rsym_core::pn::{Pn, DEFAULT_MAX_N};
use rsym_core::report::{Check, Report};
use rsym_core::spec_file::{algebra_from_json, algebra_to_json};
use rsym_core::verify::{generic_hall, pn_checks, verify_suite, SuiteOptions};
use rsym_core::{Algebra, Error, Field};

#[derive(Parser)]
#[command(name = "rsym", version, about = "Exact computations in metabelian right-symmetric algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Ground field: Q, F2, F3, Fp:<p> (default Q; verify-paper defaults to all three).
    #[arg(long, global = true)]
    field: Option<Field>,
    /// Largest term degree normal forms are computed for.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Allow P_n with n above the default limit.
    #[arg(long, global = true)]
    allow_large_n: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full battery of checks.
    VerifyPaper {
        /// Fields to run over (repeatable); overrides --field.
        #[arg(long = "over")]
        over: Vec<Field>,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Largest n for the counterexample algebra (0 skips it).
        #[arg(long, default_value_t = 2)]
        counterexample_n: usize,
        #[arg(long, default_value_t = 500)]
        random_terms: usize,
        /// Instead of the battery, run the P_n checks on this algebra file.
        #[arg(long)]
        algebra_file: Option<String>,
    },
    /// Describe P_n.
    Pn { n: usize },
    /// Normal form of a term.
    NormalForm {
        term: Option<String>,
        #[arg(long)]
        file: Option<String>,
    },
    /// Whether a term is an identity of an algebra (`pn:<n>` or a JSON file).
    IsIdentity { algebra: String, term: String },
    /// The operator algebra E0 generated by all V(x,y).
    E0 { algebra: String },
    /// Whether the Hall element is a V-identity of an algebra.
    Hall { algebra: String },
    /// Reduce an identity of P_n to operator identities.
    Reduce {
        term: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Build the counterexample algebra B.
    Counterexample {
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Check both properties and print the subset table.
        #[arg(long)]
        verify: bool,
    },
    /// Print an algebra as a JSON structure-constant file.
    EmitSpec { algebra: String },
}

/// Exit status 1: a check failed or the term is not an identity.
struct Failed;

enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl Global {
    fn field(&self) -> Field {
        self.field.unwrap_or(Field::Rational)
    }
}

type Outcome = Result<Result<(), Failed>, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failed)) => ExitCode::from(1),
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn status(ok: bool) -> Result<(), Failed> {
    if ok {
        Ok(())
    } else {
        Err(Failed)
    }
}

fn pn(g: &Global, n: usize) -> Result<Pn, CliError> {
    if n > DEFAULT_MAX_N && !g.allow_large_n {
        return Err(CliError::Usage(format!(
            "n = {n} exceeds {DEFAULT_MAX_N}; pass --allow-large-n to build it anyway"
        )));
    }
    Ok(Pn::new(n, g.field())?)
}

fn resolve_algebra(g: &Global, reference: &str) -> Result<Algebra, CliError> {
    if let Some(n) = reference.strip_prefix("pn:") {
        let n: usize = n
            .parse()
            .map_err(|_| CliError::Usage(format!("bad algebra reference {reference}")))?;
        return Ok(pn(g, n)?.into_algebra());
    }
    let text = fs::read_to_string(reference).map_err(|e| CliError::Usage(format!("{reference}: {e}")))?;
    Ok(algebra_from_json(&text)?)
}

fn print_report(g: &Global, report: &Report) {
    if g.json {
        let value = json!({ "passed": report.passed(), "checks": report.checks });
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        print!("{report}");
        println!("{}", if report.passed() { "overall: PASS" } else { "overall: FAIL" });
    }
}

fn emit(g: &Global, value: Value, text: impl FnOnce() -> String) {
    if g.json {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::VerifyPaper {
            over,
            n_max,
            counterexample_n,
            random_terms,
            algebra_file,
        } => {
            let report = match algebra_file {
                Some(path) => {
                    let alg = resolve_algebra(g, path)?;
                    let n = (1..).take_while(|i| alg.index_of(&format!("c{i}")).is_ok()).count();
                    pn_checks(&alg, n, "file").sorted()
                }
                None => {
                    let mut opts = SuiteOptions {
                        n_max: *n_max,
                        counterexample_n_max: *counterexample_n,
                        random_terms: *random_terms,
                        ..SuiteOptions::default()
                    };
                    if !over.is_empty() {
                        opts.fields = over.clone();
                    } else if let Some(f) = g.field {
                        opts.fields = vec![f];
                    }
                    verify_suite(&opts)?
                }
            };
            print_report(g, &report);
            Ok(status(report.passed()))
        }
        Command::Pn { n } => {
            let p = pn(g, *n)?;
            let alg = p.algebra();
            let products: Vec<(String, String, String)> = alg
                .structure_constants()
                .map(|(&(i, j), v)| {
                    let value = alg.format_element(&alg.element(v.clone()).expect("in range"));
                    (alg.name(i).to_string(), alg.name(j).to_string(), value)
                })
                .collect();
            let report = p.verify_structure_relations();
            emit(
                g,
                json!({
                    "n": n,
                    "field": g.field().to_string(),
                    "dim": alg.dim(),
                    "basis": alg.names(),
                    "products": products,
                    "checks": report.checks,
                }),
                || {
                    let mut s = format!("P{n} over {}: dim {}\n", g.field(), alg.dim());
                    for (a, b, v) in &products {
                        s += &format!("{a} {b} = {v}\n");
                    }
                    s + &report.to_string()
                },
            );
            Ok(status(report.passed()))
        }
        Command::NormalForm { term, file } => {
            let text = match (term, file) {
                (Some(t), None) => t.clone(),
                (None, Some(path)) => fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))?,
                _ => return Err(CliError::Usage("give either a term or --file".into())),
            };
            let f = parse_terms(g.field(), text.trim())?;
            let nf = normal_form(&f, g.degree_cap)?;
            emit(g, json!({ "input": f.to_string(), "normal_form": nf.to_string() }), || format!("{nf}\n"));
            Ok(Ok(()))
        }
        Command::IsIdentity { algebra, term } => {
            let alg = resolve_algebra(g, algebra)?;
            let f = parse_terms(alg.field(), term)?;
            let holds = is_identity(&alg, &f);
            let witness = if holds {
                None
            } else {
                Some(
                    find_witness(&alg, &f)
                        .map(|w| w.describe(&alg))
                        .unwrap_or_else(|| "no point witness; the generic value is nonzero".into()),
                )
            };
            emit(g, json!({ "identity": holds, "witness": witness }), || match &witness {
                None => "identity\n".into(),
                Some(w) => format!("not an identity: {w}\n"),
            });
            Ok(status(holds))
        }
        Command::E0 { algebra } => {
            let alg = resolve_algebra(g, algebra)?;
            let e0 = e0_algebra(&alg)?;
            let dim = e0.dim();
            let root = (0..=dim).find(|k| k * k >= dim).unwrap_or(0);
            let full = root * root == dim && matrix_units(&e0, root).is_some();
            emit(
                g,
                json!({ "dim": dim, "full_matrix_algebra": full.then_some(root), "closure_rounds": e0.rounds }),
                || {
                    let kind = if full {
                        format!("full matrix algebra of degree {root}")
                    } else {
                        "not recognised as a full matrix algebra".into()
                    };
                    format!("dim E0 = {dim}: {kind}\n")
                },
            );
            Ok(Ok(()))
        }
        Command::Hall { algebra } => {
            let alg = resolve_algebra(g, algebra)?;
            let s = generic_hall(alg.field());
            let holds = is_v_identity(&alg, &s);
            emit(g, json!({ "element": s.to_string(), "v_identity": holds }), || {
                format!("{}\n", if holds { "Hall element is a V-identity" } else { "Hall element is not a V-identity" })
            });
            Ok(status(holds))
        }
        Command::Reduce { term, n } => {
            let p = pn(g, *n)?;
            let f = normal_form(&parse_terms(g.field(), term)?, g.degree_cap)?;
            let out = match reduce_to_operator_identities(&f, &p) {
                Err(Error::NotAnIdentity(what)) => {
                    emit(g, json!({ "identity": false, "part": what }), || format!("not an identity of P{n}: {what}\n"));
                    return Ok(Err(Failed));
                }
                other => other?,
            };
            let m = f.max_var() as usize;
            let rows: Vec<Value> = out
                .iter()
                .map(|r| {
                    json!({
                        "source": format!("{:?}", r.source),
                        "delta_variable": r.delta_variable,
                        "head": r.head,
                        "g": r.g.to_string(),
                        "v_identity": is_v_identity(p.algebra(), &r.g),
                    })
                })
                .collect();
            let all_ok = out.iter().all(|r| is_v_identity(p.algebra(), &r.g));
            emit(g, json!({ "bound": reduction_bound(m), "identities": rows }), || {
                let mut s = format!("{} operator identities (bound {})\n", out.len(), reduction_bound(m));
                for r in &out {
                    let delta = r.delta_variable.map(|i| format!(" delta x{i}")).unwrap_or_default();
                    s += &format!("{:?}{delta} head x{}: {}\n", r.source, r.head, r.g);
                }
                s
            });
            Ok(status(all_ok))
        }
        Command::Counterexample { n, verify } => counterexample(g, *n, *verify),
        Command::EmitSpec { algebra } => {
            let alg = resolve_algebra(g, algebra)?;
            println!("{}", algebra_to_json(&alg));
            Ok(Ok(()))
        }
    }
}

fn counterexample(g: &Global, n: usize, verify: bool) -> Outcome {
    if n > DEFAULT_MAX_N && !g.allow_large_n {
        return Err(CliError::Usage(format!("n = {n} exceeds {DEFAULT_MAX_N}; pass --allow-large-n")));
    }
    let c = BConstruction::build(n, g.field())?;
    let dims = json!({
        "ambient": c.ambient.dim(),
        "L": c.l.dim(),
        "N_prime": c.n_prime.dim(),
        "B": c.b().dim(),
    });
    let names: Vec<String> = c.generators.iter().map(|x| c.ambient.format_element(x)).collect();
    let mut text = format!(
        "n = {n} over {}: dim ambient {}, dim L {}, dim N' {}, dim B {}\n",
        g.field(),
        c.ambient.dim(),
        c.l.dim(),
        c.n_prime.dim(),
        c.b().dim()
    );
    if !verify {
        emit(g, json!({ "dims": dims, "generators": names }), || text);
        return Ok(Ok(()));
    }
    let mut report = c.invariants();
    report.extend(verify_property1(&c)?);
    let mut table = Vec::new();
    let mut all_hold = true;
    for subset in subsets(c.generators.len(), c.s()) {
        let check = hall_on_generated_subalgebra(&c, &subset)?;
        all_hold &= check.hall_holds;
        table.push(check);
    }
    report.push(Check::new(
        "p2.subsets",
        format!("Hall holds on every subalgebra generated by {} generators", c.s()),
        all_hold,
    ));
    let full: Vec<usize> = (0..c.generators.len()).collect();
    let full_check = hall_on_generated_subalgebra(&c, &full)?;
    report.push(Check::new("p2.full-set", "Hall fails for the full generator set", !full_check.hall_holds));
    let rows: Vec<Value> = table
        .iter()
        .map(|t| {
            json!({
                "subset": t.subset.iter().map(|&i| names[i].clone()).collect::<Vec<_>>(),
                "subalgebra_dim": t.subalgebra_dim,
                "operator_algebra_dim": t.operator_algebra_dim,
                "hall_holds": t.hall_holds,
            })
        })
        .collect();
    let witness = c.b().format_element(&c.to_b(&c.top_c3())?);
    let value = json!({
        "dims": dims,
        "generators": names,
        "witness": witness,
        "checks": report.checks,
        "subsets": rows,
        "passed": report.passed(),
    });
    emit(g, value, || {
        text += &format!("witness: q(1.c1) S = {witness}\n");
        text += &report.to_string();
        text += "subset table (generator indices, dim subalgebra, dim operators, Hall):\n";
        for t in &table {
            text += &format!(
                "  {:?} {} {} {}\n",
                t.subset,
                t.subalgebra_dim,
                t.operator_algebra_dim,
                if t.hall_holds { "holds" } else { "fails" }
            );
        }
        text
    });
    Ok(status(report.passed()))
}
