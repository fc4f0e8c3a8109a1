//! Acceptance suite. Each test prints one `PASS`/`FAIL` line for its
//! criterion and then asserts it.

mod common;

use std::collections::BTreeSet;
use std::io::Write;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{definitions, inductives, prelude, Gen, Ty, BAD_ELIM, PRELUDE};
use rcic_core::cli::{run, CommandKind, RunConfig};
use rcic_core::frontend::{elaborate_decl, load, parse_term, parse_with, ElabDecl, FrontendError, ParseOptions};
use rcic_core::kernel::{infer, one_step_reducts, sort_of_product, subsort, subtype, EliminationMode, TypeError};
use rcic_core::param::{translate, ParamEnv};
use rcic_core::syntax::{alpha_eq, Context, GlobalEnv, InductiveDecl, Name, Sort, Term};

const MAX_LEVEL: u32 = 4;
const SUBSORT_LEVEL: u32 = 5;
const REDUCTS_PER_DEFINITION: usize = 100;
const GENERATED_TERMS: usize = 500;
const MIN_CORPUS: usize = 20;

fn report(n: u32, what: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {} [PRIMARY] {}: {} ({})", n, what, verdict, detail);
}

fn sorts(max: u32) -> Vec<Sort> {
    let mut v = vec![Sort::Prop];
    v.extend((0..=max).map(Sort::Set));
    v.extend((1..=max).map(Sort::type_of_level));
    v
}

/// The product rules, restated independently of the kernel.
fn product_oracle(dom: Sort, cod: Sort) -> Sort {
    match (dom, cod) {
        (_, Sort::Prop) => Sort::Prop,
        (Sort::Prop, s) => s,
        (d, Sort::Set(j)) => Sort::Set(d.level().unwrap().max(j)),
        (d, c) => Sort::type_of_level(d.level().unwrap().max(c.level().unwrap())),
    }
}

#[test]
fn criterion_1_sort_rule_table() {
    let env = GlobalEnv::new();
    let mut mismatches = Vec::new();
    let mut cases = 0;
    for s1 in sorts(MAX_LEVEL) {
        for s2 in sorts(MAX_LEVEL) {
            cases += 1;
            let expected = product_oracle(s1, s2);
            if sort_of_product(s1, s2) != expected {
                mismatches.push(format!("table ({}, {})", s1, s2));
            }
            // The same rule seen through `infer` on `forall (x : A), B`.
            let ctx = Context::new().with("A", Term::sort(s1)).with("B", Term::sort(s2));
            let t = Term::prod("x", Term::var("A"), Term::var("B"));
            match infer(&env, &ctx, &t, EliminationMode::Star) {
                Ok(Term::Sort(s)) if s == expected => {}
                other => mismatches.push(format!("infer ({}, {}): {:?}", s1, s2, other.map(|t| t.to_string()))),
            }
        }
    }
    let ok = mismatches.is_empty();
    report(1, "sort-rule table", ok, &format!("{} sort pairs, {} mismatches", cases, mismatches.len()));
    assert!(ok, "{:?}", mismatches);
}

#[test]
fn criterion_2_predicativity_probes() {
    let env = prelude();
    let mut failures = Vec::new();
    let mut probes = 0;
    let mut expect = |src: &str, want: Sort| {
        probes += 1;
        let t = parse_term(&env, src, ParseOptions::default()).expect(src);
        match infer(&env, &Context::new(), &t, EliminationMode::Star) {
            Ok(Term::Sort(s)) if s == want => {}
            other => failures.push(format!("{} : {:?}, expected {}", src, other.map(|t| t.to_string()), want)),
        }
    };
    for i in 0..=3 {
        expect(&format!("forall (A : Set{}), A", i), Sort::Set(i + 1));
        expect(&format!("forall (A : Set{}), A -> A", i), Sort::Set(i + 1));
        expect(&format!("forall (A : Set{}) (P : A -> Prop) (x : A), P x", i), Sort::Prop);
        expect(&format!("forall (A : Set{}), A -> Prop", i), Sort::type_of_level(i + 1));
        expect(&format!("forall (X : Type{}) (P : X -> Prop) (x : X), P x", i + 1), Sort::Prop);
        expect(&format!("forall (X : Type{}), X -> Prop -> Prop", i + 1), Sort::type_of_level(i + 2));
        expect(&format!("Set{} -> Prop", i), Sort::type_of_level(i + 1));
    }
    expect("forall (P : Prop), P", Sort::Prop);
    expect("forall (P : Prop), P -> P", Sort::Prop);
    expect("forall (n : Nat), Eq Nat n n", Sort::Prop);
    expect("forall (A : Set0) (x : A), Eq A x x", Sort::Prop);
    // Quantifying over proofs does not raise the level.
    expect("forall (e : Eq Nat O O), Nat", Sort::Set(0));
    expect("forall (e : True), Set2", Sort::type_of_level(3));
    let ok = failures.is_empty();
    report(2, "predicativity and impredicativity probes", ok, &format!("{} probes, {} failures", probes, failures.len()));
    assert!(ok, "{:#?}", failures);
}

#[test]
fn criterion_3_subtyping_closure() {
    let all = sorts(SUBSORT_LEVEL);
    let n = all.len();
    let idx = |s: Sort| all.iter().position(|&t| t == s).unwrap();
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    reach[idx(Sort::Prop)][idx(Sort::Set(1))] = true;
    for i in 0..=SUBSORT_LEVEL {
        for j in i + 1..=SUBSORT_LEVEL {
            reach[idx(Sort::Set(i))][idx(Sort::Set(j))] = true;
            if i >= 1 {
                reach[idx(Sort::type_of_level(i))][idx(Sort::type_of_level(j))] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    let mut mismatches = Vec::new();
    for (i, &a) in all.iter().enumerate() {
        for (j, &b) in all.iter().enumerate() {
            if subsort(a, b) != reach[i][j] {
                mismatches.push(format!("{} <: {}", a, b));
            }
        }
    }
    let ok = mismatches.is_empty();
    report(3, "subtyping closure", ok, &format!("{} pairs, {} mismatches", n * n, mismatches.len()));
    assert!(ok, "{:?}", mismatches);
}

#[test]
fn criterion_4_abstraction_theorem_on_corpus() {
    let env = prelude();
    let defs = definitions(&env);
    let mut pe = ParamEnv::new(&env).expect("prelude translates");
    let mut failures = Vec::new();
    for d in &defs {
        if let Err(e) = pe.check_definition(d) {
            failures.push(format!("{}: {}", d, e));
        }
    }
    let required: BTreeSet<&str> =
        ["id", "const", "compose", "negb", "plus", "rev", "fold_right", "length", "map"].into_iter().collect();
    let present: BTreeSet<&str> = defs.iter().map(|d| d.as_str()).collect();
    let missing: Vec<_> = required.difference(&present).collect();
    let ok = failures.is_empty() && defs.len() >= MIN_CORPUS && missing.is_empty();
    report(
        4,
        "abstraction theorem on the corpus",
        ok,
        &format!("{} definitions, {} failures", defs.len(), failures.len()),
    );
    assert!(ok, "failures {:#?}, missing {:?}", failures, missing);
}

/// Closed types of sort Prop or Set from the corpus: every definition type
/// plus each inductive applied to sample parameters and indices.
fn small_corpus_types(env: &GlobalEnv) -> Vec<Term> {
    let mut out: Vec<Term> = definitions(env).iter().map(|d| env.definition(d).unwrap().ty.clone()).collect();
    for src in ["Bool", "Nat", "List Nat", "List (List Bool)", "Prod Bool Nat", "Empty", "True", "Eq Nat O (S O)", "Nat -> Bool"] {
        out.push(parse_term(env, src, ParseOptions::default()).unwrap());
    }
    out.retain(|t| matches!(infer(env, &Context::new(), t, EliminationMode::Star), Ok(Term::Sort(s)) if !s.is_type()));
    out
}

#[test]
fn criterion_5_prop_codomain() {
    let env = prelude();
    let mut pe = ParamEnv::new(&env).unwrap();
    let types = small_corpus_types(&env);
    let mut failures = Vec::new();
    for t in &types {
        let rel = pe.translate_term(&Context::new(), t).unwrap();
        let tp = rcic_core::param::prime(t);
        let mut ctx = Context::new().with("t", t.clone()).with("t'", tp);
        let applied = Term::apps(rel, [Term::var("t"), Term::var("t'")]);
        let checker = rcic_core::kernel::Checker::new(pe.target(), EliminationMode::Star);
        match checker.infer(&mut ctx, &applied) {
            Ok(Term::Sort(Sort::Prop)) => {}
            other => failures.push(format!("{}: {:?}", t, other.map(|t| t.to_string()))),
        }
    }
    let ok = failures.is_empty() && types.len() >= MIN_CORPUS;
    report(5, "relations over small types land in Prop", ok, &format!("{} types, {} failures", types.len(), failures.len()));
    assert!(ok, "{:#?}", failures);
}

const GOLDENS: &str = "
inductive Bool_R : Bool -> Bool -> Prop :=
  | true_R : Bool_R true true
  | false_R : Bool_R false false.
inductive Nat_R : Nat -> Nat -> Prop :=
  | O_R : Nat_R O O
  | S_R : forall (n n' : Nat) (n_R : Nat_R n n'), Nat_R (S n) (S n').
inductive List_R (A A' : Set0) (A_R : A -> A' -> Prop) : List A -> List A' -> Prop :=
  | nil_R : List_R A A' A_R (nil A) (nil A')
  | cons_R : forall (a : A) (a' : A') (a_R : A_R a a') (l : List A) (l' : List A') (l_R : List_R A A' A_R l l'),
      List_R A A' A_R (cons A a l) (cons A' a' l').
";

fn same_inductive(a: &InductiveDecl, b: &InductiveDecl) -> bool {
    a.name == b.name
        && a.params == b.params
        && alpha_eq(&a.arity, &b.arity)
        && a.constructors.len() == b.constructors.len()
        && a.constructors.iter().zip(&b.constructors).all(|((c, t), (d, u))| c == d && alpha_eq(t, u))
}

#[test]
fn criterion_6_golden_translations() {
    let env = prelude();
    let pe = ParamEnv::new(&env).unwrap();
    let file = parse_with(GOLDENS, ParseOptions { allow_reserved: true }).expect("goldens parse");
    let mut checked = 0;
    let mut failures = Vec::new();
    for decl in &file.decls {
        let golden = match elaborate_decl(pe.target(), decl).expect("goldens elaborate") {
            ElabDecl::Inductive(d) => d,
            other => panic!("unexpected golden {:?}", other),
        };
        let source = Name::new(golden.name.as_str().trim_end_matches("_R"));
        let produced = &pe.inductive(&source).expect("translated").relation;
        checked += 1;
        if !same_inductive(produced, &golden) {
            failures.push(format!("{}:\n  got      {}\n  expected {:?}", source, rcic_core::frontend::print_inductive(produced), golden));
        }
    }
    let ok = failures.is_empty() && checked == 3;
    report(6, "golden translations of Bool, Nat and List", ok, &format!("{} goldens, {} mismatches", checked, failures.len()));
    assert!(ok, "{}", failures.join("\n"));
}

#[test]
fn criterion_7_strong_elimination_gate() {
    let mut star = GlobalEnv::new();
    let star_result = load(&mut star, BAD_ELIM, ParseOptions::default(), EliminationMode::Star);
    let star_rejects = matches!(
        &star_result,
        Err(FrontendError::Check(e)) if matches!(e.error, TypeError::NonSmallStrongElim { .. })
    );
    let mut full = GlobalEnv::new();
    let full_accepts = load(&mut full, BAD_ELIM, ParseOptions::default(), EliminationMode::Full).is_ok();

    // The same verdicts through the command-line driver.
    let dir = std::env::temp_dir().join(format!("rcic-accept-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_elim.rcic");
    std::fs::write(&path, BAD_ELIM).unwrap();
    let mut config = RunConfig::new(CommandKind::Check, vec![path]);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let star_exit = run(&config, &mut out, &mut err);
    let star_diag = String::from_utf8_lossy(&err).contains("NonSmallStrongElim");
    config.mode = EliminationMode::Full;
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let full_exit = run(&config, &mut out, &mut err);
    let _ = std::fs::remove_dir_all(&dir);

    let ok = star_rejects && full_accepts && star_exit == 1 && star_diag && full_exit == 0;
    report(
        7,
        "strong elimination gate",
        ok,
        &format!("star exit {}, full exit {}", star_exit, full_exit),
    );
    assert!(ok, "star {:?}, full accepts {}", star_result.err().map(|e| e.to_string()), full_accepts);
}

#[test]
fn criterion_8_subject_reduction() {
    let env = prelude();
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let mut checked = 0;
    let mut short = Vec::new();
    let mut failures = Vec::new();
    let defs = definitions(&env);
    for d in &defs {
        let def = env.definition(d).unwrap();
        let mut done = 0;
        let mut attempts = 0;
        // Random walks from the body and from random instances of `d`, each
        // step a uniformly chosen single-step reduct.
        while done < REDUCTS_PER_DEFINITION && attempts < 4 * REDUCTS_PER_DEFINITION {
            attempts += 1;
            let (start, ty) = if attempts % 4 == 1 {
                (def.body.clone(), def.ty.clone())
            } else {
                let t = common::instance(&env, &mut Gen::new(&mut rng), d, 2);
                let ty = infer(&env, &Context::new(), &t, EliminationMode::Star).expect("instances are well-typed");
                (t, ty)
            };
            let limit = 4 * start.size() + 200;
            let mut current = start;
            for _ in 0..10 {
                let reducts = one_step_reducts(&env, &current);
                if reducts.is_empty() || current.size() > limit || done == REDUCTS_PER_DEFINITION {
                    break;
                }
                let next = reducts[rng.gen_range(0..reducts.len())].clone();
                done += 1;
                checked += 1;
                match infer(&env, &Context::new(), &next, EliminationMode::Star) {
                    Ok(t) if subtype(&env, &t, &ty) => {}
                    other => failures.push(format!("{}: reduct {} has {:?}", d, next, other.map(|t| t.to_string()))),
                }
                current = next;
            }
        }
        if done < REDUCTS_PER_DEFINITION {
            short.push(format!("{} ({} reducts)", d, done));
        }
    }
    let ok = failures.is_empty() && short.is_empty();
    report(
        8,
        "subject reduction on random reducts",
        ok,
        &format!("{} definitions, {} reducts, {} failures", defs.len(), checked, failures.len()),
    );
    assert!(ok, "short: {:?}\n{:#?}", short, &failures[..failures.len().min(5)]);
}

fn round_trips(env: &GlobalEnv, t: &Term, opts: ParseOptions) -> Result<(), String> {
    let printed = t.to_string();
    match parse_term(env, &printed, opts) {
        Ok(back) if alpha_eq(&back, t) => Ok(()),
        Ok(back) => Err(format!("{}\n  reparsed as {}", printed, back)),
        Err(e) => Err(format!("{}\n  error {}", printed, e)),
    }
}

#[test]
fn criterion_9_round_trip() {
    let env = prelude();
    let mut failures = Vec::new();
    let mut corpus_terms = 0;
    for name in env.names() {
        let mut terms = Vec::new();
        if let Some(d) = env.definition(name) {
            terms.push(d.ty.clone());
            terms.push(d.body.clone());
        }
        if let Some(d) = env.inductive(name) {
            terms.push(d.arity.clone());
            terms.extend(d.constructors.iter().map(|(_, t)| t.clone()));
        }
        for t in terms {
            corpus_terms += 1;
            if let Err(e) = round_trips(&env, &t, ParseOptions::default()) {
                failures.push(e);
            }
        }
    }
    // Translations mention reserved names and round-trip through the
    // permissive parser.
    let mut pe = ParamEnv::new(&env).unwrap();
    for d in definitions(&env) {
        let r = pe.ensure_definition(&d).unwrap();
        for t in [&r.ty, &r.body] {
            corpus_terms += 1;
            if let Err(e) = round_trips(pe.target(), t, ParseOptions { allow_reserved: true }) {
                failures.push(e);
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let mut generated = 0;
    while generated < GENERATED_TERMS {
        let ty = Ty::random(&mut rng, 2);
        let depth = rng.gen_range(1..=4);
        let t = Gen::new(&mut rng).term(&ty, depth);
        match infer(&env, &Context::new(), &t, EliminationMode::Star) {
            Ok(inferred) if subtype(&env, &inferred, &ty.term()) => {}
            other => {
                failures.push(format!("generator produced ill-typed {}: {:?}", t, other.map(|t| t.to_string())));
                break;
            }
        }
        generated += 1;
        if let Err(e) = round_trips(&env, &t, ParseOptions::default()) {
            failures.push(e);
        }
        let tt = translate(pe.target(), &t);
        if let Ok(tt) = tt {
            if let Err(e) = round_trips(pe.target(), &tt, ParseOptions { allow_reserved: true }) {
                failures.push(e);
            }
        }
    }
    let ok = failures.is_empty() && generated == GENERATED_TERMS;
    report(
        9,
        "print/parse round trip",
        ok,
        &format!("{} corpus terms, {} generated terms, {} failures", corpus_terms, generated, failures.len()),
    );
    assert!(ok, "{}", failures[..failures.len().min(5)].join("\n"));
}

#[test]
fn corpus_is_the_shipped_prelude() {
    assert!(PRELUDE.contains("inductive Nat"));
    assert!(inductives(&prelude()).len() >= 5);
}
