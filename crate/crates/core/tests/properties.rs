mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{prelude, Gen, Ty};
use rcic_core::kernel::conv;
use rcic_core::param::{prime, primed, witness, ParamEnv};
use rcic_core::syntax::{alpha_eq, free_vars, subst, Context, Name, Sort, Term};

/// Locally nameless image of a term: bound variables become indices,
/// free ones keep their names. Two terms are alpha-equivalent exactly
/// when their images are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Db {
    Bound(usize),
    Free(String),
    Sort(Sort),
    Global(String),
    Prod(Box<Db>, Box<Db>),
    Lam(Box<Db>, Box<Db>),
    App(Box<Db>, Box<Db>),
}

fn to_db(t: &Term) -> Db {
    fn go(t: &Term, stack: &mut Vec<Name>) -> Db {
        match t {
            Term::Var(x) => match stack.iter().rev().position(|y| y == x) {
                Some(i) => Db::Bound(i),
                None => Db::Free(x.as_str().to_string()),
            },
            Term::Sort(s) => Db::Sort(*s),
            Term::Ind(n) | Term::Constr(n) | Term::Const(n) => Db::Global(n.as_str().to_string()),
            Term::Prod(x, a, b) | Term::Lam(x, a, b) => {
                let a = go(a, stack);
                stack.push(x.clone());
                let b = go(b, stack);
                stack.pop();
                if matches!(t, Term::Prod(..)) {
                    Db::Prod(Box::new(a), Box::new(b))
                } else {
                    Db::Lam(Box::new(a), Box::new(b))
                }
            }
            Term::App(f, a) => Db::App(Box::new(go(f, stack)), Box::new(go(a, stack))),
            _ => unreachable!("generator only builds the core fragment"),
        }
    }
    go(t, &mut Vec::new())
}

/// Substitution on the locally nameless form. `v` has no dangling
/// indices, so no shifting is needed.
fn db_subst(t: &Db, x: &str, v: &Db) -> Db {
    match t {
        Db::Free(y) if y == x => v.clone(),
        Db::Bound(_) | Db::Free(_) | Db::Sort(_) | Db::Global(_) => t.clone(),
        Db::Prod(a, b) => Db::Prod(Box::new(db_subst(a, x, v)), Box::new(db_subst(b, x, v))),
        Db::Lam(a, b) => Db::Lam(Box::new(db_subst(a, x, v)), Box::new(db_subst(b, x, v))),
        Db::App(f, a) => Db::App(Box::new(db_subst(f, x, v)), Box::new(db_subst(a, x, v))),
    }
}

const POOL: &[&str] = &["x", "y", "z", "x1", "w"];

fn name() -> impl Strategy<Value = Name> {
    prop::sample::select(POOL).prop_map(Name::new)
}

fn binder() -> impl Strategy<Value = Name> {
    prop_oneof![4 => name(), 1 => Just(Name::anonymous())]
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        4 => name().prop_map(Term::Var),
        1 => (0u32..3).prop_map(Term::set),
        1 => Just(Term::prop()),
        1 => Just(Term::ind("Nat")),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            (binder(), inner.clone(), inner.clone()).prop_map(|(x, a, b)| Term::lam(x, a, b)),
            (binder(), inner.clone(), inner.clone()).prop_map(|(x, a, b)| Term::prod(x, a, b)),
            (inner.clone(), inner).prop_map(|(f, a)| Term::app(f, a)),
        ]
    })
}

/// Renames bound variables according to `choices`, keeping alpha-equivalence.
fn rename_bound(t: &Term, choices: &mut impl Iterator<Item = usize>) -> Term {
    match t {
        Term::Prod(x, a, b) | Term::Lam(x, a, b) => {
            let a = rename_bound(a, choices);
            let b = rename_bound(b, choices);
            let pick = choices.next().unwrap_or(0);
            let candidate = Name::new(&format!("r{}", pick));
            // Only rename to a name that cannot capture.
            let z = if x.is_anonymous() || free_vars(&b).contains(&candidate) { x.clone() } else { candidate };
            let b = if &z == x { b } else { subst(&b, x, &Term::Var(z.clone())) };
            if matches!(t, Term::Prod(..)) {
                Term::prod(z, a, b)
            } else {
                Term::lam(z, a, b)
            }
        }
        Term::App(f, a) => Term::app(rename_bound(f, choices), rename_bound(a, choices)),
        _ => t.clone(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn subst_agrees_with_locally_nameless(t in term(), x in name(), v in term()) {
        let named = to_db(&subst(&t, &x, &v));
        let oracle = db_subst(&to_db(&t), x.as_str(), &to_db(&v));
        prop_assert_eq!(named, oracle);
    }

    #[test]
    fn alpha_eq_matches_locally_nameless(a in term(), b in term()) {
        prop_assert_eq!(alpha_eq(&a, &b), to_db(&a) == to_db(&b));
    }

    #[test]
    fn alpha_eq_is_an_equivalence(t in term(), picks in prop::collection::vec(0usize..4, 0..16), picks2 in prop::collection::vec(0usize..4, 0..16)) {
        let u = rename_bound(&t, &mut picks.into_iter());
        let w = rename_bound(&u, &mut picks2.into_iter());
        prop_assert!(alpha_eq(&t, &t));
        prop_assert!(alpha_eq(&t, &u));
        prop_assert!(alpha_eq(&u, &t));
        prop_assert!(alpha_eq(&u, &w));
        prop_assert!(alpha_eq(&t, &w));
    }

    #[test]
    fn subst_respects_alpha(t in term(), picks in prop::collection::vec(0usize..4, 0..16), x in name(), v in term()) {
        let u = rename_bound(&t, &mut picks.into_iter());
        prop_assert!(alpha_eq(&subst(&t, &x, &v), &subst(&u, &x, &v)));
    }

    #[test]
    fn subst_free_vars_bound(t in term(), x in name(), v in term()) {
        let fv = free_vars(&subst(&t, &x, &v));
        let mut bound: BTreeSet<Name> = free_vars(&t);
        let had_x = bound.remove(&x);
        let mut exact = bound.clone();
        if had_x {
            exact.extend(free_vars(&v));
        }
        bound.extend(free_vars(&v));
        prop_assert!(fv.is_subset(&bound));
        prop_assert_eq!(fv, exact);
    }

    #[test]
    fn subst_of_absent_variable_is_identity(t in term(), v in term()) {
        let x = Name::new("absent");
        prop_assert_eq!(subst(&t, &x, &v), t);
    }

    #[test]
    fn prime_primes_free_variables(t in term()) {
        let expected: BTreeSet<Name> = free_vars(&t).iter().map(primed).collect();
        prop_assert_eq!(free_vars(&prime(&t)), expected);
    }

    #[test]
    fn prime_preserves_alpha(a in term(), b in term()) {
        prop_assert_eq!(alpha_eq(&a, &b), alpha_eq(&prime(&a), &prime(&b)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// `[B[x := N]]` is convertible to `[B][x := N, x' := N', x_R := [N]]`.
    #[test]
    fn translation_commutes_with_substitution(seed in any::<u64>()) {
        let env = prelude();
        let mut pe = ParamEnv::new(&env).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let x = Name::new("x");
        let ty = Ty::Nat;
        let out = Ty::random(&mut rng, 1);
        let b = Gen::with_scope(&mut rng, vec![(x.clone(), ty.clone())]).term(&out, 3);
        let n = Gen::new(&mut rng).term(&ty, 2);
        let ctx = Context::new().with(x.clone(), ty.term());

        let lhs = pe.translate_term(&Context::new(), &subst(&b, &x, &n)).unwrap();
        let tb = pe.translate_term(&ctx, &b).unwrap();
        let tn = pe.translate_term(&Context::new(), &n).unwrap();
        let rhs = subst(&subst(&subst(&tb, &x, &n), &primed(&x), &prime(&n)), &witness(&x), &tn);
        prop_assert!(conv(pe.target(), &lhs, &rhs), "B = {}\nN = {}", b, n);
    }
}
