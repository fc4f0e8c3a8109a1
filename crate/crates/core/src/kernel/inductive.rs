//! Well-formedness of inductive declarations and smallness.

use crate::syntax::{occurs_global, subst, Context, GlobalEnv, InductiveDecl, Name, Sort, Term};

use super::conv::conv;
use super::error::TypeError;
use super::reduce::whnf;
use super::sorts::{sort_of_product, subsort};
use super::typing::{fresh_for_ctx, Checker, EliminationMode};

/// Checks `d` against `env` without adding it.
pub fn check_inductive(env: &GlobalEnv, d: &InductiveDecl) -> Result<(), TypeError> {
    check_inductive_with(env, d, EliminationMode::Star)
}

pub(crate) fn check_inductive_with(env: &GlobalEnv, d: &InductiveDecl, mode: EliminationMode) -> Result<(), TypeError> {
    let ill = |reason: String| TypeError::IllFormedInductive {
        name: d.name.clone(),
        reason,
    };
    if env.contains(&d.name) {
        return Err(TypeError::DuplicateName(d.name.clone()));
    }
    for (i, (c, _)) in d.constructors.iter().enumerate() {
        if env.contains(c) || c == &d.name || d.constructors[..i].iter().any(|(c2, _)| c2 == c) {
            return Err(TypeError::DuplicateName(c.clone()));
        }
    }

    let checker = Checker::new(env, mode);
    checker.infer_sort(&mut Context::new(), &d.arity)?;
    let (arity_binders, ind_sort) = arity_telescope(env, &d.arity).ok_or_else(|| ill("arity must end in a sort".into()))?;
    if arity_binders < d.params {
        return Err(TypeError::ArityMismatch {
            what: format!("parameters in the arity of `{}`", d.name),
            expected: d.params,
            found: arity_binders,
        });
    }

    let mut with_ind = env.clone();
    with_ind.insert_inductive(InductiveDecl {
        constructors: Vec::new(),
        ..d.clone()
    });
    let checker = Checker::new(&with_ind, mode);

    for (c, cty) in &d.constructors {
        let mut ctx = Context::new();
        checker.infer_sort(&mut ctx, cty)?;

        let mut t = cty.clone();
        let mut arity = d.arity.clone();
        let mut param_vars = Vec::with_capacity(d.params);
        for j in 0..d.params {
            let (Term::Prod(x, dom, rest), Term::Prod(y, adom, arest)) = (&t, &arity) else {
                return Err(ill(format!("constructor `{}` must start with the {} parameter binders", c, d.params)));
            };
            if !conv(&with_ind, dom, adom) {
                return Err(ill(format!("parameter {} of constructor `{}` differs from the declared one", j + 1, c)));
            }
            let w = fresh_for_ctx(&ctx, x, &[rest, arest]);
            ctx.push(w.clone(), (**dom).clone());
            let wt = Term::Var(w.clone());
            let next_t = subst(rest, x, &wt);
            let next_arity = subst(arest, y, &wt);
            t = next_t;
            arity = next_arity;
            param_vars.push(w);
        }

        while let Term::Prod(x, dom, rest) = &t {
            if !strictly_positive(&d.name, dom) {
                return Err(TypeError::PositivityViolation {
                    ind: d.name.clone(),
                    ctor: c.clone(),
                    arg: (**dom).clone(),
                });
            }
            let arg_sort = checker.infer_sort(&mut ctx, dom)?;
            if !subsort(sort_of_product(arg_sort, ind_sort), ind_sort) {
                return Err(TypeError::UniverseError(format!(
                    "argument `{}` of constructor `{}` lives in {}, too large for `{}` : {}",
                    dom, c, arg_sort, d.name, ind_sort
                )));
            }
            let w = fresh_for_ctx(&ctx, x, &[rest]);
            ctx.push(w.clone(), (**dom).clone());
            t = subst(rest, x, &Term::Var(w));
        }

        let (head, args) = t.spine();
        if !matches!(head, Term::Ind(i) if i == &d.name) {
            return Err(ill(format!("constructor `{}` must produce `{}`, not `{}`", c, d.name, t)));
        }
        if args.len() != arity_binders {
            return Err(TypeError::ArityMismatch {
                what: format!("arguments of `{}` in the type of constructor `{}`", d.name, c),
                expected: arity_binders,
                found: args.len(),
            });
        }
        for (j, (a, p)) in args.iter().zip(&param_vars).enumerate() {
            if !matches!(a, Term::Var(v) if v == p) {
                return Err(ill(format!(
                    "constructor `{}` must return `{}` applied to its parameters; argument {} is `{}`",
                    c,
                    d.name,
                    j + 1,
                    a
                )));
            }
        }
        for a in &args[d.params..] {
            if occurs_global(&d.name, a) {
                return Err(TypeError::PositivityViolation {
                    ind: d.name.clone(),
                    ctor: c.clone(),
                    arg: (*a).clone(),
                });
            }
        }
    }
    Ok(())
}

/// Number of products of an arity and its final sort.
fn arity_telescope(env: &GlobalEnv, arity: &Term) -> Option<(usize, Sort)> {
    let mut n = 0;
    let mut t = arity.clone();
    loop {
        match whnf(env, &t) {
            Term::Prod(_, _, rest) => {
                n += 1;
                t = (*rest).clone();
            }
            Term::Sort(s) => return Some((n, s)),
            _ => return None,
        }
    }
}

/// `ind` occurs only strictly positively in the argument type `t`.
pub(crate) fn strictly_positive(ind: &Name, t: &Term) -> bool {
    if !occurs_global(ind, t) {
        return true;
    }
    match t {
        Term::Prod(_, dom, cod) => !occurs_global(ind, dom) && strictly_positive(ind, cod),
        _ => {
            let (head, args) = t.spine();
            matches!(head, Term::Ind(i) if i == ind) && args.iter().all(|a| !occurs_global(ind, a))
        }
    }
}

/// An inductive is small when every constructor argument (after the
/// parameters) has a type in `Prop` or `Set_i`.
pub fn is_small(env: &GlobalEnv, ind: &Name) -> Result<bool, TypeError> {
    let decl = env.inductive(ind).ok_or_else(|| TypeError::UnboundVariable(ind.clone()))?;
    let checker = Checker::new(env, EliminationMode::Full);
    for (_, cty) in &decl.constructors {
        let mut ctx = Context::new();
        let mut t = cty.clone();
        let mut seen = 0;
        while let Term::Prod(x, dom, rest) = &t {
            if seen >= decl.params {
                match checker.infer_sort(&mut ctx, dom) {
                    Ok(Sort::Prop) | Ok(Sort::Set(_)) => {}
                    _ => return Ok(false),
                }
            }
            seen += 1;
            let w = fresh_for_ctx(&ctx, x, &[rest]);
            ctx.push(w.clone(), (**dom).clone());
            t = subst(rest, x, &Term::Var(w));
        }
    }
    Ok(true)
}
