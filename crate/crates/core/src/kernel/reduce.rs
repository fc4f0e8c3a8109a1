//! Reduction: beta, iota (case on a constructor), guarded fixpoint
//! unfolding and delta (global definitions).

use std::sync::Arc;

use crate::syntax::{subst, Branch, GlobalEnv, Term};

/// Weak-head normal form, unfolding definitions in head position.
pub fn whnf(env: &GlobalEnv, t: &Term) -> Term {
    whnf_with(env, t, true)
}

/// Weak-head normal form; `delta` controls unfolding of a head definition.
/// Case scrutinees and decreasing fixpoint arguments are always reduced
/// with delta, since a definition may compute to a constructor.
pub(crate) fn whnf_with(env: &GlobalEnv, t: &Term, delta: bool) -> Term {
    let mut cur = t.clone();
    while let Some(next) = head_step(env, &cur, delta) {
        cur = next;
    }
    cur
}

/// Weak-head normal form under beta only.
pub(crate) fn whnf_beta(t: &Term) -> Term {
    let mut cur = t.clone();
    loop {
        let (head, args) = cur.spine();
        match head {
            Term::Lam(x, _, body) if !args.is_empty() => {
                let reduced = subst(body, x, args[0]);
                cur = Term::apps(reduced, args[1..].iter().map(|a| (*a).clone()));
            }
            _ => return cur,
        }
    }
}

fn head_step(env: &GlobalEnv, t: &Term, delta: bool) -> Option<Term> {
    let (head, args) = t.spine();
    let rest = |from: usize| args[from..].iter().map(|a| (*a).clone()).collect::<Vec<_>>();
    match head {
        Term::Lam(x, _, body) if !args.is_empty() => Some(Term::apps(subst(body, x, args[0]), rest(1))),
        Term::Case { .. } => iota(env, head).map(|r| Term::apps(r, rest(0))),
        Term::Fix { rec_arg, .. } if args.len() > *rec_arg => {
            let decreasing = whnf(env, args[*rec_arg]);
            if !is_constructor_app(&decreasing) {
                return None;
            }
            let mut new_args = rest(0);
            new_args[*rec_arg] = decreasing;
            Some(Term::apps(unfold_fix(head), new_args))
        }
        Term::Const(d) if delta => env.definition(d).map(|def| Term::apps(def.body.clone(), rest(0))),
        _ => None,
    }
}

fn is_constructor_app(t: &Term) -> bool {
    matches!(t.spine().0, Term::Constr(_))
}

/// `fix f : A := B` to `B[f := fix f : A := B]`.
pub(crate) fn unfold_fix(fix: &Term) -> Term {
    match fix {
        Term::Fix { name, body, .. } => subst(body, name, fix),
        _ => fix.clone(),
    }
}

/// Contracts a case whose scrutinee reduces to a constructor application.
fn iota(env: &GlobalEnv, case: &Term) -> Option<Term> {
    let Term::Case {
        scrutinee, branches, ..
    } = case
    else {
        return None;
    };
    let scrutinee = whnf(env, scrutinee);
    select_branch(env, &scrutinee, branches)
}

fn select_branch(env: &GlobalEnv, scrutinee: &Term, branches: &[Branch]) -> Option<Term> {
    let (head, args) = scrutinee.spine();
    let Term::Constr(c) = head else {
        return None;
    };
    let (decl, _) = env.constructor(c)?;
    let branch = branches.iter().find(|b| &b.ctor == c)?;
    let fields = args.iter().skip(decl.params).map(|a| (*a).clone());
    Some(Term::apps(branch.body.clone(), fields))
}

/// Full beta normal form. Only called on well-typed terms.
pub fn beta_nf(t: &Term) -> Term {
    let t = whnf_beta(t);
    match &t {
        Term::Var(_) | Term::Sort(_) | Term::Ind(_) | Term::Constr(_) | Term::Const(_) => t,
        Term::Prod(x, a, b) => Term::Prod(x.clone(), Arc::new(beta_nf(a)), Arc::new(beta_nf(b))),
        Term::Lam(x, a, b) => Term::Lam(x.clone(), Arc::new(beta_nf(a)), Arc::new(beta_nf(b))),
        Term::App(..) => {
            let (head, args) = t.spine();
            Term::apps(beta_nf(head), args.into_iter().map(beta_nf))
        }
        Term::Case {
            ind,
            scrutinee,
            params,
            motive,
            branches,
        } => Term::Case {
            ind: ind.clone(),
            scrutinee: Arc::new(beta_nf(scrutinee)),
            params: params.iter().map(beta_nf).collect(),
            motive: Arc::new(beta_nf(motive)),
            branches: branches
                .iter()
                .map(|b| Branch {
                    ctor: b.ctor.clone(),
                    body: beta_nf(&b.body),
                })
                .collect(),
        },
        Term::Fix { name, ty, body, rec_arg } => Term::Fix {
            name: name.clone(),
            ty: Arc::new(beta_nf(ty)),
            body: Arc::new(beta_nf(body)),
            rec_arg: *rec_arg,
        },
    }
}

/// Every term obtained from `t` by contracting exactly one redex, at any
/// position. Iota and fixpoint redexes count only when the scrutinee or
/// decreasing argument is syntactically a constructor application.
pub fn one_step_reducts(env: &GlobalEnv, t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    if let Some(r) = root_redex(env, t) {
        out.push(r);
    }
    match t {
        Term::Var(_) | Term::Sort(_) | Term::Ind(_) | Term::Constr(_) | Term::Const(_) => {}
        Term::Prod(x, a, b) => {
            out.extend(one_step_reducts(env, a).into_iter().map(|a| Term::Prod(x.clone(), Arc::new(a), b.clone())));
            out.extend(one_step_reducts(env, b).into_iter().map(|b| Term::Prod(x.clone(), a.clone(), Arc::new(b))));
        }
        Term::Lam(x, a, b) => {
            out.extend(one_step_reducts(env, a).into_iter().map(|a| Term::Lam(x.clone(), Arc::new(a), b.clone())));
            out.extend(one_step_reducts(env, b).into_iter().map(|b| Term::Lam(x.clone(), a.clone(), Arc::new(b))));
        }
        Term::App(f, a) => {
            out.extend(one_step_reducts(env, f).into_iter().map(|f| Term::App(Arc::new(f), a.clone())));
            out.extend(one_step_reducts(env, a).into_iter().map(|a| Term::App(f.clone(), Arc::new(a))));
        }
        Term::Case {
            ind,
            scrutinee,
            params,
            motive,
            branches,
        } => {
            let rebuild = |s: Arc<Term>, p: Vec<Term>, m: Arc<Term>, b: Vec<Branch>| Term::Case {
                ind: ind.clone(),
                scrutinee: s,
                params: p,
                motive: m,
                branches: b,
            };
            for s in one_step_reducts(env, scrutinee) {
                out.push(rebuild(Arc::new(s), params.clone(), motive.clone(), branches.clone()));
            }
            for (i, p) in params.iter().enumerate() {
                for r in one_step_reducts(env, p) {
                    let mut ps = params.clone();
                    ps[i] = r;
                    out.push(rebuild(scrutinee.clone(), ps, motive.clone(), branches.clone()));
                }
            }
            for m in one_step_reducts(env, motive) {
                out.push(rebuild(scrutinee.clone(), params.clone(), Arc::new(m), branches.clone()));
            }
            for (i, b) in branches.iter().enumerate() {
                for r in one_step_reducts(env, &b.body) {
                    let mut bs = branches.clone();
                    bs[i].body = r;
                    out.push(rebuild(scrutinee.clone(), params.clone(), motive.clone(), bs));
                }
            }
        }
        Term::Fix { name, ty, body, rec_arg } => {
            let rebuild = |ty: Arc<Term>, body: Arc<Term>| Term::Fix {
                name: name.clone(),
                ty,
                body,
                rec_arg: *rec_arg,
            };
            out.extend(one_step_reducts(env, ty).into_iter().map(|t| rebuild(Arc::new(t), body.clone())));
            out.extend(one_step_reducts(env, body).into_iter().map(|b| rebuild(ty.clone(), Arc::new(b))));
        }
    }
    out
}

fn root_redex(env: &GlobalEnv, t: &Term) -> Option<Term> {
    match t {
        Term::App(f, a) => match &**f {
            Term::Lam(x, _, body) => Some(subst(body, x, a)),
            _ => {
                let (head, args) = t.spine();
                match head {
                    Term::Fix { rec_arg, .. } if args.len() == rec_arg + 1 && is_constructor_app(args[*rec_arg]) => {
                        Some(Term::apps(unfold_fix(head), args.into_iter().cloned()))
                    }
                    _ => None,
                }
            }
        },
        Term::Case {
            scrutinee, branches, ..
        } => select_branch(env, scrutinee, branches),
        Term::Const(d) => env.definition(d).map(|def| def.body.clone()),
        _ => None,
    }
}
