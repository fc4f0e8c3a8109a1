use std::collections::BTreeSet;

use crate::syntax::{fresh_name, free_vars, subst, Branch, Context, GlobalEnv, InductiveDecl, Name, Sort, Term};

use super::conv::{conv, subtype};
use super::error::TypeError;
use super::guard::check_guard;
use super::inductive::is_small;
use super::reduce::{whnf, whnf_beta};
use super::sorts::{axiom_sort, sort_of_product};

/// Which strong eliminations are allowed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum EliminationMode {
    /// Strong elimination only over small inductives.
    #[default]
    Star,
    /// Strong elimination over any inductive.
    Full,
}

/// Type inference against a fixed global environment.
#[derive(Clone, Copy)]
pub struct Checker<'e> {
    pub env: &'e GlobalEnv,
    pub mode: EliminationMode,
}

impl<'e> Checker<'e> {
    pub fn new(env: &'e GlobalEnv, mode: EliminationMode) -> Self {
        Checker { env, mode }
    }

    /// The principal type of `t` in `ctx`. `ctx` is restored before returning.
    pub fn infer(&self, ctx: &mut Context, t: &Term) -> Result<Term, TypeError> {
        let base = ctx.len();
        let r = self.infer_inner(ctx, t);
        ctx.truncate(base);
        r
    }

    /// Checks `t` against `expected` up to cumulativity.
    pub fn check(&self, ctx: &mut Context, t: &Term, expected: &Term) -> Result<(), TypeError> {
        let actual = self.infer(ctx, t)?;
        if subtype(self.env, &actual, expected) {
            Ok(())
        } else {
            Err(TypeError::NotConvertible {
                term: t.clone(),
                expected: expected.clone(),
                actual,
            })
        }
    }

    /// The sort of a type `t`.
    pub fn infer_sort(&self, ctx: &mut Context, t: &Term) -> Result<Sort, TypeError> {
        let ty = self.infer(ctx, t)?;
        match whnf(self.env, &ty) {
            Term::Sort(s) => Ok(s),
            _ => Err(TypeError::NotASort { term: t.clone(), ty }),
        }
    }

    fn infer_inner(&self, ctx: &mut Context, t: &Term) -> Result<Term, TypeError> {
        match t {
            Term::Var(x) => ctx.lookup(x).cloned().ok_or_else(|| TypeError::UnboundVariable(x.clone())),
            Term::Sort(s) => Ok(Term::Sort(axiom_sort(*s))),
            Term::Prod(x, dom, cod) => {
                let s1 = self.infer_sort(ctx, dom)?;
                let (_, cod) = enter(ctx, x, dom, cod);
                let s2 = self.infer_sort(ctx, &cod)?;
                ctx.pop();
                Ok(Term::Sort(sort_of_product(s1, s2)))
            }
            Term::Lam(x, dom, body) => {
                self.infer_sort(ctx, dom)?;
                let (x, body) = enter(ctx, x, dom, body);
                let body_ty = self.infer(ctx, &body)?;
                ctx.pop();
                Ok(Term::prod(x, (**dom).clone(), body_ty))
            }
            Term::App(f, a) => {
                let fty = self.infer(ctx, f)?;
                match whnf(self.env, &fty) {
                    Term::Prod(x, dom, cod) => {
                        self.check(ctx, a, &dom)?;
                        Ok(subst(&cod, &x, a))
                    }
                    _ => Err(TypeError::NotAFunction {
                        term: (**f).clone(),
                        ty: fty,
                    }),
                }
            }
            Term::Ind(i) => self
                .env
                .inductive(i)
                .map(|d| d.arity.clone())
                .ok_or_else(|| TypeError::UnboundVariable(i.clone())),
            Term::Constr(c) => self
                .env
                .constructor(c)
                .map(|(d, k)| d.constructors[k].1.clone())
                .ok_or_else(|| TypeError::UnboundVariable(c.clone())),
            Term::Const(d) => self
                .env
                .definition(d)
                .map(|d| d.ty.clone())
                .ok_or_else(|| TypeError::UnboundVariable(d.clone())),
            Term::Case {
                ind,
                scrutinee,
                params,
                motive,
                branches,
            } => self.infer_case(ctx, ind, scrutinee, params, motive, branches),
            Term::Fix { name, ty, body, rec_arg } => self.infer_fix(ctx, name, ty, body, *rec_arg),
        }
    }

    fn infer_case(
        &self,
        ctx: &mut Context,
        ind: &Name,
        scrutinee: &Term,
        params: &[Term],
        motive: &Term,
        branches: &[Branch],
    ) -> Result<Term, TypeError> {
        let decl = self.env.inductive(ind).ok_or_else(|| TypeError::UnboundVariable(ind.clone()))?;
        if params.len() != decl.params {
            return Err(TypeError::ArityMismatch {
                what: format!("parameters of `{}` in case analysis", ind),
                expected: decl.params,
                found: params.len(),
            });
        }
        let mut indices_tele = decl.arity.clone();
        for q in params {
            match whnf(self.env, &indices_tele) {
                Term::Prod(x, dom, rest) => {
                    self.check(ctx, q, &dom)?;
                    indices_tele = subst(&rest, &x, q);
                }
                _ => {
                    return Err(TypeError::IllFormedInductive {
                        name: ind.clone(),
                        reason: "arity has fewer products than parameters".into(),
                    })
                }
            }
        }

        let scrut_ty = self.infer(ctx, scrutinee)?;
        let scrut_whnf = whnf(self.env, &scrut_ty);
        let (head, args) = scrut_whnf.spine();
        let expected_head = Term::apps(Term::Ind(ind.clone()), params.iter().cloned());
        if !matches!(head, Term::Ind(i) if i == ind) || args.len() < decl.params {
            return Err(TypeError::NotConvertible {
                term: scrutinee.clone(),
                expected: expected_head,
                actual: scrut_ty,
            });
        }
        for (a, q) in args.iter().zip(params) {
            if !conv(self.env, a, q) {
                return Err(TypeError::NotConvertible {
                    term: scrutinee.clone(),
                    expected: expected_head,
                    actual: scrut_ty,
                });
            }
        }
        let indices: Vec<Term> = args[decl.params..].iter().map(|a| (*a).clone()).collect();

        let motive_ty = self.infer(ctx, motive)?;
        let sort = self.motive_sort(ctx, ind, params, &indices_tele, motive, &motive_ty)?;
        if sort.is_type() && self.mode == EliminationMode::Star && !is_small(self.env, ind)? {
            return Err(TypeError::NonSmallStrongElim { ind: ind.clone(), sort });
        }

        if branches.len() != decl.constructors.len() {
            return Err(TypeError::ArityMismatch {
                what: format!("branches in case analysis on `{}`", ind),
                expected: decl.constructors.len(),
                found: branches.len(),
            });
        }
        for (i, br) in branches.iter().enumerate() {
            let (ctor, _) = &decl.constructors[i];
            if &br.ctor != ctor {
                return Err(TypeError::IllFormedInductive {
                    name: ind.clone(),
                    reason: format!("branch {} is labelled `{}`, expected constructor `{}`", i, br.ctor, ctor),
                });
            }
            let expected = branch_type(decl, i, params, motive, ctx);
            self.check(ctx, &br.body, &expected)?;
        }

        let mut result_args = indices;
        result_args.push(scrutinee.clone());
        Ok(whnf_beta(&Term::apps(motive.clone(), result_args)))
    }

    /// Checks the motive's type is `forall (indices) (x : I params indices), s`
    /// and returns `s`.
    fn motive_sort(
        &self,
        ctx: &mut Context,
        ind: &Name,
        params: &[Term],
        indices_tele: &Term,
        motive: &Term,
        motive_ty: &Term,
    ) -> Result<Sort, TypeError> {
        let base = ctx.len();
        let r = self.motive_sort_inner(ctx, ind, params, indices_tele, motive, motive_ty);
        ctx.truncate(base);
        r
    }

    fn motive_sort_inner(
        &self,
        ctx: &mut Context,
        ind: &Name,
        params: &[Term],
        indices_tele: &Term,
        motive: &Term,
        motive_ty: &Term,
    ) -> Result<Sort, TypeError> {
        let mismatch = |expected: Term| TypeError::NotConvertible {
            term: motive.clone(),
            expected,
            actual: motive_ty.clone(),
        };
        let mut tele = indices_tele.clone();
        let mut mty = motive_ty.clone();
        let mut index_vars = Vec::new();
        loop {
            let tele_w = whnf(self.env, &tele);
            let Term::Prod(y, dom, rest) = tele_w else {
                break;
            };
            let Term::Prod(z, mdom, mrest) = whnf(self.env, &mty) else {
                return Err(mismatch(tele.clone()));
            };
            if !conv(self.env, &dom, &mdom) {
                return Err(mismatch(tele.clone()));
            }
            let w = fresh_for_ctx(ctx, &y, &[&rest, &mrest]);
            ctx.push(w.clone(), (*dom).clone());
            let wt = Term::Var(w);
            tele = subst(&rest, &y, &wt);
            mty = subst(&mrest, &z, &wt);
            index_vars.push(wt);
        }
        let scrut_ty = Term::apps(Term::Ind(ind.clone()), params.iter().cloned().chain(index_vars));
        let Term::Prod(z, mdom, mrest) = whnf(self.env, &mty) else {
            return Err(mismatch(Term::arrow(scrut_ty, Term::Var(Name::anonymous()))));
        };
        if !conv(self.env, &mdom, &scrut_ty) {
            return Err(mismatch(scrut_ty));
        }
        let w = fresh_for_ctx(ctx, &z, &[&mrest]);
        ctx.push(w.clone(), (*mdom).clone());
        let result = subst(&mrest, &z, &Term::Var(w));
        match whnf(self.env, &result) {
            Term::Sort(s) => Ok(s),
            _ => Err(TypeError::NotASort {
                term: motive.clone(),
                ty: motive_ty.clone(),
            }),
        }
    }

    fn infer_fix(&self, ctx: &mut Context, name: &Name, ty: &Term, body: &Term, rec_arg: usize) -> Result<Term, TypeError> {
        self.infer_sort(ctx, ty)?;
        self.check_decreasing_type(ctx, name, ty, rec_arg)?;
        let (f, body) = enter(ctx, name, ty, body);
        self.check(ctx, &body, ty)?;
        ctx.pop();
        check_guard(self.env, &f, rec_arg, &body)?;
        Ok(ty.clone())
    }

    /// The annotation must have at least `rec_arg + 1` products, the last of
    /// which ranges over an inductive type.
    fn check_decreasing_type(&self, ctx: &mut Context, name: &Name, ty: &Term, rec_arg: usize) -> Result<(), TypeError> {
        let base = ctx.len();
        let mut cur = ty.clone();
        let mut result = Ok(());
        for j in 0..=rec_arg {
            let Term::Prod(x, dom, rest) = whnf(self.env, &cur) else {
                result = Err(TypeError::GuardViolation {
                    name: name.clone(),
                    reason: format!("type has fewer than {} arguments", rec_arg + 1),
                });
                break;
            };
            if j == rec_arg {
                let dom_w = whnf(self.env, &dom);
                if !matches!(dom_w.spine().0, Term::Ind(_)) {
                    result = Err(TypeError::GuardViolation {
                        name: name.clone(),
                        reason: format!("decreasing argument has type `{}`, which is not an inductive type", dom),
                    });
                }
                break;
            }
            let w = fresh_for_ctx(ctx, &x, &[&rest]);
            ctx.push(w.clone(), (*dom).clone());
            cur = subst(&rest, &x, &Term::Var(w));
        }
        ctx.truncate(base);
        result
    }
}

/// Pushes binder `x : dom` onto `ctx`, renaming it when the name is
/// already taken, and returns the (possibly renamed) binder and body.
pub(crate) fn enter(ctx: &mut Context, x: &Name, dom: &Term, body: &Term) -> (Name, Term) {
    if ctx.contains(x) {
        let z = fresh_for_ctx(ctx, x, &[body]);
        let body = subst(body, x, &Term::Var(z.clone()));
        ctx.push(z.clone(), dom.clone());
        (z, body)
    } else {
        ctx.push(x.clone(), dom.clone());
        (x.clone(), body.clone())
    }
}

/// `x` itself when unused in `ctx`, otherwise a fresh variant that is also
/// not free in any of `terms`.
pub(crate) fn fresh_for_ctx(ctx: &Context, x: &Name, terms: &[&Term]) -> Name {
    if !ctx.contains(x) && !x.is_anonymous() {
        return x.clone();
    }
    let fv: BTreeSet<Name> = terms.iter().flat_map(|t| free_vars(t)).collect();
    fresh_name(x, |n| ctx.contains(n) || fv.contains(n))
}

/// `forall (args), motive indices (c params args)` for constructor `i`,
/// with binders renamed away from the free variables of `params`,
/// `motive` and the names in `ctx`.
pub(crate) fn branch_type(decl: &InductiveDecl, i: usize, params: &[Term], motive: &Term, ctx: &Context) -> Term {
    let (ctor, cty) = &decl.constructors[i];
    let mut t = cty.clone();
    for q in params {
        if let Term::Prod(x, _, rest) = &t {
            t = subst(rest, x, q);
        }
    }
    let mut avoid: BTreeSet<Name> = free_vars(motive);
    for q in params {
        avoid.extend(free_vars(q));
    }
    let mut binders = Vec::new();
    while let Term::Prod(x, dom, rest) = &t {
        let body_fv = free_vars(rest);
        let name = if x.is_anonymous() || avoid.contains(x) || ctx.contains(x) {
            let base = if x.is_anonymous() { Name::new("a") } else { x.clone() };
            fresh_name(&base, |n| avoid.contains(n) || ctx.contains(n) || body_fv.contains(n))
        } else {
            x.clone()
        };
        avoid.insert(name.clone());
        let next = subst(rest, x, &Term::Var(name.clone()));
        binders.push((name, (**dom).clone()));
        t = next;
    }
    let (_, concl_args) = t.spine();
    let indices = concl_args.into_iter().skip(decl.params).cloned();
    let ctor_app = Term::apps(
        Term::Constr(ctor.clone()),
        params.iter().cloned().chain(binders.iter().map(|(x, _)| Term::Var(x.clone()))),
    );
    let body = Term::apps(motive.clone(), indices.chain(std::iter::once(ctor_app)));
    binders.into_iter().rev().fold(body, |acc, (x, dom)| Term::prod(x, dom, acc))
}

/// Infers the type of `t` in `ctx`.
pub fn infer(env: &GlobalEnv, ctx: &Context, t: &Term, mode: EliminationMode) -> Result<Term, TypeError> {
    let mut ctx = ctx.clone();
    Checker::new(env, mode).infer(&mut ctx, t)
}
