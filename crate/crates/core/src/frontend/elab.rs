//! Name resolution: surface syntax to kernel terms.
//!
//! Identifiers resolve to the innermost local binder first, then to the
//! inductive being declared, then to globals. Binders that would shadow a
//! local get a fresh name, so elaborated terms have locally unique binders.

use crate::kernel::TypeError;
use crate::syntax::{fresh_name, subst, Branch, GlobalEnv, Global, InductiveDecl, Name, Term};

use super::ast::*;
use super::error::{CheckError, Pos};

/// A declaration after name resolution, ready for the kernel.
#[derive(Clone, Debug)]
pub enum ElabDecl {
    Inductive(InductiveDecl),
    Definition { name: Name, ty: Term, body: Term },
    Check(Term),
    ParamCheck(Name),
}

pub fn elaborate_decl(env: &GlobalEnv, d: &Decl) -> Result<ElabDecl, CheckError> {
    let mut el = Elab::new(env);
    match d {
        Decl::Inductive {
            name,
            params,
            arity,
            constructors,
            ..
        } => {
            let ind = Name::new(&name.name);
            el.pending = Some(ind.clone());
            let ps = el.binders(params)?;
            let arity = close_prods(&ps, el.expr(arity)?);
            let mut ctors = Vec::new();
            for c in constructors {
                let ty = el.expr(&c.ty)?;
                ctors.push((Name::new(&c.name.name), close_prods(&ps, ty)));
            }
            Ok(ElabDecl::Inductive(InductiveDecl {
                name: ind,
                params: ps.len(),
                arity,
                constructors: ctors,
            }))
        }
        Decl::Def { name, ty, body, .. } => {
            let ty = el.expr(ty)?;
            let body = el.expr(body)?;
            Ok(ElabDecl::Definition {
                name: Name::new(&name.name),
                ty,
                body,
            })
        }
        Decl::Check { term, .. } => Ok(ElabDecl::Check(el.expr(term)?)),
        Decl::ParamCheck { name, .. } => Ok(ElabDecl::ParamCheck(Name::new(&name.name))),
    }
}

/// Elaborates a closed term.
pub fn elaborate_expr(env: &GlobalEnv, e: &Expr) -> Result<Term, CheckError> {
    Elab::new(env).expr(e)
}

fn close_prods(bs: &[(Name, Term)], body: Term) -> Term {
    bs.iter().rev().fold(body, |acc, (x, a)| Term::prod(x.clone(), a.clone(), acc))
}

fn close_lams(bs: &[(Name, Term)], body: Term) -> Term {
    bs.iter().rev().fold(body, |acc, (x, a)| Term::lam(x.clone(), a.clone(), acc))
}

fn err(pos: Pos, error: TypeError) -> CheckError {
    CheckError { pos, error }
}

struct Elab<'e> {
    env: &'e GlobalEnv,
    /// Surface name and kernel name of each enclosing binder.
    scope: Vec<(String, Name)>,
    pending: Option<Name>,
}

impl<'e> Elab<'e> {
    fn new(env: &'e GlobalEnv) -> Self {
        Elab {
            env,
            scope: Vec::new(),
            pending: None,
        }
    }

    fn resolve(&self, id: &Ident) -> Result<Term, CheckError> {
        if id.name != "_" {
            if let Some((_, n)) = self.scope.iter().rev().find(|(s, _)| s == &id.name) {
                return Ok(Term::Var(n.clone()));
            }
        }
        let name = Name::new(&id.name);
        if self.pending.as_ref() == Some(&name) {
            return Ok(Term::Ind(name));
        }
        match self.env.lookup(&name) {
            Some(Global::Inductive(_)) => Ok(Term::Ind(name)),
            Some(Global::Constructor { .. }) => Ok(Term::Constr(name)),
            Some(Global::Definition(_)) => Ok(Term::Const(name)),
            None => Err(err(id.pos, TypeError::UnboundVariable(name))),
        }
    }

    /// Brings a binder into scope, freshening its kernel name if it would
    /// shadow an enclosing one.
    fn push(&mut self, id: &Ident) -> Name {
        let base = Name::new(&id.name);
        let name = if base.is_anonymous() || !self.scope.iter().any(|(_, n)| n == &base) {
            base
        } else {
            fresh_name(&base, |n| self.scope.iter().any(|(_, m)| m == n))
        };
        self.scope.push((id.name.clone(), name.clone()));
        name
    }

    fn pop(&mut self, n: usize) {
        let len = self.scope.len() - n;
        self.scope.truncate(len);
    }

    /// Elaborates typed binders, leaving them in scope.
    fn binders(&mut self, bs: &[Binder]) -> Result<Vec<(Name, Term)>, CheckError> {
        let mut out = Vec::new();
        for b in bs {
            let ty = match &b.ty {
                Some(t) => self.expr(t)?,
                None => {
                    return Err(err(
                        b.name.pos,
                        TypeError::IllFormedInductive {
                            name: Name::new(&b.name.name),
                            reason: "binder needs a type annotation".into(),
                        },
                    ))
                }
            };
            let x = self.push(&b.name);
            out.push((x, ty));
        }
        Ok(out)
    }

    fn expr(&mut self, e: &Expr) -> Result<Term, CheckError> {
        match e {
            Expr::Var(id) => self.resolve(id),
            Expr::Sort(_, s) => Ok(Term::Sort(*s)),
            Expr::Forall(bs, body) => {
                let bs2 = self.binders(bs)?;
                let body = self.expr(body);
                self.pop(bs2.len());
                Ok(close_prods(&bs2, body?))
            }
            Expr::Fun(bs, body) => {
                let bs2 = self.binders(bs)?;
                let body = self.expr(body);
                self.pop(bs2.len());
                Ok(close_lams(&bs2, body?))
            }
            Expr::Arrow(a, b) => Ok(Term::arrow(self.expr(a)?, self.expr(b)?)),
            Expr::App(f, args) => {
                let mut t = self.expr(f)?;
                for a in args {
                    t = Term::app(t, self.expr(a)?);
                }
                Ok(t)
            }
            Expr::Match(m) => {
                let base = self.scope.len();
                let r = self.matche(m);
                self.scope.truncate(base);
                r
            }
            Expr::Fix(f) => {
                let base = self.scope.len();
                let r = self.fix(f);
                self.scope.truncate(base);
                r
            }
        }
    }

    fn matche(&mut self, m: &Match) -> Result<Term, CheckError> {
        let scrutinee = self.expr(&m.scrutinee)?;
        let ind = Name::new(&m.ind.name);
        let decl = self
            .env
            .inductive(&ind)
            .cloned()
            .ok_or_else(|| err(m.ind.pos, TypeError::UnboundVariable(ind.clone())))?;
        let p = decl.params;
        if m.items.len() < p {
            return Err(err(
                m.pos,
                TypeError::ArityMismatch {
                    what: format!("parameters of `{}` after `in`", ind),
                    expected: p,
                    found: m.items.len(),
                },
            ));
        }
        let mut params = Vec::with_capacity(p);
        for item in &m.items[..p] {
            match item {
                InItem::Term(e) => params.push(self.expr(e)?),
                InItem::Binder(b) => {
                    return Err(err(
                        b.name.pos,
                        TypeError::ArityMismatch {
                            what: format!("parameters of `{}` before the first index binder", ind),
                            expected: p,
                            found: params.len(),
                        },
                    ))
                }
            }
        }

        let motive = match &m.motive {
            Motive::Using(e) => {
                if m.items.len() != p {
                    return Err(err(
                        m.pos,
                        TypeError::ArityMismatch {
                            what: format!("parameters of `{}` in a `using` match", ind),
                            expected: p,
                            found: m.items.len(),
                        },
                    ));
                }
                self.expr(e)?
            }
            Motive::Return { as_name, body } => {
                let base = self.scope.len();
                let r = self.return_motive(&decl, &params, &m.items[p..], as_name.as_ref(), body, m.pos);
                self.scope.truncate(base);
                r?
            }
        };

        let mut branches = Vec::with_capacity(m.branches.len());
        for br in &m.branches {
            let base = self.scope.len();
            let r = self.branch(&decl, &params, br);
            self.scope.truncate(base);
            branches.push(r?);
        }
        // Branches may be written in any order.
        branches.sort_by_key(|b| decl.ctor_index(&b.ctor));
        Ok(Term::case(ind, scrutinee, params, motive, branches))
    }

    fn return_motive(
        &mut self,
        decl: &InductiveDecl,
        params: &[Term],
        items: &[InItem],
        as_name: Option<&Ident>,
        body: &Expr,
        pos: Pos,
    ) -> Result<Term, CheckError> {
        let mut tele = instantiate(&decl.arity, params);
        let mut binders = Vec::new();
        for item in items {
            let Term::Prod(y, dom, rest) = &tele else {
                return Err(err(
                    pos,
                    TypeError::ArityMismatch {
                        what: format!("indices of `{}` after `in`", decl.name),
                        expected: binders.len(),
                        found: items.len(),
                    },
                ));
            };
            let (id, ty) = match item {
                InItem::Binder(b) => (&b.name, b.ty.as_ref().map(|t| self.expr(t)).transpose()?),
                InItem::Term(Expr::Var(id)) => (id, None),
                InItem::Term(e) => {
                    return Err(err(
                        e.pos(),
                        TypeError::ArityMismatch {
                            what: format!("arguments of `{}` (indices must be binders)", decl.name),
                            expected: decl.params,
                            found: decl.params + binders.len() + 1,
                        },
                    ))
                }
            };
            let ty = ty.unwrap_or_else(|| (**dom).clone());
            let x = self.push(id);
            tele = subst(rest, y, &Term::Var(x.clone()));
            binders.push((x, ty));
        }
        if let Term::Prod(..) = tele {
            let missing = count_prods(&tele);
            return Err(err(
                pos,
                TypeError::ArityMismatch {
                    what: format!("indices of `{}` after `in`", decl.name),
                    expected: binders.len() + missing,
                    found: binders.len(),
                },
            ));
        }
        let scrut_ty = Term::apps(
            Term::Ind(decl.name.clone()),
            params.iter().cloned().chain(binders.iter().map(|(x, _)| Term::Var(x.clone()))),
        );
        let anon = Ident {
            pos,
            name: "_".into(),
        };
        let x = self.push(as_name.unwrap_or(&anon));
        binders.push((x, scrut_ty));
        let body = self.expr(body)?;
        Ok(close_lams(&binders, body))
    }

    fn branch(&mut self, decl: &InductiveDecl, params: &[Term], br: &MatchBranch) -> Result<Branch, CheckError> {
        let ctor = Name::new(&br.ctor.name);
        let Some(k) = decl.ctor_index(&ctor) else {
            return Err(err(
                br.ctor.pos,
                TypeError::IllFormedInductive {
                    name: decl.name.clone(),
                    reason: format!("`{}` is not a constructor of `{}`", ctor, decl.name),
                },
            ));
        };
        let mut tele = Some(instantiate(&decl.constructors[k].1, params));
        let mut binders = Vec::new();
        for b in &br.args {
            let declared = match tele.take() {
                Some(Term::Prod(y, dom, rest)) => Some((y, dom, rest)),
                _ => None,
            };
            let ty = match (&b.ty, &declared) {
                (Some(t), _) => self.expr(t)?,
                (None, Some((_, dom, _))) => (**dom).clone(),
                (None, None) => {
                    return Err(err(
                        b.name.pos,
                        TypeError::ArityMismatch {
                            what: format!("arguments of constructor `{}`", ctor),
                            expected: binders.len(),
                            found: br.args.len(),
                        },
                    ))
                }
            };
            let x = self.push(&b.name);
            if let Some((y, _, rest)) = declared {
                tele = Some(subst(&rest, &y, &Term::Var(x.clone())));
            }
            binders.push((x, ty));
        }
        let body = self.expr(&br.body)?;
        Ok(Branch {
            ctor,
            body: close_lams(&binders, body),
        })
    }

    fn fix(&mut self, f: &Fix) -> Result<Term, CheckError> {
        let rec_arg = match &f.struct_arg {
            StructArg::Index(pos, n) => {
                let limit = if f.binders.is_empty() { u32::MAX } else { f.binders.len() as u32 };
                if *n == 0 || *n > limit {
                    return Err(err(
                        *pos,
                        TypeError::GuardViolation {
                            name: Name::new(&f.name.name),
                            reason: format!("no argument number {}", n),
                        },
                    ));
                }
                (*n - 1) as usize
            }
            StructArg::Name(id) => f.binders.iter().rposition(|b| b.name.name == id.name).ok_or_else(|| {
                err(
                    id.pos,
                    TypeError::GuardViolation {
                        name: Name::new(&f.name.name),
                        reason: format!("`{}` is not one of its arguments", id.name),
                    },
                )
            })?,
        };
        if f.binders.is_empty() {
            let ty = self.expr(&f.ty)?;
            let name = self.push(&f.name);
            let body = self.expr(&f.body)?;
            return Ok(Term::fix(name, ty, body, rec_arg));
        }
        let bs = self.binders(&f.binders)?;
        let ret = self.expr(&f.ty)?;
        self.pop(bs.len());
        let ty = close_prods(&bs, ret);
        let name = self.push(&f.name);
        for ((x, _), b) in bs.iter().zip(&f.binders) {
            self.scope.push((b.name.name.clone(), x.clone()));
        }
        let inner = self.expr(&f.body)?;
        Ok(Term::fix(name, ty, close_lams(&bs, inner), rec_arg))
    }
}

/// Strips the leading parameter binders of a telescope, substituting the given parameters.
fn instantiate(t: &Term, params: &[Term]) -> Term {
    let mut t = t.clone();
    for q in params {
        if let Term::Prod(x, _, rest) = &t {
            t = subst(rest, x, q);
        }
    }
    t
}

fn count_prods(t: &Term) -> usize {
    let mut n = 0;
    let mut t = t;
    while let Term::Prod(_, _, b) = t {
        n += 1;
        t = b;
    }
    n
}
