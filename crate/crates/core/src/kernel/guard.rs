//! Structural guard condition for fixpoints.
//!
//! Every recursive call must pass, as its decreasing argument, a variable
//! bound by a case branch on the decreasing parameter (or on such a
//! variable), and that branch variable must range over the same inductive
//! as the case.

use std::collections::BTreeSet;

use crate::syntax::{GlobalEnv, Name, Term};

use super::error::TypeError;

pub(crate) fn check_guard(env: &GlobalEnv, fix_name: &Name, rec_arg: usize, body: &Term) -> Result<(), TypeError> {
    let violation = |reason: String| TypeError::GuardViolation {
        name: fix_name.clone(),
        reason,
    };
    let mut t = body;
    let mut params = Vec::with_capacity(rec_arg + 1);
    for _ in 0..=rec_arg {
        match t {
            Term::Lam(x, _, b) => {
                params.push(x.clone());
                t = b;
            }
            _ => return Err(violation(format!("body must start with {} abstractions", rec_arg + 1))),
        }
    }
    if params.contains(fix_name) {
        return Ok(());
    }
    let guard = Guard {
        env,
        fix_name,
        rec_arg,
    };
    let scope = Scope {
        roots: BTreeSet::from([params[rec_arg].clone()]),
        subterms: BTreeSet::new(),
    };
    guard.go(t, &scope).map_err(violation)
}

struct Guard<'a> {
    env: &'a GlobalEnv,
    fix_name: &'a Name,
    rec_arg: usize,
}

#[derive(Clone)]
struct Scope {
    roots: BTreeSet<Name>,
    subterms: BTreeSet<Name>,
}

impl Scope {
    fn bind(&self, x: &Name) -> Scope {
        let mut s = self.clone();
        s.roots.remove(x);
        s.subterms.remove(x);
        s
    }

    fn can_destruct(&self, x: &Name) -> bool {
        self.roots.contains(x) || self.subterms.contains(x)
    }
}

impl Guard<'_> {
    fn go(&self, t: &Term, scope: &Scope) -> Result<(), String> {
        let (head, args) = t.spine();
        if let Term::Var(f) = head {
            if f == self.fix_name {
                if args.len() <= self.rec_arg {
                    return Err(format!(
                        "recursive call with {} argument(s), the decreasing argument is number {}",
                        args.len(),
                        self.rec_arg + 1
                    ));
                }
                match args[self.rec_arg] {
                    Term::Var(s) if scope.subterms.contains(s) => {}
                    other => return Err(format!("recursive call on `{}`, which is not a structural subterm", other)),
                }
                return args.iter().try_for_each(|a| self.go(a, scope));
            }
        }
        if !args.is_empty() {
            self.go(head, scope)?;
            return args.iter().try_for_each(|a| self.go(a, scope));
        }
        match t {
            Term::Var(_) | Term::Sort(_) | Term::Ind(_) | Term::Constr(_) | Term::Const(_) => Ok(()),
            Term::App(..) => unreachable!("applications are handled through their spine"),
            Term::Prod(x, a, b) | Term::Lam(x, a, b) => {
                self.go(a, scope)?;
                self.under(x, b, scope)
            }
            Term::Fix { name, ty, body, .. } => {
                self.go(ty, scope)?;
                self.under(name, body, scope)
            }
            Term::Case {
                ind,
                scrutinee,
                params,
                motive,
                branches,
            } => {
                self.go(scrutinee, scope)?;
                for p in params {
                    self.go(p, scope)?;
                }
                self.go(motive, scope)?;
                let destructs = matches!(&**scrutinee, Term::Var(s) if scope.can_destruct(s));
                let decl = self.env.inductive(ind);
                for br in branches {
                    let nargs = match (destructs, decl) {
                        (true, Some(d)) => d
                            .ctor_index(&br.ctor)
                            .map(|i| count_args(&d.constructors[i].1, d.params))
                            .unwrap_or(0),
                        _ => 0,
                    };
                    self.branch(ind, &br.body, nargs, scope)?;
                }
                Ok(())
            }
        }
    }

    fn under(&self, x: &Name, body: &Term, scope: &Scope) -> Result<(), String> {
        if x == self.fix_name {
            return Ok(());
        }
        self.go(body, &scope.bind(x))
    }

    /// Walks the first `nargs` abstractions of a branch, marking those that
    /// range over `ind` as structural subterms.
    fn branch(&self, ind: &Name, body: &Term, nargs: usize, scope: &Scope) -> Result<(), String> {
        if nargs == 0 {
            return self.go(body, scope);
        }
        match body {
            Term::Lam(x, a, b) => {
                self.go(a, scope)?;
                if x == self.fix_name {
                    return Ok(());
                }
                let mut inner = scope.bind(x);
                if matches!(a.spine().0, Term::Ind(i) if i == ind) {
                    inner.subterms.insert(x.clone());
                }
                self.branch(ind, b, nargs - 1, &inner)
            }
            _ => self.go(body, scope),
        }
    }
}

fn count_args(ctor_ty: &Term, params: usize) -> usize {
    let mut n: usize = 0;
    let mut t = ctor_ty;
    while let Term::Prod(_, _, b) = t {
        n += 1;
        t = b;
    }
    n.saturating_sub(params)
}
