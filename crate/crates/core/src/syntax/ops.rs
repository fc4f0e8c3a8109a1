use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Branch, Name, Term};

/// The free variables of `t`. Global names are not variables.
pub fn free_vars(t: &Term) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    let mut bound = Vec::new();
    collect_free(t, &mut bound, &mut out);
    out
}

fn collect_free(t: &Term, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match t {
        Term::Var(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        Term::Sort(_) | Term::Ind(_) | Term::Constr(_) | Term::Const(_) => {}
        Term::Prod(x, a, b) | Term::Lam(x, a, b) => {
            collect_free(a, bound, out);
            bound.push(x.clone());
            collect_free(b, bound, out);
            bound.pop();
        }
        Term::App(f, a) => {
            collect_free(f, bound, out);
            collect_free(a, bound, out);
        }
        Term::Case {
            scrutinee,
            params,
            motive,
            branches,
            ..
        } => {
            collect_free(scrutinee, bound, out);
            for p in params {
                collect_free(p, bound, out);
            }
            collect_free(motive, bound, out);
            for b in branches {
                collect_free(&b.body, bound, out);
            }
        }
        Term::Fix { name, ty, body, .. } => {
            collect_free(ty, bound, out);
            bound.push(name.clone());
            collect_free(body, bound, out);
            bound.pop();
        }
    }
}

/// Whether `x` occurs free in `t`.
pub(crate) fn occurs_free(x: &Name, t: &Term) -> bool {
    match t {
        Term::Var(y) => x == y,
        Term::Sort(_) | Term::Ind(_) | Term::Constr(_) | Term::Const(_) => false,
        Term::Prod(y, a, b) | Term::Lam(y, a, b) => occurs_free(x, a) || (x != y && occurs_free(x, b)),
        Term::App(f, a) => occurs_free(x, f) || occurs_free(x, a),
        Term::Case {
            scrutinee,
            params,
            motive,
            branches,
            ..
        } => {
            occurs_free(x, scrutinee)
                || params.iter().any(|p| occurs_free(x, p))
                || occurs_free(x, motive)
                || branches.iter().any(|b| occurs_free(x, &b.body))
        }
        Term::Fix { name, ty, body, .. } => occurs_free(x, ty) || (x != name && occurs_free(x, body)),
    }
}

/// Whether the global `name` (inductive, constructor or definition) occurs in `t`.
pub fn occurs_global(name: &Name, t: &Term) -> bool {
    match t {
        Term::Ind(n) | Term::Constr(n) | Term::Const(n) => n == name,
        Term::Var(_) | Term::Sort(_) => false,
        Term::Prod(_, a, b) | Term::Lam(_, a, b) | Term::App(a, b) => occurs_global(name, a) || occurs_global(name, b),
        Term::Case {
            ind,
            scrutinee,
            params,
            motive,
            branches,
        } => {
            ind == name
                || occurs_global(name, scrutinee)
                || params.iter().any(|p| occurs_global(name, p))
                || occurs_global(name, motive)
                || branches.iter().any(|b| &b.ctor == name || occurs_global(name, &b.body))
        }
        Term::Fix { ty, body, .. } => occurs_global(name, ty) || occurs_global(name, body),
    }
}

/// A variant of `base` for which `taken` is false. Trailing digits of `base`
/// are replaced by a counter, so `y` yields `y1`, `y2`, ...
pub fn fresh_name(base: &Name, taken: impl Fn(&Name) -> bool) -> Name {
    let stem = base.as_str().trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "x" } else { stem };
    (1u64..)
        .map(|i| Name::new(&format!("{}{}", stem, i)))
        .find(|n| !taken(n))
        .expect("unbounded counter")
}

/// Capture-avoiding substitution of `v` for the free occurrences of `x` in `t`.
pub fn subst(t: &Term, x: &Name, v: &Term) -> Term {
    if !occurs_free(x, t) {
        return t.clone();
    }
    let fv = free_vars(v);
    Subst { x, v, fv: &fv }.go(t)
}

struct Subst<'a> {
    x: &'a Name,
    v: &'a Term,
    fv: &'a BTreeSet<Name>,
}

impl Subst<'_> {
    fn go(&self, t: &Term) -> Term {
        match t {
            Term::Var(y) if y == self.x => self.v.clone(),
            Term::Var(_) | Term::Sort(_) | Term::Ind(_) | Term::Constr(_) | Term::Const(_) => t.clone(),
            Term::Prod(y, a, b) => {
                let a = self.go(a);
                let (y, b) = self.under(y, b);
                Term::Prod(y, Arc::new(a), Arc::new(b))
            }
            Term::Lam(y, a, b) => {
                let a = self.go(a);
                let (y, b) = self.under(y, b);
                Term::Lam(y, Arc::new(a), Arc::new(b))
            }
            Term::App(f, a) => Term::App(Arc::new(self.go(f)), Arc::new(self.go(a))),
            Term::Case {
                ind,
                scrutinee,
                params,
                motive,
                branches,
            } => Term::Case {
                ind: ind.clone(),
                scrutinee: Arc::new(self.go(scrutinee)),
                params: params.iter().map(|p| self.go(p)).collect(),
                motive: Arc::new(self.go(motive)),
                branches: branches
                    .iter()
                    .map(|b| Branch {
                        ctor: b.ctor.clone(),
                        body: self.go(&b.body),
                    })
                    .collect(),
            },
            Term::Fix { name, ty, body, rec_arg } => {
                let ty = self.go(ty);
                let (name, body) = self.under(name, body);
                Term::Fix {
                    name,
                    ty: Arc::new(ty),
                    body: Arc::new(body),
                    rec_arg: *rec_arg,
                }
            }
        }
    }

    /// Substitutes under a binder `y`, renaming it when it would capture a
    /// free variable of the substituted value.
    fn under(&self, y: &Name, body: &Term) -> (Name, Term) {
        if y == self.x || !occurs_free(self.x, body) {
            return (y.clone(), body.clone());
        }
        if self.fv.contains(y) {
            let body_fv = free_vars(body);
            let z = fresh_name(y, |n| self.fv.contains(n) || body_fv.contains(n) || n == self.x);
            let renamed = subst(body, y, &Term::Var(z.clone()));
            (z, self.go(&renamed))
        } else {
            (y.clone(), self.go(body))
        }
    }
}

/// Equality up to consistent renaming of bound variables.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    Alpha::default().eq(a, b)
}

#[derive(Default)]
struct Alpha {
    left: Vec<Name>,
    right: Vec<Name>,
}

impl Alpha {
    fn eq(&mut self, a: &Term, b: &Term) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => {
                let i = self.left.iter().rposition(|n| n == x);
                let j = self.right.iter().rposition(|n| n == y);
                match (i, j) {
                    (Some(i), Some(j)) => i == j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (Term::Sort(s), Term::Sort(t)) => s == t,
            (Term::Ind(x), Term::Ind(y)) | (Term::Constr(x), Term::Constr(y)) | (Term::Const(x), Term::Const(y)) => x == y,
            (Term::Prod(x, a1, b1), Term::Prod(y, a2, b2)) | (Term::Lam(x, a1, b1), Term::Lam(y, a2, b2)) => {
                self.eq(a1, a2) && self.binder(x, b1, y, b2)
            }
            (Term::App(f1, a1), Term::App(f2, a2)) => self.eq(f1, f2) && self.eq(a1, a2),
            (
                Term::Case {
                    ind: i1,
                    scrutinee: s1,
                    params: p1,
                    motive: m1,
                    branches: br1,
                },
                Term::Case {
                    ind: i2,
                    scrutinee: s2,
                    params: p2,
                    motive: m2,
                    branches: br2,
                },
            ) => {
                i1 == i2
                    && p1.len() == p2.len()
                    && br1.len() == br2.len()
                    && self.eq(s1, s2)
                    && p1.iter().zip(p2).all(|(x, y)| self.eq(x, y))
                    && self.eq(m1, m2)
                    && br1.iter().zip(br2).all(|(x, y)| x.ctor == y.ctor && self.eq(&x.body, &y.body))
            }
            (
                Term::Fix {
                    name: n1,
                    ty: t1,
                    body: b1,
                    rec_arg: k1,
                },
                Term::Fix {
                    name: n2,
                    ty: t2,
                    body: b2,
                    rec_arg: k2,
                },
            ) => k1 == k2 && self.eq(t1, t2) && self.binder(n1, b1, n2, b2),
            _ => false,
        }
    }

    fn binder(&mut self, x: &Name, a: &Term, y: &Name, b: &Term) -> bool {
        self.left.push(x.clone());
        self.right.push(y.clone());
        let r = self.eq(a, b);
        self.left.pop();
        self.right.pop();
        r
    }
}
