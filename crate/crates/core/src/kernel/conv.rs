//! Conversion and cumulativity.
//!
//! Conversion compares weak-head normal forms structurally, unfolding
//! definitions lazily. When two terms still differ and one side is a
//! fixpoint application stuck on a variable, the fixpoint is unfolded once
//! and the comparison retried, with a small fuel bound so the check always
//! terminates.

use crate::syntax::{alpha_eq, fresh_name, subst, GlobalEnv, Name, Term};

use super::reduce::{unfold_fix, whnf, whnf_with};
use super::sorts::subsort;

const FIX_UNFOLD_FUEL: u32 = 3;

/// Definitional equality (beta, iota, fix, delta, up to alpha; no eta).
pub fn conv(env: &GlobalEnv, t1: &Term, t2: &Term) -> bool {
    Conv { env }.conv(t1, t2, FIX_UNFOLD_FUEL)
}

/// Cumulative subtyping: conversion, sort inclusion, and products with
/// convertible domains and subtyped codomains.
pub fn subtype(env: &GlobalEnv, t1: &Term, t2: &Term) -> bool {
    Conv { env }.subtype(t1, t2)
}

struct Conv<'e> {
    env: &'e GlobalEnv,
}

impl Conv<'_> {
    fn conv(&self, a: &Term, b: &Term, fuel: u32) -> bool {
        if alpha_eq(a, b) {
            return true;
        }
        let a = whnf_with(self.env, a, false);
        let b = whnf_with(self.env, b, false);
        if self.conv_whnf(&a, &b, fuel) {
            return true;
        }
        match (self.unfold_const(&a), self.unfold_const(&b)) {
            (Some(a), Some(b)) => return self.conv(&a, &b, fuel),
            (Some(a), None) => return self.conv(&a, &b, fuel),
            (None, Some(b)) => return self.conv(&a, &b, fuel),
            (None, None) => {}
        }
        if fuel > 0 {
            if let Some(a2) = unfold_stuck_fix(&a) {
                if self.conv(&a2, &b, fuel - 1) {
                    return true;
                }
            }
            if let Some(b2) = unfold_stuck_fix(&b) {
                if self.conv(&a, &b2, fuel - 1) {
                    return true;
                }
            }
        }
        false
    }

    fn unfold_const(&self, t: &Term) -> Option<Term> {
        let (head, args) = t.spine();
        match head {
            Term::Const(d) => {
                let def = self.env.definition(d)?;
                Some(Term::apps(def.body.clone(), args.into_iter().cloned()))
            }
            _ => None,
        }
    }

    fn conv_whnf(&self, a: &Term, b: &Term, fuel: u32) -> bool {
        match (a, b) {
            (Term::Sort(s), Term::Sort(t)) => s == t,
            (Term::Var(x), Term::Var(y)) => x == y,
            (Term::Ind(x), Term::Ind(y)) | (Term::Constr(x), Term::Constr(y)) | (Term::Const(x), Term::Const(y)) => x == y,
            (Term::Prod(x, a1, b1), Term::Prod(y, a2, b2)) | (Term::Lam(x, a1, b1), Term::Lam(y, a2, b2)) => {
                self.conv(a1, a2, fuel) && self.under_binders(x, b1, y, b2, |s, l, r| s.conv(l, r, fuel))
            }
            (Term::App(..), Term::App(..)) => {
                let (h1, args1) = a.spine();
                let (h2, args2) = b.spine();
                args1.len() == args2.len()
                    && self.conv(h1, h2, fuel)
                    && args1.iter().zip(&args2).all(|(x, y)| self.conv(x, y, fuel))
            }
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
                    && self.conv(s1, s2, fuel)
                    && p1.iter().zip(p2).all(|(x, y)| self.conv(x, y, fuel))
                    && self.conv(m1, m2, fuel)
                    && br1
                        .iter()
                        .zip(br2)
                        .all(|(x, y)| x.ctor == y.ctor && self.conv(&x.body, &y.body, fuel))
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
            ) => k1 == k2 && self.conv(t1, t2, fuel) && self.under_binders(n1, b1, n2, b2, |s, l, r| s.conv(l, r, fuel)),
            _ => false,
        }
    }

    /// Compares two bodies under binders `x` and `y` by giving both the same name.
    fn under_binders(&self, x: &Name, b1: &Term, y: &Name, b2: &Term, cmp: impl Fn(&Self, &Term, &Term) -> bool) -> bool {
        if x == y {
            return cmp(self, b1, b2);
        }
        let z = if crate::syntax::free_vars(b2).contains(x) {
            let fv1 = crate::syntax::free_vars(b1);
            let fv2 = crate::syntax::free_vars(b2);
            fresh_name(x, |n| fv1.contains(n) || fv2.contains(n))
        } else {
            x.clone()
        };
        let zt = Term::Var(z.clone());
        let l = if &z == x { b1.clone() } else { subst(b1, x, &zt) };
        let r = subst(b2, y, &zt);
        cmp(self, &l, &r)
    }

    fn subtype(&self, a: &Term, b: &Term) -> bool {
        if self.conv(a, b, FIX_UNFOLD_FUEL) {
            return true;
        }
        let a = whnf(self.env, a);
        let b = whnf(self.env, b);
        match (&a, &b) {
            (Term::Sort(s), Term::Sort(t)) => subsort(*s, *t),
            (Term::Prod(x, a1, b1), Term::Prod(y, a2, b2)) => {
                self.conv(a1, a2, FIX_UNFOLD_FUEL) && self.under_binders(x, b1, y, b2, |s, l, r| s.subtype(l, r))
            }
            _ => false,
        }
    }
}

fn unfold_stuck_fix(t: &Term) -> Option<Term> {
    let (head, args) = t.spine();
    match head {
        Term::Fix { rec_arg, .. } if args.len() > *rec_arg => Some(Term::apps(unfold_fix(head), args.into_iter().cloned())),
        _ => None,
    }
}
