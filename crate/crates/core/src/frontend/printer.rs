//! Pretty printing of terms and declarations in the surface syntax.
//!
//! The output re-parses to an alpha-equivalent term: binders whose name
//! would be read back as something else (a keyword, a sort, or a global
//! referenced in their scope) are renamed first.

use std::fmt::{self, Write as _};

use crate::syntax::{fresh_name, free_vars, occurs_global, subst, Branch, InductiveDecl, Name, Term};

use super::lexer::is_keyword;

const TOP: u8 = 0;
const APP: u8 = 1;
const ATOM: u8 = 2;

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        term(&mut out, self, TOP);
        f.write_str(&out)
    }
}

/// Prints an inductive declaration as `inductive I (params) : arity := c : C | ...`,
/// with constructor types shown relative to the parameters.
pub fn print_inductive(d: &InductiveDecl) -> String {
    let mut out = String::new();
    let _ = write!(out, "inductive {}", d.name);
    let mut arity = d.arity.clone();
    let mut ctors: Vec<(Name, Term)> = d.constructors.clone();
    let mut taken: Vec<Name> = Vec::new();
    for _ in 0..d.params {
        let Term::Prod(x, dom, rest) = &arity else { break };
        let mut avoid = free_vars(rest);
        for (_, c) in &ctors {
            avoid.extend(free_vars(c));
        }
        let p = if needs_rename(x, rest) || taken.contains(x) {
            let base = if x.is_anonymous() { Name::new("P") } else { x.clone() };
            fresh_name(&base, |n| avoid.contains(n) || taken.contains(n) || occurs_global(n, rest) || is_keyword(n.as_str()))
        } else {
            x.clone()
        };
        let _ = write!(out, " ({} : ", p);
        term(&mut out, dom, TOP);
        out.push(')');
        let pv = Term::Var(p.clone());
        let next_arity = subst(rest, x, &pv);
        arity = next_arity;
        for (_, c) in ctors.iter_mut() {
            if let Term::Prod(y, _, crest) = &*c {
                let next = subst(crest, y, &pv);
                *c = next;
            }
        }
        taken.push(p);
    }
    out.push_str(" : ");
    term(&mut out, &arity, TOP);
    out.push_str(" :=");
    for (i, (c, cty)) in ctors.iter().enumerate() {
        out.push_str(if i == 0 { " " } else { " | " });
        let _ = write!(out, "{} : ", c);
        term(&mut out, cty, TOP);
    }
    out.push('.');
    out
}

fn needs_rename(x: &Name, body: &Term) -> bool {
    let s = x.as_str();
    (x.is_anonymous() && free_vars(body).contains(x)) || is_keyword(s) || occurs_global(x, body)
}

/// Picks a printable name for binder `x` over `body`, substituting when it changes.
fn binder(x: &Name, body: &Term) -> (Name, Term) {
    if !needs_rename(x, body) {
        return (x.clone(), body.clone());
    }
    let fv = free_vars(body);
    let base = if x.is_anonymous() || is_keyword(x.as_str()) { Name::new("x") } else { x.clone() };
    let z = fresh_name(&base, |n| fv.contains(n) || occurs_global(n, body) || is_keyword(n.as_str()));
    let b = subst(body, x, &Term::Var(z.clone()));
    (z, b)
}

fn paren(out: &mut String, open: bool, f: impl FnOnce(&mut String)) {
    if open {
        out.push('(');
    }
    f(out);
    if open {
        out.push(')');
    }
}

fn term(out: &mut String, t: &Term, prec: u8) {
    match t {
        Term::Var(x) | Term::Ind(x) | Term::Constr(x) | Term::Const(x) => out.push_str(x.as_str()),
        Term::Sort(s) => {
            let _ = write!(out, "{}", s);
        }
        Term::App(..) => paren(out, prec >= ATOM, |out| {
            let (head, args) = t.spine();
            term(out, head, ATOM);
            for a in args {
                out.push(' ');
                term(out, a, ATOM);
            }
        }),
        Term::Prod(x, a, b) if !free_vars(b).contains(x) => paren(out, prec > TOP, |out| {
            term(out, a, APP);
            out.push_str(" -> ");
            term(out, b, TOP);
        }),
        Term::Prod(..) => paren(out, prec > TOP, |out| {
            out.push_str("forall");
            let body = telescope(out, t, true);
            out.push_str(", ");
            term(out, &body, TOP);
        }),
        Term::Lam(..) => paren(out, prec > TOP, |out| {
            out.push_str("fun");
            let body = telescope(out, t, false);
            out.push_str(" => ");
            term(out, &body, TOP);
        }),
        Term::Case { .. } => case(out, t),
        Term::Fix { .. } => paren(out, prec > TOP, |out| fix(out, t)),
    }
}

/// Prints the binder groups of consecutive dependent products (or
/// lambdas) and returns the remaining body.
fn telescope(out: &mut String, t: &Term, prod: bool) -> Term {
    let mut groups: Vec<(Vec<Name>, Term)> = Vec::new();
    let mut cur = t.clone();
    loop {
        let (x, a, b) = match (&cur, prod) {
            (Term::Prod(x, a, b), true) if free_vars(b).contains(x) => (x, a, b),
            (Term::Lam(x, a, b), false) => (x, a, b),
            _ => break,
        };
        let (x, b) = binder(x, b);
        let a = (**a).clone();
        match groups.last_mut() {
            Some((names, dom)) if *dom == a && !names.iter().any(|n| free_vars(&a).contains(n)) => names.push(x),
            _ => groups.push((vec![x], a)),
        }
        cur = b;
    }
    for (names, dom) in groups {
        out.push_str(" (");
        for n in &names {
            out.push_str(n.as_str());
            out.push(' ');
        }
        out.push_str(": ");
        term(out, &dom, TOP);
        out.push(')');
    }
    cur
}

fn case(out: &mut String, t: &Term) {
    let Term::Case {
        ind,
        scrutinee,
        params,
        motive,
        branches,
    } = t
    else {
        unreachable!()
    };
    out.push_str("match ");
    term(out, scrutinee, TOP);
    match sugared_motive(ind, params, motive) {
        Some((indices, x, ret)) => {
            let _ = write!(out, " as {} in {}", x, ind);
            for p in params {
                out.push(' ');
                term(out, p, ATOM);
            }
            for (y, a) in &indices {
                let _ = write!(out, " ({} : ", y);
                term(out, a, TOP);
                out.push(')');
            }
            out.push_str(" return ");
            term(out, &ret, TOP);
        }
        None => {
            let _ = write!(out, " in {}", ind);
            for p in params {
                out.push(' ');
                term(out, p, ATOM);
            }
            out.push_str(" using ");
            term(out, motive, TOP);
        }
    }
    out.push_str(" with");
    for br in branches {
        branch(out, br);
    }
    out.push_str(" end");
}

type Telescope = Vec<(Name, Term)>;

/// Splits a motive `fun (y1 : B1) .. (yn : Bn) (x : I params y1 .. yn) => T`
/// into its parts when it can be written with `as`/`in`/`return`.
fn sugared_motive(ind: &Name, params: &[Term], motive: &Term) -> Option<(Telescope, Name, Term)> {
    let mut binders = Vec::new();
    let mut cur = motive;
    while let Term::Lam(x, a, b) = cur {
        binders.push((x.clone(), (**a).clone()));
        cur = b;
    }
    let body = cur.clone();
    let (x, scrut_ty) = binders.pop()?;
    let param_fv: Vec<_> = params.iter().flat_map(free_vars).collect();
    let mut seen: Vec<&Name> = Vec::new();
    for (y, _) in &binders {
        if param_fv.contains(y) || seen.contains(&y) || needs_rename(y, &body) || is_keyword(y.as_str()) {
            return None;
        }
        seen.push(y);
    }
    if needs_rename(&x, &body) || binders.iter().any(|(y, _)| y == &x) {
        return None;
    }
    let expected = Term::apps(
        Term::Ind(ind.clone()),
        params.iter().cloned().chain(binders.iter().map(|(y, _)| Term::Var(y.clone()))),
    );
    if scrut_ty != expected {
        return None;
    }
    for (i, (y, a)) in binders.iter().enumerate() {
        if occurs_global(y, a) || binders[i + 1..].iter().any(|(_, b)| occurs_global(y, b)) || occurs_global(y, &scrut_ty) {
            return None;
        }
    }
    Some((binders, x, body))
}

fn branch(out: &mut String, br: &Branch) {
    let _ = write!(out, " | {}", br.ctor);
    let mut cur = br.body.clone();
    while let Term::Lam(x, a, b) = &cur {
        let (x, b) = binder(x, b);
        let _ = write!(out, " ({} : ", x);
        term(out, a, TOP);
        out.push(')');
        cur = b;
    }
    out.push_str(" => ");
    term(out, &cur, TOP);
}

fn fix(out: &mut String, t: &Term) {
    let Term::Fix { name, ty, body, rec_arg } = t else {
        unreachable!()
    };
    let (name, body) = binder(name, body);
    match sugared_fix(&name, ty, &body, *rec_arg) {
        Some((binders, ret, inner)) => {
            let _ = write!(out, "fix {}", name);
            for (x, a) in &binders {
                let _ = write!(out, " ({} : ", x);
                term(out, a, TOP);
                out.push(')');
            }
            let _ = write!(out, " {{struct {}}} : ", binders[*rec_arg].0);
            term(out, &ret, TOP);
            out.push_str(" := ");
            term(out, &inner, TOP);
        }
        None => {
            let _ = write!(out, "fix {} : ", name);
            term(out, ty, TOP);
            let _ = write!(out, " {{struct {}}} := ", rec_arg + 1);
            term(out, &body, TOP);
        }
    }
}

/// Shared binders of a fixpoint's type and body, when the two telescopes agree.
fn sugared_fix(name: &Name, ty: &Term, body: &Term, rec_arg: usize) -> Option<(Telescope, Term, Term)> {
    if free_vars(ty).contains(name) {
        return None;
    }
    let mut binders = Vec::new();
    let mut t = ty.clone();
    let mut b = body.clone();
    for _ in 0..=rec_arg {
        let (Term::Prod(x, a, trest), Term::Lam(y, a2, brest)) = (&t, &b) else {
            return None;
        };
        if x != y || a != a2 || x == name || x.is_anonymous() || needs_rename(x, trest) || needs_rename(x, brest) {
            return None;
        }
        binders.push((x.clone(), (**a).clone()));
        let (nt, nb) = ((**trest).clone(), (**brest).clone());
        t = nt;
        b = nb;
    }
    Some((binders, t, b))
}
