//! The translation itself: priming, the clause-wise translation of terms,
//! contexts and inductive declarations.

use std::collections::BTreeSet;

use crate::kernel::{beta_nf, declare_inductive, EliminationMode};
use crate::syntax::{fresh_name, free_vars, subst, Branch, Context, GlobalEnv, InductiveDecl, Name, Term};

use super::error::ParamError;
use super::names::{global, hat_sort, primed, triple_closure, witness, NameTriple};

/// Renames every variable, free or bound, to its primed copy. Globals are
/// left alone.
pub fn prime(t: &Term) -> Term {
    match t {
        Term::Var(x) => Term::Var(primed(x)),
        Term::Sort(_) | Term::Ind(_) | Term::Constr(_) | Term::Const(_) => t.clone(),
        Term::Prod(x, a, b) => Term::prod(primed(x), prime(a), prime(b)),
        Term::Lam(x, a, b) => Term::lam(primed(x), prime(a), prime(b)),
        Term::App(f, a) => Term::app(prime(f), prime(a)),
        Term::Case {
            ind,
            scrutinee,
            params,
            motive,
            branches,
        } => Term::case(
            ind.clone(),
            prime(scrutinee),
            params.iter().map(prime).collect(),
            prime(motive),
            branches
                .iter()
                .map(|b| Branch {
                    ctor: b.ctor.clone(),
                    body: prime(&b.body),
                })
                .collect(),
        ),
        Term::Fix { name, ty, body, rec_arg } => Term::fix(primed(name), prime(ty), prime(body), *rec_arg),
    }
}

/// The relation translation of `t`. `env` must hold the translations of
/// every inductive `t` eliminates.
pub fn translate(env: &GlobalEnv, t: &Term) -> Result<Term, ParamError> {
    Translator { env }.go(&name_anonymous(t))
}

/// Gives every anonymous binder of `t` a distinct name `x1`, `x2`, ...
/// not otherwise used in `t`, so translated telescopes read naturally.
fn name_anonymous(t: &Term) -> Term {
    let mut used = BTreeSet::new();
    collect_names(t, &mut used);
    let mut namer = Namer { used, next: 1 };
    namer.go(t)
}

fn collect_names(t: &Term, out: &mut BTreeSet<Name>) {
    match t {
        Term::Var(x) => {
            out.insert(x.clone());
        }
        Term::Sort(_) | Term::Ind(_) | Term::Constr(_) | Term::Const(_) => {}
        Term::Prod(x, a, b) | Term::Lam(x, a, b) => {
            out.insert(x.clone());
            collect_names(a, out);
            collect_names(b, out);
        }
        Term::App(f, a) => {
            collect_names(f, out);
            collect_names(a, out);
        }
        Term::Case {
            scrutinee,
            params,
            motive,
            branches,
            ..
        } => {
            collect_names(scrutinee, out);
            params.iter().for_each(|p| collect_names(p, out));
            collect_names(motive, out);
            branches.iter().for_each(|b| collect_names(&b.body, out));
        }
        Term::Fix { name, ty, body, .. } => {
            out.insert(name.clone());
            collect_names(ty, out);
            collect_names(body, out);
        }
    }
}

struct Namer {
    used: BTreeSet<Name>,
    next: usize,
}

impl Namer {
    fn binder(&mut self, x: &Name) -> Name {
        if !x.is_anonymous() {
            return x.clone();
        }
        loop {
            let n = Name::new(&format!("x{}", self.next));
            self.next += 1;
            if self.used.insert(n.clone()) {
                return n;
            }
        }
    }

    fn go(&mut self, t: &Term) -> Term {
        match t {
            Term::Var(_) | Term::Sort(_) | Term::Ind(_) | Term::Constr(_) | Term::Const(_) => t.clone(),
            Term::Prod(x, a, b) => {
                let x = self.binder(x);
                Term::prod(x, self.go(a), self.go(b))
            }
            Term::Lam(x, a, b) => {
                let x = self.binder(x);
                Term::lam(x, self.go(a), self.go(b))
            }
            Term::App(f, a) => Term::app(self.go(f), self.go(a)),
            Term::Case {
                ind,
                scrutinee,
                params,
                motive,
                branches,
            } => Term::case(
                ind.clone(),
                self.go(scrutinee),
                params.iter().map(|p| self.go(p)).collect(),
                self.go(motive),
                branches
                    .iter()
                    .map(|b| Branch {
                        ctor: b.ctor.clone(),
                        body: self.go(&b.body),
                    })
                    .collect(),
            ),
            Term::Fix { name, ty, body, rec_arg } => {
                let name = self.binder(name);
                Term::fix(name, self.go(ty), self.go(body), *rec_arg)
            }
        }
    }
}

/// `[⟨⟩] = ⟨⟩` and `[Γ, x : A] = [Γ], x : A, x' : A', x_R : [A] x x'`, with
/// the witness types beta-normalized.
pub fn translate_context(env: &GlobalEnv, ctx: &Context) -> Result<Context, ParamError> {
    let mut out = Context::new();
    for (x, a) in ctx.iter() {
        let n = NameTriple::of(x);
        let rel = beta_nf(&Term::apps(translate(env, a)?, [Term::Var(n.base.clone()), Term::Var(n.primed.clone())]));
        out.push(n.base, a.clone());
        out.push(n.primed, prime(a));
        out.push(n.witness, rel);
    }
    Ok(out)
}

/// The translation of an inductive declaration.
#[derive(Clone, Debug, PartialEq)]
pub struct TranslatedInductive {
    pub source: Name,
    pub relation: InductiveDecl,
    /// Each constructor paired with its translation.
    pub constructors: Vec<(Name, Name)>,
}

/// Builds `[I]` with arity `[A] I I` and constructors `[c_i] : [C_i] c_i c_i`
/// (beta-normalized), and checks it against `env`, which must already hold
/// `d` and the translations of everything `d` mentions.
pub fn translate_inductive(env: &GlobalEnv, d: &InductiveDecl) -> Result<TranslatedInductive, ParamError> {
    let ind = Term::Ind(d.name.clone());
    let arity = beta_nf(&Term::apps(translate(env, &d.arity)?, [ind.clone(), ind]));
    let mut ctors = Vec::with_capacity(d.constructors.len());
    let mut map = Vec::with_capacity(d.constructors.len());
    for (c, cty) in &d.constructors {
        let ct = Term::Constr(c.clone());
        let ty = beta_nf(&Term::apps(translate(env, cty)?, [ct.clone(), ct]));
        ctors.push((global(c), ty));
        map.push((c.clone(), global(c)));
    }
    let relation = InductiveDecl {
        name: global(&d.name),
        params: 3 * d.params,
        arity,
        constructors: ctors,
    };
    let mut scratch = env.clone();
    declare_inductive(&mut scratch, relation.clone(), EliminationMode::Star).map_err(|error| ParamError::Translation {
        name: relation.name.clone(),
        error,
    })?;
    Ok(TranslatedInductive {
        source: d.name.clone(),
        relation,
        constructors: map,
    })
}

struct Translator<'e> {
    env: &'e GlobalEnv,
}

/// `base` itself when free, otherwise a fresh variant.
fn avoiding(base: Name, taken: impl Fn(&Name) -> bool) -> Name {
    if taken(&base) {
        fresh_name(&base, taken)
    } else {
        base
    }
}

/// A binder name whose triple avoids `avoid`.
fn pick(x: &Name, avoid: &BTreeSet<Name>) -> Name {
    let clash = |n: &Name| avoid.contains(n) || avoid.contains(&primed(n)) || avoid.contains(&witness(n));
    if !x.is_anonymous() && !clash(x) {
        return x.clone();
    }
    let base = if x.is_anonymous() { Name::new("x") } else { x.clone() };
    fresh_name(&base, clash)
}

/// Renames binder `x` of `body` so that its triple captures nothing when
/// the translation binds it next to the translations of `others`.
fn safe_binder(x: &Name, body: &Term, others: &[&Term]) -> (Name, Term) {
    let mut fv = free_vars(body);
    fv.remove(x);
    for t in others {
        fv.extend(free_vars(t));
    }
    let avoid = triple_closure(&fv);
    let z = pick(x, &avoid);
    if &z == x {
        (z, body.clone())
    } else {
        let b = subst(body, x, &Term::Var(z.clone()));
        (z, b)
    }
}

impl Translator<'_> {
    fn go(&self, t: &Term) -> Result<Term, ParamError> {
        match t {
            Term::Sort(s) => {
                let x = Name::new("x");
                let xp = primed(&x);
                let body = Term::arrow(Term::Var(x.clone()), Term::arrow(Term::Var(xp.clone()), Term::Sort(hat_sort(*s))));
                Ok(Term::lam(x, t.clone(), Term::lam(xp, t.clone(), body)))
            }
            Term::Var(x) => Ok(Term::Var(witness(x))),
            Term::Prod(x, a, b) => {
                let (x, b) = safe_binder(x, b, &[a]);
                let n = NameTriple::of(&x);
                let source = Term::prod(x.clone(), (**a).clone(), b.clone());
                let mut taken = triple_closure(&free_vars(&source));
                taken.extend([n.base.clone(), n.primed.clone(), n.witness.clone()]);
                let f = avoiding(Name::new("f"), |m| taken.contains(m) || taken.contains(&primed(m)));
                let fp = primed(&f);
                let body = Term::apps(
                    self.go(&b)?,
                    [
                        Term::app(Term::Var(f.clone()), Term::Var(n.base.clone())),
                        Term::app(Term::Var(fp.clone()), Term::Var(n.primed.clone())),
                    ],
                );
                let inner = self.bind_triple(&n, a, body)?;
                Ok(Term::lam(f, source.clone(), Term::lam(fp, prime(&source), inner)))
            }
            Term::Lam(x, a, b) => {
                let (x, b) = safe_binder(x, b, &[a]);
                let n = NameTriple::of(&x);
                let body = self.go(&b)?;
                self.bind_triple_lam(&n, a, body)
            }
            Term::App(m, n) => Ok(Term::apps(self.go(m)?, [(**n).clone(), prime(n), self.go(n)?])),
            Term::Ind(i) => Ok(Term::Ind(global(i))),
            Term::Constr(c) => Ok(Term::Constr(global(c))),
            Term::Const(d) => Ok(Term::Const(global(d))),
            Term::Fix { name, ty, body, rec_arg } => {
                let (f, body) = safe_binder(name, body, &[ty]);
                let n = NameTriple::of(&f);
                let src = Term::fix(f.clone(), (**ty).clone(), body.clone(), *rec_arg);
                let src_p = prime(&src);
                let ann = Term::apps(self.go(ty)?, [Term::Var(n.base.clone()), Term::Var(n.primed.clone())]);
                let fix = Term::fix(n.witness.clone(), ann, self.go(&body)?, 3 * rec_arg + 2);
                let fix = subst(&fix, &n.base, &src);
                Ok(subst(&fix, &n.primed, &src_p))
            }
            Term::Case {
                ind,
                scrutinee,
                params,
                motive,
                branches,
            } => {
                let mut tparams = Vec::with_capacity(3 * params.len());
                for q in params {
                    tparams.push(q.clone());
                    tparams.push(prime(q));
                    tparams.push(self.go(q)?);
                }
                let theta = self.theta(t, ind, params, &tparams, motive, branches)?;
                let tbranches = branches
                    .iter()
                    .map(|b| {
                        Ok(Branch {
                            ctor: global(&b.ctor),
                            body: self.go(&b.body)?,
                        })
                    })
                    .collect::<Result<Vec<_>, ParamError>>()?;
                Ok(Term::case(global(ind), self.go(scrutinee)?, tparams, theta, tbranches))
            }
        }
    }

    /// `forall (x : A) (x' : A') (x_R : [A] x x'), body`.
    fn bind_triple(&self, n: &NameTriple, a: &Term, body: Term) -> Result<Term, ParamError> {
        let rel = Term::apps(self.go(a)?, [Term::Var(n.base.clone()), Term::Var(n.primed.clone())]);
        Ok(Term::prod(
            n.base.clone(),
            a.clone(),
            Term::prod(n.primed.clone(), prime(a), Term::prod(n.witness.clone(), rel, body)),
        ))
    }

    /// `fun (x : A) (x' : A') (x_R : [A] x x') => body`.
    fn bind_triple_lam(&self, n: &NameTriple, a: &Term, body: Term) -> Result<Term, ParamError> {
        let rel = Term::apps(self.go(a)?, [Term::Var(n.base.clone()), Term::Var(n.primed.clone())]);
        Ok(Term::lam(
            n.base.clone(),
            a.clone(),
            Term::lam(n.primed.clone(), prime(a), Term::lam(n.witness.clone(), rel, body)),
        ))
    }

    /// The motive of a translated case: it binds the index triples, the two
    /// scrutinee copies and their witness, and relates the two source case
    /// analyses through `[P]`.
    fn theta(
        &self,
        source: &Term,
        ind: &Name,
        params: &[Term],
        tparams: &[Term],
        motive: &Term,
        branches: &[Branch],
    ) -> Result<Term, ParamError> {
        let rel_name = global(ind);
        let rel = self.env.inductive(&rel_name).ok_or_else(|| ParamError::Untranslated(ind.clone()))?;
        let mut avoid = triple_closure(&free_vars(source));
        let mut tele = rel.arity.clone();
        for q in tparams {
            match &tele {
                Term::Prod(x, _, rest) => tele = subst(rest, x, q),
                _ => return Err(ParamError::Untranslated(ind.clone())),
            }
        }
        let mut binders: Vec<(Name, Term)> = Vec::new();
        while let Term::Prod(x, dom, rest) = &tele {
            let base = if x.is_anonymous() { Name::new("y") } else { x.clone() };
            let z = avoiding(base, |m| avoid.contains(m));
            avoid.insert(z.clone());
            binders.push((z.clone(), (**dom).clone()));
            tele = subst(rest, x, &Term::Var(z));
        }
        if binders.len() < 2 {
            return Err(ParamError::Untranslated(ind.clone()));
        }
        let a = binders[binders.len() - 2].0.clone();
        let ap = binders[binders.len() - 1].0.clone();
        let index_vars: Vec<Term> = binders[..binders.len() - 2].iter().map(|(y, _)| Term::Var(y.clone())).collect();
        let a_r = avoiding(witness(&Name::new("a")), |m| avoid.contains(m));
        let a_r_ty = Term::apps(
            Term::Ind(rel_name.clone()),
            tparams.iter().cloned().chain(index_vars.iter().cloned()).chain([Term::Var(a.clone()), Term::Var(ap.clone())]),
        );

        let left = Term::case(ind.clone(), Term::Var(a.clone()), params.to_vec(), motive.clone(), branches.to_vec());
        let right = Term::case(
            ind.clone(),
            Term::Var(ap.clone()),
            params.iter().map(prime).collect(),
            prime(motive),
            branches
                .iter()
                .map(|b| Branch {
                    ctor: b.ctor.clone(),
                    body: prime(&b.body),
                })
                .collect(),
        );
        let body = Term::apps(
            self.go(motive)?,
            index_vars
                .into_iter()
                .chain([Term::Var(a), Term::Var(ap), Term::Var(a_r.clone()), left, right]),
        );
        let body = Term::lam(a_r, a_r_ty, body);
        Ok(binders.into_iter().rev().fold(body, |acc, (x, dom)| Term::lam(x, dom, acc)))
    }
}
