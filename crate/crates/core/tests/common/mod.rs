#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

use rcic_core::frontend::{load, ParseOptions};
use rcic_core::kernel::EliminationMode;
use rcic_core::syntax::{Branch, GlobalEnv, Name, Term};

pub const PRELUDE: &str = include_str!("../../corpus/prelude.rcic");
pub const BAD_ELIM: &str = include_str!("../../corpus/bad_elim.rcic");

pub fn prelude() -> GlobalEnv {
    let mut env = GlobalEnv::new();
    load(&mut env, PRELUDE, ParseOptions::default(), EliminationMode::Star).expect("prelude loads");
    env
}

pub fn definitions(env: &GlobalEnv) -> Vec<Name> {
    env.names().iter().filter(|n| env.definition(n).is_some()).cloned().collect()
}

pub fn inductives(env: &GlobalEnv) -> Vec<Name> {
    env.names().iter().filter(|n| env.inductive(n).is_some()).cloned().collect()
}

/// Simple types the generator targets.
#[derive(Clone, Debug, PartialEq)]
pub enum Ty {
    Bool,
    Nat,
    ListNat,
    Arrow(Box<Ty>, Box<Ty>),
}

impl Ty {
    pub fn term(&self) -> Term {
        match self {
            Ty::Bool => Term::ind("Bool"),
            Ty::Nat => Term::ind("Nat"),
            Ty::ListNat => Term::app(Term::ind("List"), Term::ind("Nat")),
            Ty::Arrow(a, b) => Term::arrow(a.term(), b.term()),
        }
    }

    pub fn random(rng: &mut StdRng, depth: u32) -> Ty {
        match rng.gen_range(0..if depth == 0 { 3 } else { 5 }) {
            0 => Ty::Bool,
            1 => Ty::Nat,
            2 => Ty::ListNat,
            _ => Ty::Arrow(Box::new(Ty::random(rng, depth - 1)), Box::new(Ty::random(rng, depth - 1))),
        }
    }
}

fn nat() -> Term {
    Term::ind("Nat")
}

fn c(name: &str) -> Term {
    Term::constant(name)
}

fn k(name: &str) -> Term {
    Term::constr(name)
}

/// Type-directed random generator of closed (or context-relative)
/// well-typed terms over the prelude.
pub struct Gen<'r> {
    pub rng: &'r mut StdRng,
    scope: Vec<(Name, Ty)>,
    counter: usize,
}

impl<'r> Gen<'r> {
    pub fn new(rng: &'r mut StdRng) -> Self {
        Gen {
            rng,
            scope: Vec::new(),
            counter: 0,
        }
    }

    pub fn with_scope(rng: &'r mut StdRng, scope: Vec<(Name, Ty)>) -> Self {
        Gen { rng, scope, counter: 0 }
    }

    fn fresh(&mut self, base: &str) -> Name {
        self.counter += 1;
        if self.rng.gen_bool(0.3) {
            Name::new(base)
        } else {
            Name::new(&format!("{}{}", base, self.counter))
        }
    }

    fn var_of(&mut self, ty: &Ty) -> Option<Term> {
        let mut seen = Vec::new();
        let vars: Vec<Name> = self
            .scope
            .iter()
            .rev()
            .filter(|(x, _)| {
                let first = !seen.contains(x);
                seen.push(x.clone());
                first
            })
            .filter(|(_, t)| t == ty)
            .map(|(x, _)| x.clone())
            .collect();
        if vars.is_empty() {
            None
        } else {
            let i = self.rng.gen_range(0..vars.len());
            Some(Term::Var(vars[i].clone()))
        }
    }

    fn under<T>(&mut self, x: &Name, ty: Ty, f: impl FnOnce(&mut Self) -> T) -> T {
        self.scope.push((x.clone(), ty));
        let r = f(self);
        self.scope.pop();
        r
    }

    pub fn term(&mut self, ty: &Ty, depth: u32) -> Term {
        if self.rng.gen_bool(0.3) {
            if let Some(v) = self.var_of(ty) {
                return v;
            }
        }
        if depth == 0 {
            return self.leaf(ty);
        }
        let d = depth - 1;
        match ty {
            Ty::Bool => match self.rng.gen_range(0..7) {
                0 => Term::app(c("negb"), self.term(ty, d)),
                1 => Term::apps(c(if self.rng.gen() { "andb" } else { "orb" }), [self.term(ty, d), self.term(ty, d)]),
                2 => Term::app(c("is_zero"), self.term(&Ty::Nat, d)),
                3 => self.bool_case(ty, d),
                4 => self.nat_case(ty, d),
                5 => self.apply_fun(ty, d),
                _ => self.leaf(ty),
            },
            Ty::Nat => match self.rng.gen_range(0..10) {
                0 => Term::app(k("S"), self.term(ty, d)),
                1 => Term::apps(c(if self.rng.gen() { "plus" } else { "mult" }), [self.term(ty, d), self.term(ty, d)]),
                2 => Term::app(c("pred"), self.term(ty, d)),
                3 => Term::apps(c("length"), [nat(), self.term(&Ty::ListNat, d)]),
                4 => Term::app(c("bool_to_nat"), self.term(&Ty::Bool, d)),
                5 => self.bool_case(ty, d),
                6 => self.nat_case(ty, d),
                7 => self.apply_fun(ty, d),
                8 => Term::apps(c("id"), [nat(), self.term(ty, d)]),
                _ => self.leaf(ty),
            },
            Ty::ListNat => match self.rng.gen_range(0..7) {
                0 => Term::apps(k("cons"), [nat(), self.term(&Ty::Nat, d), self.term(ty, d)]),
                1 => Term::apps(c("app"), [nat(), self.term(ty, d), self.term(ty, d)]),
                2 => Term::apps(c("rev"), [nat(), self.term(ty, d)]),
                3 => Term::apps(
                    c("map"),
                    [nat(), nat(), self.term(&Ty::Arrow(Box::new(Ty::Nat), Box::new(Ty::Nat)), d), self.term(ty, d)],
                ),
                4 => Term::apps(c("singleton"), [nat(), self.term(&Ty::Nat, d)]),
                5 => self.bool_case(ty, d),
                _ => self.leaf(ty),
            },
            Ty::Arrow(a, b) => {
                if **a == Ty::Nat && **b == Ty::Nat && self.rng.gen_bool(0.2) {
                    return self.nat_fix(d);
                }
                let x = self.fresh("x");
                let body = self.under(&x, (**a).clone(), |g| g.term(b, d));
                Term::lam(x, a.term(), body)
            }
        }
    }

    fn leaf(&mut self, ty: &Ty) -> Term {
        if let Some(v) = self.var_of(ty) {
            if self.rng.gen_bool(0.5) {
                return v;
            }
        }
        match ty {
            Ty::Bool => k(if self.rng.gen() { "true" } else { "false" }),
            Ty::Nat => {
                if self.rng.gen() {
                    k("O")
                } else {
                    c("two")
                }
            }
            Ty::ListNat => Term::app(k("nil"), nat()),
            Ty::Arrow(a, b) => {
                let x = self.fresh("y");
                let body = self.under(&x, (**a).clone(), |g| g.leaf(b));
                Term::lam(x, a.term(), body)
            }
        }
    }

    fn apply_fun(&mut self, ty: &Ty, d: u32) -> Term {
        let a = if self.rng.gen() { Ty::Nat } else { Ty::Bool };
        let f = self.term(&Ty::Arrow(Box::new(a.clone()), Box::new(ty.clone())), d);
        Term::app(f, self.term(&a, d))
    }

    fn motive(&mut self, ind: Term, ty: &Ty) -> Term {
        let z = self.fresh("z");
        Term::lam(z, ind, ty.term())
    }

    fn bool_case(&mut self, ty: &Ty, d: u32) -> Term {
        let scrutinee = self.term(&Ty::Bool, d);
        let motive = self.motive(Term::ind("Bool"), ty);
        let t = self.term(ty, d);
        let f = self.term(ty, d);
        Term::case(
            "Bool",
            scrutinee,
            vec![],
            motive,
            vec![
                Branch {
                    ctor: Name::new("true"),
                    body: t,
                },
                Branch {
                    ctor: Name::new("false"),
                    body: f,
                },
            ],
        )
    }

    fn nat_case(&mut self, ty: &Ty, d: u32) -> Term {
        let scrutinee = self.term(&Ty::Nat, d);
        let motive = self.motive(nat(), ty);
        let zero = self.term(ty, d);
        let m = self.fresh("m");
        let succ = self.under(&m, Ty::Nat, |g| g.term(ty, d));
        Term::case(
            "Nat",
            scrutinee,
            vec![],
            motive,
            vec![
                Branch {
                    ctor: Name::new("O"),
                    body: zero,
                },
                Branch {
                    ctor: Name::new("S"),
                    body: Term::lam(m, nat(), succ),
                },
            ],
        )
    }

    /// `fix f (n : Nat) : Nat := match n with O => e | S k => g (f k) end`.
    fn nat_fix(&mut self, d: u32) -> Term {
        let f = Name::new(&format!("f{}", self.counter + 1));
        self.counter += 1;
        let n = Name::new(&format!("n{}", self.counter));
        let kk = Name::new(&format!("k{}", self.counter));
        let zero = self.under(&n, Ty::Nat, |g| g.term(&Ty::Nat, d.min(1)));
        let step = Term::app(Term::Var(f.clone()), Term::Var(kk.clone()));
        let succ = if self.rng.gen() { Term::app(k("S"), step) } else { Term::apps(c("plus"), [Term::Var(n.clone()), step]) };
        let body = Term::case(
            "Nat",
            Term::Var(n.clone()),
            vec![],
            Term::lam(Name::anonymous(), nat(), nat()),
            vec![
                Branch {
                    ctor: Name::new("O"),
                    body: zero,
                },
                Branch {
                    ctor: Name::new("S"),
                    body: Term::lam(kk, nat(), succ),
                },
            ],
        );
        Term::fix(f, Term::arrow(nat(), nat()), Term::lam(n, nat(), body), 0)
    }
}

impl Ty {
    /// The generator type denoted by a kernel type, if any.
    pub fn of_term(t: &Term) -> Option<Ty> {
        match t {
            Term::Ind(i) if i.as_str() == "Bool" => Some(Ty::Bool),
            Term::Ind(i) if i.as_str() == "Nat" => Some(Ty::Nat),
            Term::App(f, a) if matches!((&**f, &**a), (Term::Ind(l), Term::Ind(n)) if l.as_str() == "List" && n.as_str() == "Nat") => {
                Some(Ty::ListNat)
            }
            Term::Prod(x, a, b) if !rcic_core::syntax::free_vars(b).contains(x) => {
                Some(Ty::Arrow(Box::new(Ty::of_term(a)?), Box::new(Ty::of_term(b)?)))
            }
            _ => None,
        }
    }
}

/// `d` applied to as many generated arguments as its type allows: sort
/// parameters are instantiated with fixed small types, simple data
/// arguments are generated, and the first argument of any other type
/// stops the application.
pub fn instance(env: &GlobalEnv, gen: &mut Gen<'_>, d: &Name, depth: u32) -> Term {
    let mut ty = env.definition(d).expect("definition").ty.clone();
    let mut t = Term::constant(d.clone());
    while let Term::Prod(x, a, b) = ty {
        let arg = match &*a {
            Term::Sort(rcic_core::syntax::Sort::Set(0)) => Term::ind("Nat"),
            Term::Sort(rcic_core::syntax::Sort::Prop) => Term::ind("True"),
            Term::Sort(s) if s.is_type() => Term::set(0),
            other => match Ty::of_term(other) {
                Some(simple) => gen.term(&simple, depth),
                None => break,
            },
        };
        ty = rcic_core::syntax::subst(&b, &x, &arg);
        t = Term::app(t, arg);
    }
    t
}
