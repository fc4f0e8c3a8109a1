use std::sync::Arc;

use super::{Name, Sort};

/// A case branch: the constructor it handles and a function over the
/// constructor's non-parameter arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branch {
    pub ctor: Name,
    pub body: Term,
}

/// Terms with named binders.
///
/// `Ind`, `Constr` and `Const` refer to global names and carry no free
/// variables. `Const` names a checked definition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name),
    Sort(Sort),
    Prod(Name, Arc<Term>, Arc<Term>),
    Lam(Name, Arc<Term>, Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Ind(Name),
    Constr(Name),
    Const(Name),
    Case {
        ind: Name,
        scrutinee: Arc<Term>,
        params: Vec<Term>,
        motive: Arc<Term>,
        branches: Vec<Branch>,
    },
    Fix {
        name: Name,
        ty: Arc<Term>,
        body: Arc<Term>,
        /// 0-based position of the structurally decreasing argument.
        rec_arg: usize,
    },
}

impl Term {
    pub fn var(name: impl Into<Name>) -> Term {
        Term::Var(name.into())
    }

    pub fn sort(s: Sort) -> Term {
        Term::Sort(s)
    }

    pub fn prop() -> Term {
        Term::Sort(Sort::Prop)
    }

    pub fn set(i: u32) -> Term {
        Term::Sort(Sort::Set(i))
    }

    pub fn ty(i: u32) -> Term {
        Term::Sort(Sort::type_of_level(i))
    }

    pub fn prod(x: impl Into<Name>, dom: Term, cod: Term) -> Term {
        Term::Prod(x.into(), Arc::new(dom), Arc::new(cod))
    }

    /// Non-dependent product `dom -> cod`.
    pub fn arrow(dom: Term, cod: Term) -> Term {
        Term::prod(Name::anonymous(), dom, cod)
    }

    pub fn lam(x: impl Into<Name>, dom: Term, body: Term) -> Term {
        Term::Lam(x.into(), Arc::new(dom), Arc::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    /// `f a1 ... an`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn ind(name: impl Into<Name>) -> Term {
        Term::Ind(name.into())
    }

    pub fn constr(name: impl Into<Name>) -> Term {
        Term::Constr(name.into())
    }

    pub fn constant(name: impl Into<Name>) -> Term {
        Term::Const(name.into())
    }

    pub fn case(ind: impl Into<Name>, scrutinee: Term, params: Vec<Term>, motive: Term, branches: Vec<Branch>) -> Term {
        Term::Case {
            ind: ind.into(),
            scrutinee: Arc::new(scrutinee),
            params,
            motive: Arc::new(motive),
            branches,
        }
    }

    pub fn fix(name: impl Into<Name>, ty: Term, body: Term, rec_arg: usize) -> Term {
        Term::Fix {
            name: name.into(),
            ty: Arc::new(ty),
            body: Arc::new(body),
            rec_arg,
        }
    }

    pub fn as_sort(&self) -> Option<Sort> {
        match self {
            Term::Sort(s) => Some(*s),
            _ => None,
        }
    }

    /// Splits `f a1 ... an` into `(f, [a1, ..., an])`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut head = self;
        let mut args = Vec::new();
        while let Term::App(f, a) = head {
            args.push(&**a);
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// Owned version of [`Term::spine`].
    pub fn spine_owned(&self) -> (Term, Vec<Term>) {
        let (h, args) = self.spine();
        (h.clone(), args.into_iter().cloned().collect())
    }

    /// Number of nodes, used to bound generated and reduced terms.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Sort(_) | Term::Ind(_) | Term::Constr(_) | Term::Const(_) => 1,
            Term::Prod(_, a, b) | Term::Lam(_, a, b) | Term::App(a, b) => 1 + a.size() + b.size(),
            Term::Case {
                scrutinee,
                params,
                motive,
                branches,
                ..
            } => {
                1 + scrutinee.size()
                    + motive.size()
                    + params.iter().map(Term::size).sum::<usize>()
                    + branches.iter().map(|b| b.body.size()).sum::<usize>()
            }
            Term::Fix { ty, body, .. } => 1 + ty.size() + body.size(),
        }
    }
}

impl From<Sort> for Term {
    fn from(s: Sort) -> Self {
        Term::Sort(s)
    }
}
