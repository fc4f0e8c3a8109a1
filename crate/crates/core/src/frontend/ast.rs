//! Surface syntax, as produced by the parser.

use crate::syntax::Sort;

use super::error::Pos;

#[derive(Clone, Debug, PartialEq)]
pub struct Ident {
    pub pos: Pos,
    pub name: String,
}

/// A binder `x : A`; the type may be left out where the elaborator can
/// recover it (case indices and branch arguments).
#[derive(Clone, Debug, PartialEq)]
pub struct Binder {
    pub name: Ident,
    pub ty: Option<Expr>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(Ident),
    Sort(Pos, Sort),
    Forall(Vec<Binder>, Box<Expr>),
    Fun(Vec<Binder>, Box<Expr>),
    Arrow(Box<Expr>, Box<Expr>),
    App(Box<Expr>, Vec<Expr>),
    Match(Box<Match>),
    Fix(Box<Fix>),
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Var(id) => id.pos,
            Expr::Sort(p, _) => *p,
            Expr::Forall(bs, _) | Expr::Fun(bs, _) => bs[0].name.pos,
            Expr::Arrow(a, _) => a.pos(),
            Expr::App(f, _) => f.pos(),
            Expr::Match(m) => m.pos,
            Expr::Fix(f) => f.pos,
        }
    }
}

/// An item after `in I`: a parameter, or an index binder.
#[derive(Clone, Debug, PartialEq)]
pub enum InItem {
    Term(Expr),
    Binder(Binder),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Motive {
    /// `[as x] ... return T`: the motive is built from the binders.
    Return { as_name: Option<Ident>, body: Expr },
    /// `using P`: the motive is given as a term.
    Using(Expr),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchBranch {
    pub ctor: Ident,
    pub args: Vec<Binder>,
    pub body: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Match {
    pub pos: Pos,
    pub scrutinee: Expr,
    pub ind: Ident,
    pub items: Vec<InItem>,
    pub motive: Motive,
    pub branches: Vec<MatchBranch>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StructArg {
    Name(Ident),
    /// 1-based position.
    Index(Pos, u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fix {
    pub pos: Pos,
    pub name: Ident,
    /// Shared binders of the type and the body; empty in the raw form.
    pub binders: Vec<Binder>,
    pub struct_arg: StructArg,
    pub ty: Expr,
    pub body: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constructor {
    pub name: Ident,
    pub ty: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Decl {
    Inductive {
        pos: Pos,
        name: Ident,
        params: Vec<Binder>,
        arity: Expr,
        constructors: Vec<Constructor>,
    },
    Def {
        pos: Pos,
        name: Ident,
        ty: Expr,
        body: Expr,
    },
    Check {
        pos: Pos,
        term: Expr,
    },
    ParamCheck {
        pos: Pos,
        name: Ident,
    },
}

impl Decl {
    pub fn pos(&self) -> Pos {
        match self {
            Decl::Inductive { pos, .. } | Decl::Def { pos, .. } | Decl::Check { pos, .. } | Decl::ParamCheck { pos, .. } => *pos,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SourceFile {
    pub decls: Vec<Decl>,
}
