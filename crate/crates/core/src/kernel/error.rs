use thiserror::Error;

use crate::syntax::{Name, Sort, Term};

/// A kernel rejection.
#[derive(Debug, Clone, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(Name),
    #[error("`{term}` is not a function, it has type `{ty}`")]
    NotAFunction { term: Term, ty: Term },
    #[error("`{term}` has type `{actual}` but `{expected}` was expected")]
    NotConvertible { term: Term, expected: Term, actual: Term },
    #[error("`{term}` has type `{ty}`, which is not a sort")]
    NotASort { term: Term, ty: Term },
    #[error("ill-formed inductive `{name}`: {reason}")]
    IllFormedInductive { name: Name, reason: String },
    #[error("constructor `{ctor}` of `{ind}` has a non strictly positive argument `{arg}`")]
    PositivityViolation { ind: Name, ctor: Name, arg: Term },
    #[error("fixpoint `{name}`: {reason}")]
    GuardViolation { name: Name, reason: String },
    #[error("strong elimination of `{ind}` into {sort} is not allowed: `{ind}` is not small")]
    NonSmallStrongElim { ind: Name, sort: Sort },
    #[error("{what}: expected {expected}, found {found}")]
    ArityMismatch { what: String, expected: usize, found: usize },
    #[error("universe inconsistency: {0}")]
    UniverseError(String),
    #[error("`{0}` is already declared")]
    DuplicateName(Name),
}

impl TypeError {
    /// The variant name, as shown in diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            TypeError::UnboundVariable(_) => "UnboundVariable",
            TypeError::NotAFunction { .. } => "NotAFunction",
            TypeError::NotConvertible { .. } => "NotConvertible",
            TypeError::NotASort { .. } => "NotASort",
            TypeError::IllFormedInductive { .. } => "IllFormedInductive",
            TypeError::PositivityViolation { .. } => "PositivityViolation",
            TypeError::GuardViolation { .. } => "GuardViolation",
            TypeError::NonSmallStrongElim { .. } => "NonSmallStrongElim",
            TypeError::ArityMismatch { .. } => "ArityMismatch",
            TypeError::UniverseError(_) => "UniverseError",
            TypeError::DuplicateName(_) => "DuplicateName",
        }
    }
}
