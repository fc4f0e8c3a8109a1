//! Term language: names, sorts, terms, binding operations and environments.

mod env;
mod name;
mod ops;
mod sort;
mod term;

pub use env::{Context, Definition, Global, GlobalEnv, InductiveDecl};
pub use name::Name;
pub use ops::{alpha_eq, fresh_name, free_vars, occurs_global, subst};
pub use sort::Sort;
pub use term::{Branch, Term};
