//! The type checker: sorts, reduction, conversion, typing and inductive
//! declarations.

mod conv;
mod error;
mod guard;
mod inductive;
mod reduce;
mod sorts;
mod typing;

pub use conv::{conv, subtype};
pub use error::TypeError;
pub use inductive::{check_inductive, is_small};
pub use reduce::{beta_nf, one_step_reducts, whnf};
pub use sorts::{axiom_sort, embed_sort, sort_of_product, subsort, CicSort};
pub use typing::{infer, Checker, EliminationMode};

use crate::syntax::{Context, Definition, GlobalEnv, InductiveDecl, Name, Term};

/// Checks an inductive declaration and adds it to `env`.
pub fn declare_inductive(env: &mut GlobalEnv, decl: InductiveDecl, mode: EliminationMode) -> Result<(), TypeError> {
    inductive::check_inductive_with(env, &decl, mode)?;
    env.insert_inductive(decl);
    Ok(())
}

/// Checks `body : ty` and adds the definition to `env`.
pub fn declare_definition(env: &mut GlobalEnv, name: Name, ty: Term, body: Term, mode: EliminationMode) -> Result<(), TypeError> {
    check_definition(env, &name, &ty, &body, mode)?;
    env.insert_definition(Definition { name, ty, body });
    Ok(())
}

/// Checks `body : ty` for a prospective definition named `name`, without adding it.
pub fn check_definition(env: &GlobalEnv, name: &Name, ty: &Term, body: &Term, mode: EliminationMode) -> Result<(), TypeError> {
    if env.contains(name) {
        return Err(TypeError::DuplicateName(name.clone()));
    }
    let checker = Checker::new(env, mode);
    let mut ctx = Context::new();
    checker.infer_sort(&mut ctx, ty)?;
    checker.check(&mut ctx, body, ty)
}
