//! Concrete syntax: lexing, parsing, name resolution and printing.

pub mod ast;
mod elab;
mod error;
mod lexer;
mod parser;
mod printer;

pub use elab::{elaborate_decl, elaborate_expr, ElabDecl};
pub use error::{CheckError, FrontendError, ParseError, Pos};
pub use lexer::{is_keyword, is_reserved};
pub use parser::{parse, parse_expr, parse_with, ParseOptions};
pub use printer::print_inductive;

use crate::kernel::{declare_definition, declare_inductive, EliminationMode};
use crate::syntax::{GlobalEnv, Name, Term};

/// Parses and elaborates a closed term against `env`.
pub fn parse_term(env: &GlobalEnv, src: &str, opts: ParseOptions) -> Result<Term, FrontendError> {
    let e = parse_expr(src, opts)?;
    Ok(elaborate_expr(env, &e)?)
}

/// Parses `src` and adds its inductives and definitions to `env`, in order.
/// `check` and `param-check` declarations are skipped. Returns the names
/// declared.
pub fn load(env: &mut GlobalEnv, src: &str, opts: ParseOptions, mode: EliminationMode) -> Result<Vec<Name>, FrontendError> {
    let file = parse_with(src, opts)?;
    let mut names = Vec::new();
    for d in &file.decls {
        let pos = d.pos();
        let wrap = |error| CheckError { pos, error };
        match elaborate_decl(env, d)? {
            ElabDecl::Inductive(decl) => {
                names.push(decl.name.clone());
                declare_inductive(env, decl, mode).map_err(wrap)?;
            }
            ElabDecl::Definition { name, ty, body } => {
                names.push(name.clone());
                declare_definition(env, name, ty, body, mode).map_err(wrap)?;
            }
            ElabDecl::Check(_) | ElabDecl::ParamCheck(_) => {}
        }
    }
    Ok(names)
}
