//! A kernel for the Calculus of Inductive Constructions with a refined
//! universe hierarchy (`Prop`, `Set_i`, `Type_i`), its parametricity
//! translation, and a command-line front end.

#![allow(clippy::result_large_err)]

pub mod cli;
pub mod frontend;
pub mod kernel;
pub mod param;
pub mod syntax;
