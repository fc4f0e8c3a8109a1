//! The rules on sorts: axioms, product formation, inclusion, and the
//! embedding into plain CIC sorts.

use std::fmt;

use crate::syntax::Sort;

/// The sort of a sort: `Prop : Type1`, `Set_i : Type_{i+1}`, `Type_i : Type_{i+1}`.
pub fn axiom_sort(s: Sort) -> Sort {
    match s {
        Sort::Prop => Sort::type_of_level(1),
        Sort::Set(i) => Sort::type_of_level(i + 1),
        Sort::Type(i) => Sort::type_of_level(i.get() + 1),
    }
}

/// The sort of `forall x : A, B` given the sorts of `A` and `B`.
///
/// Prop is impredicative; quantifying over a proposition keeps the
/// codomain's sort; otherwise the level is the max of both and the kind
/// is the codomain's.
pub fn sort_of_product(domain: Sort, codomain: Sort) -> Sort {
    match (domain, codomain) {
        (_, Sort::Prop) => Sort::Prop,
        (Sort::Prop, s) => s,
        (d, Sort::Set(j)) => Sort::Set(d.level().unwrap_or(0).max(j)),
        (d, Sort::Type(j)) => Sort::type_of_level(d.level().unwrap_or(0).max(j.get())),
    }
}

/// Reflexive-transitive closure of `Prop <: Set_1`, `Set_i <: Set_j` and
/// `Type_i <: Type_j` for `i < j`. There is no inclusion between the `Set`
/// and `Type` hierarchies.
pub fn subsort(s1: Sort, s2: Sort) -> bool {
    match (s1, s2) {
        _ if s1 == s2 => true,
        (Sort::Prop, Sort::Set(j)) => j >= 1,
        (Sort::Set(i), Sort::Set(j)) => i < j,
        (Sort::Type(i), Sort::Type(j)) => i < j,
        _ => false,
    }
}

/// Sorts of the unrefined calculus, where `Type_0` exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CicSort {
    Prop,
    Type(u32),
}

impl fmt::Display for CicSort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CicSort::Prop => f.write_str("Prop"),
            CicSort::Type(i) => write!(f, "Type{}", i),
        }
    }
}

/// `Set_i` and `Type_i` both map to `Type_i`; `Prop` maps to itself.
pub fn embed_sort(s: Sort) -> CicSort {
    match s {
        Sort::Prop => CicSort::Prop,
        Sort::Set(i) => CicSort::Type(i),
        Sort::Type(i) => CicSort::Type(i.get()),
    }
}
