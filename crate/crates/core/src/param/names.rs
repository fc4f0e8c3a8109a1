use std::collections::BTreeSet;

use crate::syntax::{Name, Sort};

/// The three names a variable `x` contributes to a translated context:
/// `x`, its copy `x'`, and the relation witness `x_R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NameTriple {
    pub base: Name,
    pub primed: Name,
    pub witness: Name,
}

impl NameTriple {
    pub fn of(x: &Name) -> Self {
        NameTriple {
            base: x.clone(),
            primed: primed(x),
            witness: witness(x),
        }
    }
}

pub fn primed(x: &Name) -> Name {
    if x.is_anonymous() {
        return x.clone();
    }
    x.with_suffix("'")
}

pub fn witness(x: &Name) -> Name {
    x.with_suffix("_R")
}

/// Name of the translation of a global (inductive, constructor or definition).
pub fn global(x: &Name) -> Name {
    x.with_suffix("_R")
}

/// `Prop` and `Set_i` relate into `Prop`; `Type_i` into itself.
pub fn hat_sort(s: Sort) -> Sort {
    match s {
        Sort::Prop | Sort::Set(_) => Sort::Prop,
        Sort::Type(_) => s,
    }
}

/// Every name of every triple generated by `names`.
pub(crate) fn triple_closure<'a>(names: impl IntoIterator<Item = &'a Name>) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    for x in names {
        let t = NameTriple::of(x);
        out.insert(t.base);
        out.insert(t.primed);
        out.insert(t.witness);
    }
    out
}
