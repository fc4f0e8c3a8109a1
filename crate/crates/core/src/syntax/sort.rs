use std::fmt;
use std::num::NonZeroU32;

/// A sort: `Prop`, `Set_i` for `i >= 0`, or `Type_i` for `i >= 1`.
///
/// `Type_0` does not exist; the level of `Type` is a non-zero integer so it
/// cannot be built.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Prop,
    Set(u32),
    Type(NonZeroU32),
}

impl Sort {
    pub fn set(level: u32) -> Sort {
        Sort::Set(level)
    }

    /// `Type_level`, or `None` for level 0.
    pub fn ty(level: u32) -> Option<Sort> {
        NonZeroU32::new(level).map(Sort::Type)
    }

    /// `Type_level` for a level already known to be positive.
    ///
    /// Panics on 0.
    pub fn type_of_level(level: u32) -> Sort {
        Sort::ty(level).expect("Type_0 is not a sort")
    }

    /// The level, `None` for `Prop`.
    pub fn level(self) -> Option<u32> {
        match self {
            Sort::Prop => None,
            Sort::Set(i) => Some(i),
            Sort::Type(i) => Some(i.get()),
        }
    }

    pub fn is_prop(self) -> bool {
        matches!(self, Sort::Prop)
    }

    pub fn is_set(self) -> bool {
        matches!(self, Sort::Set(_))
    }

    pub fn is_type(self) -> bool {
        matches!(self, Sort::Type(_))
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Prop => f.write_str("Prop"),
            Sort::Set(i) => write!(f, "Set{}", i),
            Sort::Type(i) => write!(f, "Type{}", i),
        }
    }
}

impl fmt::Debug for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
