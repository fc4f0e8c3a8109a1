use std::collections::HashMap;
use std::sync::Arc;

use super::{Name, Term};

/// An inductive declaration. `arity` and every constructor type include the
/// `params` leading parameter binders.
#[derive(Clone, Debug, PartialEq)]
pub struct InductiveDecl {
    pub name: Name,
    pub params: usize,
    pub arity: Term,
    pub constructors: Vec<(Name, Term)>,
}

impl InductiveDecl {
    pub fn ctor_index(&self, ctor: &Name) -> Option<usize> {
        self.constructors.iter().position(|(c, _)| c == ctor)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Definition {
    pub name: Name,
    pub ty: Term,
    pub body: Term,
}

#[derive(Clone, Debug)]
pub enum Global {
    Inductive(Arc<InductiveDecl>),
    Constructor { ind: Name, index: usize },
    Definition(Arc<Definition>),
}

/// Checked inductives and definitions, keyed by name.
///
/// Entries are only added through the kernel, which checks them first; the
/// environment never shrinks.
#[derive(Clone, Debug, Default)]
pub struct GlobalEnv {
    entries: HashMap<Name, Global>,
    order: Vec<Name>,
}

impl GlobalEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, name: &Name) -> bool {
        self.entries.contains_key(name)
    }

    pub fn lookup(&self, name: &Name) -> Option<&Global> {
        self.entries.get(name)
    }

    pub fn inductive(&self, name: &Name) -> Option<&Arc<InductiveDecl>> {
        match self.entries.get(name) {
            Some(Global::Inductive(d)) => Some(d),
            _ => None,
        }
    }

    /// The inductive a constructor belongs to, and the constructor's position.
    pub fn constructor(&self, name: &Name) -> Option<(&Arc<InductiveDecl>, usize)> {
        match self.entries.get(name) {
            Some(Global::Constructor { ind, index }) => self.inductive(ind).map(|d| (d, *index)),
            _ => None,
        }
    }

    pub fn definition(&self, name: &Name) -> Option<&Arc<Definition>> {
        match self.entries.get(name) {
            Some(Global::Definition(d)) => Some(d),
            _ => None,
        }
    }

    /// Inductive and definition names in declaration order.
    pub fn names(&self) -> &[Name] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub(crate) fn insert_inductive(&mut self, decl: InductiveDecl) {
        let name = decl.name.clone();
        for (index, (c, _)) in decl.constructors.iter().enumerate() {
            self.entries.insert(c.clone(), Global::Constructor { ind: name.clone(), index });
        }
        self.entries.insert(name.clone(), Global::Inductive(Arc::new(decl)));
        self.order.push(name);
    }

    pub(crate) fn insert_definition(&mut self, def: Definition) {
        let name = def.name.clone();
        self.entries.insert(name.clone(), Global::Definition(Arc::new(def)));
        self.order.push(name);
    }
}

/// Typing context: an ordered list of `x : A` assumptions.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Context {
    entries: Vec<(Name, Term)>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: Name, ty: Term) {
        self.entries.push((x, ty));
    }

    pub fn pop(&mut self) -> Option<(Name, Term)> {
        self.entries.pop()
    }

    pub fn with(mut self, x: impl Into<Name>, ty: Term) -> Self {
        self.push(x.into(), ty);
        self
    }

    pub fn lookup(&self, x: &Name) -> Option<&Term> {
        self.entries.iter().rev().find(|(n, _)| n == x).map(|(_, t)| t)
    }

    pub fn contains(&self, x: &Name) -> bool {
        self.entries.iter().any(|(n, _)| n == x)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn truncate(&mut self, len: usize) {
        self.entries.truncate(len);
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Name, Term)> {
        self.entries.iter()
    }
}

impl FromIterator<(Name, Term)> for Context {
    fn from_iter<I: IntoIterator<Item = (Name, Term)>>(iter: I) -> Self {
        Context {
            entries: iter.into_iter().collect(),
        }
    }
}
