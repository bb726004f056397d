use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A propositional atom, identified by its name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<str>);

impl Atom {
    /// Builds an atom, checking the identifier syntax
    /// (a letter followed by letters, digits or underscores).
    pub fn new(name: &str) -> Result<Self> {
        if is_identifier(name) && name != "not" {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(Error::InvalidAtom(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand for tests and fixtures; panics on an invalid name.
pub fn atom(name: &str) -> Atom {
    Atom::new(name).unwrap_or_else(|e| panic!("{e}"))
}

/// A finite set of atoms considered true. Iteration is in name order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Interpretation(BTreeSet<Atom>);

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.0.contains(a)
    }

    pub fn insert(&mut self, a: Atom) -> bool {
        self.0.insert(a)
    }

    pub fn remove(&mut self, a: &Atom) -> bool {
        self.0.remove(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.0.iter()
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Interpretation) -> Interpretation {
        Interpretation(self.0.union(&other.0).cloned().collect())
    }

    pub fn as_set(&self) -> &BTreeSet<Atom> {
        &self.0
    }

    /// Canonical answer-set order: by cardinality, then lexicographically
    /// on the sorted atom sequence.
    pub fn canonical_cmp(&self, other: &Interpretation) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<T: IntoIterator<Item = Atom>>(iter: T) -> Self {
        Interpretation(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Interpretation {
    type Item = &'a Atom;
    type IntoIter = std::collections::btree_set::Iter<'a, Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Builds an interpretation from atom names; panics on an invalid name.
pub fn interp<'a>(names: impl IntoIterator<Item = &'a str>) -> Interpretation {
    names.into_iter().map(atom).collect()
}

/// Prints as `{a, b}`; the empty set prints as `{}`.
impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(a.name())?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sorts answer sets into canonical order.
pub fn sort_canonical(sets: &mut [Interpretation]) {
    sets.sort_by(|a, b| a.canonical_cmp(b));
}
