use std::collections::{BTreeSet, HashSet};

use crate::interp::{Atom, Interpretation};
use crate::structure::Structure;

/// `head <- body`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub head: Atom,
    pub body: Structure,
}

impl Rule {
    pub fn new(head: Atom, body: Structure) -> Self {
        Rule { head, body }
    }

    pub fn fact(head: Atom) -> Self {
        Rule::new(head, Structure::empty_conjunction())
    }

    /// `I |= r`.
    pub fn is_satisfied_by(&self, i: &Interpretation) -> bool {
        i.contains(&self.head) || !self.body.evaluate(i)
    }
}

/// A set of rules, kept in first-insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Program {
    rules: Vec<Rule>,
}

impl Program {
    pub fn new(rules: impl IntoIterator<Item = Rule>) -> Self {
        let mut p = Program::default();
        p.extend(rules);
        p
    }

    /// Adds a rule unless a structurally equal one is present.
    pub fn push(&mut self, rule: Rule) -> bool {
        if self.rules.contains(&rule) {
            false
        } else {
            self.rules.push(rule);
            true
        }
    }

    pub fn extend(&mut self, rules: impl IntoIterator<Item = Rule>) {
        let mut seen: HashSet<Rule> = self.rules.iter().cloned().collect();
        for r in rules {
            if seen.insert(r.clone()) {
                self.rules.push(r);
            }
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Heads and every body domain atom, in name order.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = self.head_atoms();
        for r in &self.rules {
            out.extend(r.body.domain().iter().cloned());
        }
        out
    }

    pub fn head_atoms(&self) -> BTreeSet<Atom> {
        self.rules.iter().map(|r| r.head.clone()).collect()
    }

    /// Largest body domain.
    pub fn max_body_domain(&self) -> usize {
        self.rules
            .iter()
            .map(|r| r.body.domain().len())
            .max()
            .unwrap_or(0)
    }
}

/// `I |= P`.
pub fn models_program(i: &Interpretation, p: &Program) -> bool {
    p.rules().iter().all(|r| r.is_satisfied_by(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::interp::{atom, interp};
    use crate::structure::Comparator;

    #[test]
    fn p1_models() {
        let p1 = fixtures::p1();
        assert!(!models_program(&interp([]), &p1));
        // both bodies hold at {a, b}, and so do both heads
        assert!(models_program(&interp(["a", "b"]), &p1));
        assert!(models_program(&interp(["a"]), &p1));
        assert!(models_program(&interp(["b"]), &p1));
    }

    #[test]
    fn empty_program_is_modelled_by_anything() {
        assert!(models_program(&interp([]), &Program::default()));
        assert!(models_program(&interp(["z"]), &Program::default()));
    }

    #[test]
    fn atoms_and_heads() {
        let p1 = fixtures::p1();
        let names = |s: BTreeSet<Atom>| s.into_iter().map(|a| a.to_string()).collect::<Vec<_>>();
        assert_eq!(names(p1.atoms()), ["a", "b"]);
        assert_eq!(names(p1.head_atoms()), ["a", "b"]);
        assert!(Program::default().atoms().is_empty());

        let body = Structure::count(vec![atom("x"), atom("y")], Comparator::Ne, 1).unwrap();
        let p = Program::new([Rule::new(atom("h"), body)]);
        assert_eq!(names(p.atoms()), ["h", "x", "y"]);
        assert_eq!(names(p.head_atoms()), ["h"]);
    }

    #[test]
    fn duplicate_rules_collapse() {
        let mut p = fixtures::p1();
        assert!(!p.push(p.rules()[0].clone()));
        p.extend(fixtures::p1().rules().to_vec());
        assert_eq!(p.len(), 2);
    }
}
