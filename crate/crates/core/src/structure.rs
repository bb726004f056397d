//! Generalized atoms ("structures"): Boolean functions of an interpretation
//! whose value depends only on a finite, ordered domain of atoms.
//!
//! Every structure is evaluated through a bitmask over its domain, where
//! bit `i` is set iff the `i`-th domain atom is true. Truth tables use the
//! same encoding for their rows.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::interp::{Atom, Interpretation};

/// Widest domain a structure may have (one bit per atom in a `u64`).
pub const MAX_DOMAIN: usize = 64;

/// Default cap on the number of domain atoms whose subsets get enumerated.
pub const DEFAULT_ENUM_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparator {
    Eq,
    Ne,
    Le,
    Lt,
    Ge,
    Gt,
}

impl Comparator {
    pub const ALL: [Comparator; 6] = [
        Comparator::Eq,
        Comparator::Ne,
        Comparator::Le,
        Comparator::Lt,
        Comparator::Ge,
        Comparator::Gt,
    ];

    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Comparator::Eq => lhs == rhs,
            Comparator::Ne => lhs != rhs,
            Comparator::Le => lhs <= rhs,
            Comparator::Lt => lhs < rhs,
            Comparator::Ge => lhs >= rhs,
            Comparator::Gt => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Eq => "=",
            Comparator::Ne => "!=",
            Comparator::Le => "<=",
            Comparator::Lt => "<",
            Comparator::Ge => ">=",
            Comparator::Gt => ">",
        }
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    LiteralConjunction,
    Count,
    Sum,
    TruthTable,
    Dnf,
}

/// A conjunction of literals over domain positions.
///
/// `positive` and `negative` are disjoint masks over the owning structure's
/// domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Conjunction {
    pub positive: u64,
    pub negative: u64,
}

impl Conjunction {
    #[inline]
    pub fn holds(self, mask: u64) -> bool {
        mask & self.positive == self.positive && mask & self.negative == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Payload {
    /// Every domain atom occurs exactly once, positively or negatively.
    Literals(Conjunction),
    Count {
        cmp: Comparator,
        guard: i64,
    },
    /// `weights[i]` belongs to the `i`-th domain atom.
    Sum {
        weights: Vec<i64>,
        cmp: Comparator,
        guard: i64,
    },
    /// The rows (domain bitmasks) on which the structure is true.
    Table {
        satisfied: BTreeSet<u64>,
    },
    Dnf {
        disjuncts: Vec<Conjunction>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    domain: Vec<Atom>,
    payload: Payload,
}

fn full_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

fn check_domain(domain: &[Atom]) -> Result<()> {
    if domain.len() > MAX_DOMAIN {
        return Err(Error::DomainTooWide {
            size: domain.len(),
            max: MAX_DOMAIN,
        });
    }
    let mut seen = BTreeSet::new();
    for a in domain {
        if !seen.insert(a) {
            return Err(Error::DuplicateDomainAtom(a.name().to_string()));
        }
    }
    Ok(())
}

fn index_of(domain: &[Atom], a: &Atom) -> Option<usize> {
    domain.iter().position(|d| d == a)
}

impl Structure {
    /// Checks the per-kind invariants and builds the structure.
    pub fn from_parts(domain: Vec<Atom>, payload: Payload) -> Result<Self> {
        check_domain(&domain)?;
        let full = full_mask(domain.len());
        match &payload {
            Payload::Literals(c) => {
                if c.positive & c.negative != 0 || c.positive | c.negative != full {
                    return Err(Error::MalformedStructure(
                        "literal polarities must partition the domain".into(),
                    ));
                }
            }
            Payload::Count { .. } => {}
            Payload::Sum { weights, .. } => {
                if weights.len() != domain.len() {
                    return Err(Error::MalformedStructure(
                        "one weight per domain atom".into(),
                    ));
                }
            }
            Payload::Table { satisfied } => {
                if satisfied.iter().any(|&row| row & !full != 0) {
                    return Err(Error::MalformedStructure(
                        "truth-table row outside the domain".into(),
                    ));
                }
            }
            Payload::Dnf { disjuncts } => {
                if disjuncts.is_empty() {
                    return Err(Error::MalformedStructure("empty disjunction".into()));
                }
                if disjuncts
                    .iter()
                    .any(|c| c.positive & c.negative != 0 || (c.positive | c.negative) & !full != 0)
                {
                    return Err(Error::MalformedStructure(
                        "disjunct literals must be disjoint and inside the domain".into(),
                    ));
                }
            }
        }
        Ok(Structure { domain, payload })
    }

    /// Conjunction of literals, `(atom, true)` for a positive occurrence.
    pub fn literals(lits: impl IntoIterator<Item = (Atom, bool)>) -> Result<Self> {
        let mut domain = Vec::new();
        let mut conj = Conjunction {
            positive: 0,
            negative: 0,
        };
        for (i, (a, positive)) in lits.into_iter().enumerate() {
            if i < 64 {
                if positive {
                    conj.positive |= 1 << i;
                } else {
                    conj.negative |= 1 << i;
                }
            }
            domain.push(a);
        }
        Self::from_parts(domain, Payload::Literals(conj))
    }

    /// `positive` atoms followed by `not`-literals of `negative`.
    pub fn conjunction(positive: &[Atom], negative: &[Atom]) -> Result<Self> {
        Self::literals(
            positive
                .iter()
                .map(|a| (a.clone(), true))
                .chain(negative.iter().map(|a| (a.clone(), false))),
        )
    }

    /// The always-true body of a fact.
    pub fn empty_conjunction() -> Self {
        Structure {
            domain: Vec::new(),
            payload: Payload::Literals(Conjunction {
                positive: 0,
                negative: 0,
            }),
        }
    }

    pub fn count(domain: Vec<Atom>, cmp: Comparator, guard: i64) -> Result<Self> {
        Self::from_parts(domain, Payload::Count { cmp, guard })
    }

    pub fn sum(
        weights: impl IntoIterator<Item = (Atom, i64)>,
        cmp: Comparator,
        guard: i64,
    ) -> Result<Self> {
        let (domain, weights): (Vec<_>, Vec<_>) = weights.into_iter().unzip();
        Self::from_parts(
            domain,
            Payload::Sum {
                weights,
                cmp,
                guard,
            },
        )
    }

    pub fn table(domain: Vec<Atom>, satisfied: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::from_parts(
            domain,
            Payload::Table {
                satisfied: satisfied.into_iter().collect(),
            },
        )
    }

    /// Truth table given by a predicate over row masks.
    pub fn table_from_fn(domain: Vec<Atom>, f: impl Fn(u64) -> bool) -> Result<Self> {
        if domain.len() > DEFAULT_ENUM_CAP {
            return Err(Error::DomainTooLarge {
                size: domain.len(),
                cap: DEFAULT_ENUM_CAP,
            });
        }
        let rows = (0..1u64 << domain.len()).filter(|&m| f(m));
        Self::table(domain, rows)
    }

    /// The structure that is true everywhere, over an empty domain.
    pub fn constant_true() -> Self {
        Structure {
            domain: Vec::new(),
            payload: Payload::Table {
                satisfied: BTreeSet::from([0]),
            },
        }
    }

    /// Disjunction of literal conjunctions. The domain is the atoms in order
    /// of first appearance.
    pub fn dnf(disjuncts: Vec<Vec<(Atom, bool)>>) -> Result<Self> {
        let mut domain: Vec<Atom> = Vec::new();
        for d in &disjuncts {
            for (a, _) in d {
                if !domain.contains(a) {
                    domain.push(a.clone());
                }
            }
        }
        Self::dnf_over(domain, disjuncts)
    }

    pub fn dnf_over(domain: Vec<Atom>, disjuncts: Vec<Vec<(Atom, bool)>>) -> Result<Self> {
        check_domain(&domain)?;
        let mut out = Vec::with_capacity(disjuncts.len());
        for d in disjuncts {
            let mut c = Conjunction {
                positive: 0,
                negative: 0,
            };
            for (a, positive) in d {
                let i = index_of(&domain, &a).ok_or_else(|| {
                    Error::MalformedStructure(format!("disjunct atom `{a}` outside domain"))
                })?;
                if positive {
                    c.positive |= 1 << i;
                } else {
                    c.negative |= 1 << i;
                }
            }
            out.push(c);
        }
        Self::from_parts(domain, Payload::Dnf { disjuncts: out })
    }

    pub fn domain(&self) -> &[Atom] {
        &self.domain
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn kind(&self) -> StructureKind {
        match self.payload {
            Payload::Literals(_) => StructureKind::LiteralConjunction,
            Payload::Count { .. } => StructureKind::Count,
            Payload::Sum { .. } => StructureKind::Sum,
            Payload::Table { .. } => StructureKind::TruthTable,
            Payload::Dnf { .. } => StructureKind::Dnf,
        }
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.domain.len())
    }

    /// Positive and negative atoms, if this is a literal conjunction.
    pub fn as_literals(&self) -> Option<(Vec<Atom>, Vec<Atom>)> {
        match self.payload {
            Payload::Literals(c) => {
                let pick = |m: u64| {
                    self.domain
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| m >> i & 1 == 1)
                        .map(|(_, a)| a.clone())
                        .collect()
                };
                Some((pick(c.positive), pick(c.negative)))
            }
            _ => None,
        }
    }

    /// Restriction of `i` to the domain, as a row mask.
    pub fn mask_of(&self, i: &Interpretation) -> u64 {
        self.mask_by(|a| i.contains(a))
    }

    pub fn mask_by(&self, mut has: impl FnMut(&Atom) -> bool) -> u64 {
        let mut m = 0;
        for (idx, a) in self.domain.iter().enumerate() {
            if has(a) {
                m |= 1 << idx;
            }
        }
        m
    }

    /// Truth value on a row mask.
    pub fn eval_mask(&self, mask: u64) -> bool {
        match &self.payload {
            Payload::Literals(c) => c.holds(mask),
            Payload::Count { cmp, guard } => cmp.holds(i64::from(mask.count_ones()), *guard),
            Payload::Sum {
                weights,
                cmp,
                guard,
            } => {
                let total: i64 = weights
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, w)| *w)
                    .sum();
                cmp.holds(total, *guard)
            }
            Payload::Table { satisfied } => satisfied.contains(&mask),
            Payload::Dnf { disjuncts } => disjuncts.iter().any(|c| c.holds(mask)),
        }
    }

    /// `I |= S`.
    pub fn evaluate(&self, i: &Interpretation) -> bool {
        self.eval_mask(self.mask_of(i))
    }

    /// Truth values on all `2^|D|` rows, indexed by row mask.
    pub fn truth_vector(&self, cap: usize) -> Result<Vec<bool>> {
        let k = self.domain.len();
        if k > cap {
            return Err(Error::DomainTooLarge { size: k, cap });
        }
        Ok((0..1u64 << k).map(|m| self.eval_mask(m)).collect())
    }

    /// Equivalent truth table over the same domain.
    pub fn tabulate(&self) -> Result<Structure> {
        if let Payload::Table { .. } = self.payload {
            return Ok(self.clone());
        }
        let tv = self.truth_vector(DEFAULT_ENUM_CAP)?;
        Structure::table(
            self.domain.clone(),
            tv.iter()
                .enumerate()
                .filter(|(_, &t)| t)
                .map(|(m, _)| m as u64),
        )
    }

    /// The complementary structure, as a truth table.
    pub fn complement(&self) -> Result<Structure> {
        let tv = self.truth_vector(DEFAULT_ENUM_CAP)?;
        Structure::table(
            self.domain.clone(),
            tv.iter()
                .enumerate()
                .filter(|(_, &t)| !t)
                .map(|(m, _)| m as u64),
        )
    }

    /// Conjunction of two structures, tabulated over the union of domains
    /// (`self`'s atoms first).
    pub fn conjoin(&self, other: &Structure) -> Result<Structure> {
        let mut domain = self.domain.clone();
        for a in &other.domain {
            if !domain.contains(a) {
                domain.push(a.clone());
            }
        }
        if domain.len() > DEFAULT_ENUM_CAP {
            return Err(Error::DomainTooLarge {
                size: domain.len(),
                cap: DEFAULT_ENUM_CAP,
            });
        }
        let project = |s: &Structure, row: u64| {
            s.mask_by(|a| {
                let i = index_of(&domain, a).expect("atom in union domain");
                row >> i & 1 == 1
            })
        };
        let rows: Vec<u64> = (0..1u64 << domain.len())
            .filter(|&row| {
                self.eval_mask(project(self, row)) && other.eval_mask(project(other, row))
            })
            .collect();
        Structure::table(domain, rows)
    }

    /// The variant `S sigma`: same payload, renamed domain.
    pub fn rename(&self, sigma: &Renaming) -> Result<Structure> {
        let domain: Vec<Atom> = self.domain.iter().map(|a| sigma.apply(a)).collect();
        if let Err(Error::DuplicateDomainAtom(a)) = check_domain(&domain) {
            return Err(Error::NonInjectiveRenaming(a));
        }
        Ok(Structure {
            domain,
            payload: self.payload.clone(),
        })
    }
}

/// A finite injective renaming of atoms.
///
/// The explicit entries are completed to a bijection on the union of keys
/// and values: values that are not keys map back onto keys that are not
/// values (pairing both in name order). Every other atom maps to itself.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Renaming {
    map: BTreeMap<Atom, Atom>,
}

impl Renaming {
    pub fn new(entries: impl IntoIterator<Item = (Atom, Atom)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut images = BTreeSet::new();
        for (from, to) in entries {
            match map.get(&from) {
                Some(prev) if prev == &to => continue,
                Some(_) => return Err(Error::NonInjectiveRenaming(from.name().to_string())),
                None => {}
            }
            if !images.insert(to.clone()) {
                return Err(Error::NonInjectiveRenaming(to.name().to_string()));
            }
            map.insert(from, to);
        }
        let dangling_images: Vec<Atom> = images
            .iter()
            .filter(|a| !map.contains_key(*a))
            .cloned()
            .collect();
        let free_keys: Vec<Atom> = map
            .keys()
            .filter(|a| !images.contains(*a))
            .cloned()
            .collect();
        for (from, to) in dangling_images.into_iter().zip(free_keys) {
            map.insert(from, to);
        }
        Ok(Renaming { map })
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn apply(&self, a: &Atom) -> Atom {
        self.map.get(a).cloned().unwrap_or_else(|| a.clone())
    }

    /// `I sigma`.
    pub fn apply_interp(&self, i: &Interpretation) -> Interpretation {
        i.iter().map(|a| self.apply(a)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::interp::{atom, interp};

    fn all_subsets(domain: &[Atom]) -> Vec<Interpretation> {
        (0..1u64 << domain.len())
            .map(|m| {
                domain
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, a)| a.clone())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn count_not_equal_with_full_interpretation() {
        // COUNT({a1..a4}) != 2 with every a_i true
        let d: Vec<Atom> = (1..=4).map(|i| atom(&format!("a{i}"))).collect();
        let s = Structure::count(d.clone(), Comparator::Ne, 2).unwrap();
        let i: Interpretation = d.into_iter().chain([atom("zz")]).collect();
        assert!(s.evaluate(&i));
    }

    #[test]
    fn sum_with_negative_weight() {
        let s4 = fixtures::s4();
        assert!(!s4.evaluate(&interp(["b"])));
        assert!(s4.evaluate(&interp([])));
        assert!(s4.evaluate(&interp(["a"])));
        assert!(s4.evaluate(&interp(["a", "b"])));
    }

    #[test]
    fn empty_domain_table_is_constant() {
        let s = Structure::constant_true();
        assert!(s.evaluate(&interp([])));
        assert!(s.evaluate(&interp(["q", "r"])));
    }

    #[test]
    fn s1_fixture_rejects_lone_false_atom() {
        let s1 = fixtures::s1();
        assert!(!s1.evaluate(&interp(["x_F"])));
        assert!(s1.evaluate(&interp([])));
        assert!(s1.evaluate(&interp(["x_T"])));
        assert!(s1.evaluate(&interp(["x_T", "x_F"])));
        let s2 = fixtures::s2();
        assert!(!s2.evaluate(&interp(["x_T"])));
        assert!(s2.evaluate(&interp(["x_F"])));
    }

    #[test]
    fn literal_conjunction() {
        let s = Structure::conjunction(&[atom("a")], &[atom("b")]).unwrap();
        assert!(s.evaluate(&interp(["a"])));
        assert!(!s.evaluate(&interp(["a", "b"])));
        assert!(!s.evaluate(&interp([])));
        assert_eq!(s.as_literals().unwrap(), (vec![atom("a")], vec![atom("b")]));
    }

    #[test]
    fn dnf_is_any_disjunct() {
        let s = Structure::dnf(vec![
            vec![(atom("a"), true), (atom("b"), false)],
            vec![(atom("c"), true)],
        ])
        .unwrap();
        assert_eq!(s.domain(), &[atom("a"), atom("b"), atom("c")]);
        assert!(s.evaluate(&interp(["a"])));
        assert!(s.evaluate(&interp(["b", "c"])));
        assert!(!s.evaluate(&interp(["a", "b"])));
    }

    #[test]
    fn malformed_structures_are_rejected() {
        assert!(Structure::literals([(atom("a"), true), (atom("a"), false)]).is_err());
        assert!(Structure::table(vec![atom("a")], [2]).is_err());
        assert!(Structure::dnf(vec![]).is_err());
        let wide: Vec<Atom> = (0..65).map(|i| atom(&format!("v{i}"))).collect();
        assert!(matches!(
            Structure::count(wide, Comparator::Eq, 0),
            Err(Error::DomainTooWide { .. })
        ));
    }

    #[test]
    fn s4_renames_to_s5() {
        let sigma = Renaming::new([(atom("a"), atom("b")), (atom("b"), atom("a"))]).unwrap();
        let renamed = fixtures::s4().rename(&sigma).unwrap();
        let s5 = fixtures::s5();
        // Same function; the declaration order differs, so compare by value.
        for i in all_subsets(s5.domain()) {
            assert_eq!(renamed.evaluate(&i), s5.evaluate(&i), "{i}");
        }
    }

    #[test]
    fn one_sided_swap_is_completed() {
        let sigma = Renaming::new([(atom("a"), atom("b"))]).unwrap();
        assert_eq!(sigma.apply(&atom("b")), atom("a"));
        assert_eq!(sigma.apply(&atom("c")), atom("c"));
    }

    #[test]
    fn identity_renaming_is_structural_identity() {
        let s = fixtures::s4();
        assert_eq!(s.rename(&Renaming::identity()).unwrap(), s);
    }

    #[test]
    fn count_variant_agrees_on_all_subsets() {
        let s = Structure::count(vec![atom("x"), atom("y")], Comparator::Ne, 1).unwrap();
        let sigma = Renaming::new([(atom("x"), atom("u")), (atom("y"), atom("v"))]).unwrap();
        let t = s.rename(&sigma).unwrap();
        assert_eq!(
            t,
            Structure::count(vec![atom("u"), atom("v")], Comparator::Ne, 1).unwrap()
        );
        for i in all_subsets(s.domain()) {
            assert_eq!(s.evaluate(&i), t.evaluate(&sigma.apply_interp(&i)));
        }
    }

    #[test]
    fn non_injective_renaming_is_rejected() {
        assert!(matches!(
            Renaming::new([(atom("a"), atom("c")), (atom("b"), atom("c"))]),
            Err(Error::NonInjectiveRenaming(_))
        ));
    }

    #[test]
    fn conjoin_and_complement() {
        let a = Structure::conjunction(&[atom("a")], &[]).unwrap();
        let nb = Structure::conjunction(&[], &[atom("b")]).unwrap();
        let both = a.conjoin(&nb).unwrap();
        assert_eq!(both.domain(), &[atom("a"), atom("b")]);
        assert!(both.evaluate(&interp(["a"])));
        assert!(!both.evaluate(&interp(["a", "b"])));
        let not_both = both.complement().unwrap();
        for i in all_subsets(both.domain()) {
            assert_ne!(both.evaluate(&i), not_both.evaluate(&i));
        }
    }
}
