//! FLP reduct, minimal-model checks and FLP answer sets; plus the classic
//! Gelfond–Lifschitz stable models of normal programs, kept as an oracle.

use std::borrow::Borrow;
use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frame::{self, CompiledRule, Frame};
use crate::interp::{sort_canonical, Atom, Interpretation};
use crate::limits::Limits;
use crate::program::{models_program, Program, Rule};

/// The rules of `source` whose bodies are true under `wrt`, in source order.
#[derive(Clone, Debug)]
pub struct Reduct<'p> {
    source: &'p Program,
    wrt: Interpretation,
    rules: Vec<&'p Rule>,
}

impl<'p> Reduct<'p> {
    pub fn source(&self) -> &'p Program {
        self.source
    }

    pub fn wrt(&self) -> &Interpretation {
        &self.wrt
    }

    pub fn rules(&self) -> &[&'p Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn to_program(&self) -> Program {
        Program::new(self.rules.iter().map(|r| (*r).clone()))
    }
}

pub fn flp_reduct<'p>(p: &'p Program, i: &Interpretation) -> Reduct<'p> {
    Reduct {
        source: p,
        wrt: i.clone(),
        rules: p.rules().iter().filter(|r| r.body.evaluate(i)).collect(),
    }
}

pub fn is_minimal_model(i: &Interpretation, r: &Reduct<'_>) -> Result<bool> {
    is_minimal_model_with(i, r, &Limits::default())
}

/// `I |= R` and no `J ⊂ I` satisfies `R`.
pub fn is_minimal_model_with(i: &Interpretation, r: &Reduct<'_>, limits: &Limits) -> Result<bool> {
    if i.len() > limits.max_minimality {
        return Err(Error::InterpretationTooLarge {
            size: i.len(),
            cap: limits.max_minimality,
        });
    }
    let frame = Frame::new(i.iter().cloned());
    let rules = frame::compile(&frame, r.rules().iter().copied());
    let full = if i.is_empty() {
        0
    } else {
        u64::MAX >> (64 - i.len())
    };
    Ok(frame::models(&rules, full) && no_smaller_model(&rules, full))
}

/// No proper subset of `mask` satisfies `rules`.
fn no_smaller_model<'p, R: Borrow<CompiledRule<'p>>>(rules: &[R], mask: u64) -> bool {
    // Dropping one atom at a time catches most non-minimal candidates early.
    let mut bits = mask;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        bits ^= b;
        if frame::models(rules, mask ^ b) {
            return false;
        }
    }
    if mask == 0 {
        return true;
    }
    let mut sub = (mask - 1) & mask;
    loop {
        if frame::models(rules, sub) {
            return false;
        }
        if sub == 0 {
            return true;
        }
        sub = (sub - 1) & mask;
    }
}

pub fn is_flp_answer_set(p: &Program, i: &Interpretation) -> Result<bool> {
    is_flp_answer_set_with(p, i, &Limits::default())
}

pub fn is_flp_answer_set_with(p: &Program, i: &Interpretation, limits: &Limits) -> Result<bool> {
    let reduct = flp_reduct(p, i);
    is_minimal_model_with(i, &reduct, limits)
}

pub(crate) fn check_heads(p: &Program, limits: &Limits) -> Result<BTreeSet<Atom>> {
    let heads = p.head_atoms();
    if heads.len() > limits.max_heads {
        return Err(Error::TooManyHeads {
            size: heads.len(),
            cap: limits.max_heads,
        });
    }
    Ok(heads)
}

pub fn enumerate_flp_answer_sets(p: &Program) -> Result<Vec<Interpretation>> {
    enumerate_flp_answer_sets_with(p, &Limits::default())
}

/// All FLP answer sets in canonical order. Candidates range over subsets of
/// the head atoms: any other atom could be dropped from a model of the
/// reduct, so no answer set contains one.
pub fn enumerate_flp_answer_sets_with(p: &Program, limits: &Limits) -> Result<Vec<Interpretation>> {
    let frame = Frame::new(check_heads(p, limits)?);
    let rules = frame::compile(&frame, p.rules());
    let found: Vec<u64> = (0..1u64 << frame.len())
        .into_par_iter()
        .filter(|&cand| {
            // I |= P^I iff I |= P, as rules outside the reduct have false bodies.
            if !frame::models(&rules, cand) {
                return false;
            }
            let reduct: Vec<_> = rules.iter().filter(|r| r.body_holds(cand)).collect();
            no_smaller_model(&reduct, cand)
        })
        .collect();
    let mut out: Vec<Interpretation> = found.into_iter().map(|m| frame.interp(m)).collect();
    sort_canonical(&mut out);
    Ok(out)
}

pub fn gl_stable_models(p: &Program) -> Result<Vec<Interpretation>> {
    gl_stable_models_with(p, &Limits::default())
}

/// Stable models of a normal program via the Gelfond–Lifschitz reduct.
pub fn gl_stable_models_with(p: &Program, limits: &Limits) -> Result<Vec<Interpretation>> {
    let mut normal = Vec::with_capacity(p.len());
    for (idx, r) in p.rules().iter().enumerate() {
        let (pos, neg) = r
            .body
            .as_literals()
            .ok_or(Error::NotNormalProgram(idx + 1))?;
        normal.push((r.head.clone(), pos, neg));
    }
    let heads: Vec<Atom> = check_heads(p, limits)?.into_iter().collect();
    let mut out = Vec::new();
    for bits in 0..1u64 << heads.len() {
        let m: Interpretation = heads
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect();
        // Keep rules whose negative literals all hold under M, minus those literals.
        let definite: Vec<(&Atom, &Vec<Atom>)> = normal
            .iter()
            .filter(|(_, _, neg)| neg.iter().all(|a| !m.contains(a)))
            .map(|(h, pos, _)| (h, pos))
            .collect();
        let mut least = Interpretation::new();
        loop {
            let mut grew = false;
            for (h, pos) in &definite {
                if !least.contains(h) && pos.iter().all(|a| least.contains(a)) {
                    least.insert((*h).clone());
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        if least == m {
            debug_assert!(models_program(&m, p));
            out.push(m);
        }
    }
    sort_canonical(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::interp::{atom, interp};
    use crate::parse::parse_program;

    #[test]
    fn reduct_of_p1() {
        let p1 = fixtures::p1();
        let r = flp_reduct(&p1, &interp(["a"]));
        assert_eq!(
            r.to_program(),
            Program::new([Rule::new(atom("a"), fixtures::s4())])
        );
        assert_eq!(flp_reduct(&p1, &interp(["a", "b"])).len(), 2);
    }

    #[test]
    fn empty_reduct_when_no_body_holds() {
        let p = parse_program("a :- b. c :- d, not a.").unwrap();
        assert!(flp_reduct(&p, &interp(["a"])).is_empty());
    }

    #[test]
    fn minimality() {
        let p1 = fixtures::p1();
        let a = interp(["a"]);
        assert!(is_minimal_model(&a, &flp_reduct(&p1, &a)).unwrap());
        let ab = interp(["a", "b"]);
        assert!(!is_minimal_model(&ab, &flp_reduct(&p1, &ab)).unwrap());
        let empty = Program::default();
        assert!(is_minimal_model(&interp([]), &flp_reduct(&empty, &interp([]))).unwrap());
    }

    #[test]
    fn minimality_cap() {
        let big: Interpretation = (0..5).map(|i| atom(&format!("v{i}"))).collect();
        let p = Program::default();
        let limits = Limits {
            max_minimality: 4,
            ..Limits::default()
        };
        assert!(matches!(
            is_minimal_model_with(&big, &flp_reduct(&p, &big), &limits),
            Err(Error::InterpretationTooLarge { size: 5, cap: 4 })
        ));
    }

    #[test]
    fn answer_set_checks() {
        let p1 = fixtures::p1();
        assert!(is_flp_answer_set(&p1, &interp(["a"])).unwrap());
        assert!(is_flp_answer_set(&p1, &interp(["b"])).unwrap());
        assert!(!is_flp_answer_set(&p1, &interp(["a", "b"])).unwrap());
        assert!(!is_flp_answer_set(&p1, &interp([])).unwrap());
        assert!(is_flp_answer_set(&Program::default(), &interp([])).unwrap());
    }

    #[test]
    fn enumeration() {
        assert_eq!(
            enumerate_flp_answer_sets(&fixtures::p1()).unwrap(),
            vec![interp(["a"]), interp(["b"])]
        );
        assert_eq!(
            enumerate_flp_answer_sets(&fixtures::p1_loop()).unwrap(),
            vec![interp(["a", "b"])]
        );
        assert_eq!(
            enumerate_flp_answer_sets(&Program::default()).unwrap(),
            vec![interp([])]
        );
    }

    #[test]
    fn head_cap() {
        let p = parse_program("a. b. c.").unwrap();
        let limits = Limits {
            max_heads: 2,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_flp_answer_sets_with(&p, &limits),
            Err(Error::TooManyHeads { size: 3, cap: 2 })
        ));
    }

    #[test]
    fn gl_oracle() {
        let even = parse_program("a :- not b. b :- not a.").unwrap();
        assert_eq!(
            gl_stable_models(&even).unwrap(),
            vec![interp(["a"]), interp(["b"])]
        );
        let selfloop = parse_program("a :- a.").unwrap();
        assert_eq!(gl_stable_models(&selfloop).unwrap(), vec![interp([])]);
        assert_eq!(
            enumerate_flp_answer_sets(&selfloop).unwrap(),
            vec![interp([])]
        );
        assert!(matches!(
            gl_stable_models(&fixtures::p1()),
            Err(Error::NotNormalProgram(1))
        ));
    }
}
