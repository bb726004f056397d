//! Seeded differential checks between the two semantics.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::flp::{enumerate_flp_answer_sets, gl_stable_models};
use crate::generate::{generate, BodyClass, GeneratorConfig};
use crate::program::Program;
use crate::psp::enumerate_psp_answer_sets;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FuzzMode {
    /// Convex bodies only: FLP and PSP answer sets must coincide.
    ConvexCoincide,
    /// Any bodies: every PSP answer set must be an FLP answer set.
    PspSubsetFlp,
    /// Non-convex bodies: look for programs where FLP has extra answer sets.
    Divergence,
    /// Normal programs: Gelfond–Lifschitz, FLP and PSP must coincide.
    Normal,
}

impl FuzzMode {
    pub fn name(self) -> &'static str {
        match self {
            FuzzMode::ConvexCoincide => "convex-coincide",
            FuzzMode::PspSubsetFlp => "psp-subset-flp",
            FuzzMode::Divergence => "divergence",
            FuzzMode::Normal => "normal",
        }
    }

    fn classes(self) -> Vec<BodyClass> {
        match self {
            FuzzMode::ConvexCoincide => vec![
                BodyClass::Monotone,
                BodyClass::Antimonotone,
                BodyClass::Convex,
            ],
            FuzzMode::PspSubsetFlp => vec![
                BodyClass::Monotone,
                BodyClass::Antimonotone,
                BodyClass::Convex,
                BodyClass::NonconvexBounded(3),
                BodyClass::Nonconvex,
                BodyClass::Literals,
            ],
            FuzzMode::Divergence => vec![
                BodyClass::NonconvexBounded(2),
                BodyClass::Nonconvex,
                BodyClass::Literals,
                BodyClass::Monotone,
            ],
            FuzzMode::Normal => vec![BodyClass::Literals],
        }
    }
}

impl fmt::Display for FuzzMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FuzzMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [
            FuzzMode::ConvexCoincide,
            FuzzMode::PspSubsetFlp,
            FuzzMode::Divergence,
            FuzzMode::Normal,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| format!("unknown fuzz mode `{s}`"))
    }
}

/// Generator settings for case `index` of a run.
pub fn case_config(mode: FuzzMode, seed: u64, index: usize) -> GeneratorConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let min_atoms = if mode == FuzzMode::ConvexCoincide || mode == FuzzMode::Normal {
        1
    } else {
        2
    };
    GeneratorConfig {
        atom_count: rng.gen_range(min_atoms..=6),
        rule_count: rng.gen_range(0..=8),
        structure_classes: mode.classes(),
        seed: rng.gen(),
    }
}

pub fn case_program(mode: FuzzMode, seed: u64, index: usize) -> Result<Program> {
    generate(&case_config(mode, seed, index))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzOutcome {
    pub mode: FuzzMode,
    pub cases: usize,
    /// Indices of cases that broke the mode's property.
    pub violations: Vec<usize>,
    /// Indices of cases where FLP had answer sets PSP lacks.
    pub divergent: Vec<usize>,
}

impl FuzzOutcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
            && (self.mode != FuzzMode::Divergence || !self.divergent.is_empty())
    }
}

struct CaseResult {
    violated: bool,
    divergent: bool,
}

fn run_case(mode: FuzzMode, p: &Program) -> Result<CaseResult> {
    let flp = enumerate_flp_answer_sets(p)?;
    let psp = enumerate_psp_answer_sets(p)?;
    let psp_in_flp = psp.iter().all(|m| flp.contains(m));
    let divergent = flp.iter().any(|m| !psp.contains(m));
    let violated = match mode {
        FuzzMode::ConvexCoincide => flp != psp,
        FuzzMode::PspSubsetFlp | FuzzMode::Divergence => !psp_in_flp,
        FuzzMode::Normal => flp != psp || gl_stable_models(p)? != flp,
    };
    Ok(CaseResult {
        violated,
        divergent,
    })
}

pub fn run_fuzz(mode: FuzzMode, cases: usize, seed: u64) -> Result<FuzzOutcome> {
    let results: Vec<(usize, CaseResult)> = (0..cases)
        .into_par_iter()
        .map(|i| Ok((i, run_case(mode, &case_program(mode, seed, i)?)?)))
        .collect::<Result<_>>()?;
    let pick = |f: fn(&CaseResult) -> bool| -> Vec<usize> {
        results
            .iter()
            .filter(|(_, r)| f(r))
            .map(|(i, _)| *i)
            .collect()
    };
    Ok(FuzzOutcome {
        mode,
        cases,
        violations: pick(|r| r.violated),
        divergent: pick(|r| r.divergent),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_parse() {
        for m in ["convex-coincide", "psp-subset-flp", "divergence", "normal"] {
            assert_eq!(m.parse::<FuzzMode>().unwrap().name(), m);
        }
        assert!("other".parse::<FuzzMode>().is_err());
    }

    #[test]
    fn cases_are_deterministic() {
        let a = case_program(FuzzMode::PspSubsetFlp, 7, 3).unwrap();
        let b = case_program(FuzzMode::PspSubsetFlp, 7, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn short_runs_pass() {
        for mode in [
            FuzzMode::ConvexCoincide,
            FuzzMode::PspSubsetFlp,
            FuzzMode::Normal,
        ] {
            let out = run_fuzz(mode, 20, 1).unwrap();
            assert!(out.violations.is_empty(), "{mode}: {:?}", out.violations);
        }
    }
}
