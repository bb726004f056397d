//! Cautious and brave consequences, and side-by-side comparison of the two
//! semantics.

use std::fmt::{self, Write as _};

use crate::classify::{classify, StructureClass};
use crate::error::Result;
use crate::flp::{enumerate_flp_answer_sets_with, flp_reduct};
use crate::interp::{Atom, Interpretation};
use crate::limits::Limits;
use crate::program::{models_program, Program};
use crate::psp::{enumerate_psp_answer_sets_with, lfp_k};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    Flp,
    Psp,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Flp => "FLP",
            Semantics::Psp => "PSP",
        })
    }
}

pub fn answer_sets(p: &Program, sem: Semantics, limits: &Limits) -> Result<Vec<Interpretation>> {
    match sem {
        Semantics::Flp => enumerate_flp_answer_sets_with(p, limits),
        Semantics::Psp => enumerate_psp_answer_sets_with(p, limits),
    }
}

/// `a` is in every answer set; vacuously true when there are none.
pub fn cautious(p: &Program, a: &Atom, sem: Semantics) -> Result<bool> {
    cautious_with(p, a, sem, &Limits::default())
}

pub fn cautious_with(p: &Program, a: &Atom, sem: Semantics, limits: &Limits) -> Result<bool> {
    Ok(answer_sets(p, sem, limits)?.iter().all(|m| m.contains(a)))
}

/// `a` is in some answer set.
pub fn brave(p: &Program, a: &Atom, sem: Semantics) -> Result<bool> {
    brave_with(p, a, sem, &Limits::default())
}

pub fn brave_with(p: &Program, a: &Atom, sem: Semantics, limits: &Limits) -> Result<bool> {
    Ok(answer_sets(p, sem, limits)?.iter().any(|m| m.contains(a)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemanticsReport {
    pub flp_sets: Vec<Interpretation>,
    pub psp_sets: Vec<Interpretation>,
    /// Always empty: every PSP answer set is an FLP answer set.
    pub psp_minus_flp: Vec<Interpretation>,
    pub flp_minus_psp: Vec<Interpretation>,
    pub per_rule_class: Vec<StructureClass>,
    pub all_convex: bool,
    /// For all-convex programs: whether, for every FLP answer set `M`, the
    /// least fixpoint `K` of `K^P_M` satisfies `P^M` and is a subset of `M`.
    pub convex_obligations: Option<bool>,
}

impl SemanticsReport {
    pub fn coincide(&self) -> bool {
        self.flp_sets == self.psp_sets
    }

    /// Human-readable report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut section = |title: &str, sets: &[Interpretation]| {
            let _ = writeln!(out, "{title} ({}):", sets.len());
            for s in sets {
                let _ = writeln!(out, "  {s}");
            }
        };
        section("FLP answer sets", &self.flp_sets);
        section("PSP answer sets", &self.psp_sets);
        section("FLP only", &self.flp_minus_psp);
        section("PSP only", &self.psp_minus_flp);
        for (i, c) in self.per_rule_class.iter().enumerate() {
            let _ = writeln!(out, "rule#{}: {c}", i + 1);
        }
        let _ = writeln!(
            out,
            "all bodies convex: {}",
            if self.all_convex { "yes" } else { "no" }
        );
        if let Some(ok) = self.convex_obligations {
            let _ = writeln!(
                out,
                "fixpoint obligations: {}",
                if ok { "hold" } else { "VIOLATED" }
            );
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.coincide() {
                "semantics coincide"
            } else {
                "semantics differ"
            }
        );
        out
    }

    /// `key=value` lines: flp, psp, flp_minus_psp, psp_minus_flp, classes,
    /// all_convex.
    pub fn to_kv(&self) -> String {
        fn list<T: fmt::Display>(xs: &[T]) -> String {
            let items: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            format!("[{}]", items.join(", "))
        }
        let mut out = String::new();
        let _ = writeln!(out, "flp={}", list(&self.flp_sets));
        let _ = writeln!(out, "psp={}", list(&self.psp_sets));
        let _ = writeln!(out, "flp_minus_psp={}", list(&self.flp_minus_psp));
        let _ = writeln!(out, "psp_minus_flp={}", list(&self.psp_minus_flp));
        let _ = writeln!(out, "classes={}", list(&self.per_rule_class));
        let _ = writeln!(out, "all_convex={}", self.all_convex);
        out
    }
}

pub fn compare(p: &Program) -> Result<SemanticsReport> {
    compare_with(p, &Limits::default())
}

pub fn compare_with(p: &Program, limits: &Limits) -> Result<SemanticsReport> {
    let flp_sets = enumerate_flp_answer_sets_with(p, limits)?;
    let psp_sets = enumerate_psp_answer_sets_with(p, limits)?;
    let minus = |a: &[Interpretation], b: &[Interpretation]| -> Vec<Interpretation> {
        a.iter().filter(|x| !b.contains(x)).cloned().collect()
    };
    let per_rule_class = p
        .rules()
        .iter()
        .map(|r| classify(&r.body))
        .collect::<Result<Vec<_>>>()?;
    let all_convex = per_rule_class.iter().all(|c| c.convex);
    let convex_obligations = if all_convex {
        let mut ok = true;
        for m in &flp_sets {
            let k = lfp_k(p, m)?;
            let fix = k.last();
            ok &= k.converged
                && fix.is_subset(m)
                && models_program(fix, &flp_reduct(p, m).to_program());
        }
        Some(ok)
    } else {
        None
    };
    Ok(SemanticsReport {
        psp_minus_flp: minus(&psp_sets, &flp_sets),
        flp_minus_psp: minus(&flp_sets, &psp_sets),
        flp_sets,
        psp_sets,
        per_rule_class,
        all_convex,
        convex_obligations,
    })
}
