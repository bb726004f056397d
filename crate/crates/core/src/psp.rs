//! Conditional satisfaction, the `K^P_M` operator and PSP answer sets.
//!
//! `(I, M) |= S` only needs the atoms of `D_S` that are in `M` but not in
//! `I`: the test evaluates `S` on `I ∪ J` for every subset `J` of those
//! atoms, which is at most `2^|D_S|` evaluations regardless of `|M|`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flp::check_heads;
use crate::frame::{self, Frame};
use crate::interp::{sort_canonical, Atom, Interpretation};
use crate::limits::Limits;
use crate::program::{Program, Rule};
use crate::structure::Structure;

/// Counts structure evaluations issued by conditional-satisfaction tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalStats {
    pub queries: u64,
    pub evaluations: u64,
    /// Largest number of evaluations spent on one query.
    pub max_per_query: u64,
}

impl EvalStats {
    fn record(&mut self, evaluations: u64) {
        self.queries += 1;
        self.evaluations += evaluations;
        self.max_per_query = self.max_per_query.max(evaluations);
    }
}

/// Core test on domain masks; `lower` must be a subset of `upper`.
pub(crate) fn cond_sat_masks(
    s: &Structure,
    lower: u64,
    upper: u64,
    cap: usize,
    stats: &mut EvalStats,
) -> Result<bool> {
    if lower & !upper != 0 {
        return Err(Error::PreconditionViolated);
    }
    let free = upper & !lower;
    let k = free.count_ones() as usize;
    if k > cap {
        return Err(Error::DomainTooLarge { size: k, cap });
    }
    let mut evaluations = 0;
    let mut sub = free;
    let holds = loop {
        evaluations += 1;
        if !s.eval_mask(lower | sub) {
            break false;
        }
        if sub == 0 {
            break true;
        }
        sub = (sub - 1) & free;
    };
    stats.record(evaluations);
    Ok(holds)
}

/// `(I, M) |= S`: `S` holds on every `J` with `I ⊆ J ⊆ M`.
pub fn cond_sat(s: &Structure, i: &Interpretation, m: &Interpretation) -> Result<bool> {
    cond_sat_counted(s, i, m, &Limits::default(), &mut EvalStats::default())
}

pub fn cond_sat_counted(
    s: &Structure,
    i: &Interpretation,
    m: &Interpretation,
    limits: &Limits,
    stats: &mut EvalStats,
) -> Result<bool> {
    if !i.is_subset(m) {
        return Err(Error::PreconditionViolated);
    }
    cond_sat_masks(s, s.mask_of(i), s.mask_of(m), limits.max_free_domain, stats)
}

/// `K^P_M(I)`: heads of the rules whose bodies `(I, M)` conditionally satisfies.
pub fn k_operator(p: &Program, m: &Interpretation, i: &Interpretation) -> Result<Interpretation> {
    k_operator_over(p.rules(), m, i)
}

/// `K_M` over an arbitrary rule collection, e.g. an FLP reduct.
pub fn k_operator_over<'r>(
    rules: impl IntoIterator<Item = &'r Rule>,
    m: &Interpretation,
    i: &Interpretation,
) -> Result<Interpretation> {
    if !i.is_subset(m) {
        return Err(Error::PreconditionViolated);
    }
    let limits = Limits::default();
    let mut stats = EvalStats::default();
    let mut out = Interpretation::new();
    for r in rules {
        let (lower, upper) = (r.body.mask_of(i), r.body.mask_of(m));
        if cond_sat_masks(&r.body, lower, upper, limits.max_free_domain, &mut stats)? {
            out.insert(r.head.clone());
        }
    }
    Ok(out)
}

/// Iterates `K^P_M` from the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixpointTrace {
    /// `K_0 = {}`, `K_1`, ... up to the first repeated stage, or up to the
    /// first stage that leaves `M`.
    pub stages: Vec<Interpretation>,
    /// False when a stage left `M`; the iteration then stops early.
    pub converged: bool,
}

impl FixpointTrace {
    pub fn last(&self) -> &Interpretation {
        self.stages.last().expect("trace has at least one stage")
    }
}

pub fn lfp_k(p: &Program, m: &Interpretation) -> Result<FixpointTrace> {
    lfp_k_counted(p, m, &Limits::default(), &mut EvalStats::default())
}

pub fn lfp_k_counted(
    p: &Program,
    m: &Interpretation,
    limits: &Limits,
    stats: &mut EvalStats,
) -> Result<FixpointTrace> {
    let mut stages = vec![Interpretation::new()];
    let (converged, _) = iterate_k(p, m, limits, stats, |stage| stages.push(stage.clone()))?;
    Ok(FixpointTrace { stages, converged })
}

/// Runs the `K^P_M` iteration, reporting each stage after `K_0`. Returns the
/// last stage, flagged false when it left `M`.
///
/// `(I, M) |= S` depends on `I` only through `I ∩ D_S`, so after the first
/// stage only rules whose domain meets the newly derived atoms are retested.
fn iterate_k(
    p: &Program,
    m: &Interpretation,
    limits: &Limits,
    stats: &mut EvalStats,
    mut on_stage: impl FnMut(&Interpretation),
) -> Result<(bool, Interpretation)> {
    let rules = p.rules();
    let upper: Vec<u64> = rules.iter().map(|r| r.body.mask_of(m)).collect();
    let mut watchers: HashMap<&Atom, Vec<usize>> = HashMap::new();
    for (idx, r) in rules.iter().enumerate() {
        for a in r.body.domain() {
            watchers.entry(a).or_default().push(idx);
        }
    }
    let mut fired = vec![false; rules.len()];
    let mut cur = Interpretation::new();
    let mut pending: Vec<usize> = (0..rules.len()).collect();
    loop {
        let mut delta = Vec::new();
        for idx in pending {
            // K is monotone along the iteration, so fired rules stay fired.
            if fired[idx] {
                continue;
            }
            let body = &rules[idx].body;
            if cond_sat_masks(
                body,
                body.mask_of(&cur),
                upper[idx],
                limits.max_free_domain,
                stats,
            )? {
                fired[idx] = true;
                if !cur.contains(&rules[idx].head) {
                    delta.push(rules[idx].head.clone());
                }
            }
        }
        let escaped = delta.iter().any(|a| !m.contains(a));
        let repeated = delta.is_empty();
        let mut touched = BTreeSet::new();
        for a in delta {
            if let Some(ws) = watchers.get(&a) {
                touched.extend(ws.iter().copied());
            }
            cur.insert(a);
        }
        on_stage(&cur);
        if escaped || repeated {
            return Ok((!escaped, cur));
        }
        pending = touched.into_iter().collect();
    }
}

/// `M` is the least fixpoint of `K^P_M`.
pub fn is_psp_answer_set(p: &Program, m: &Interpretation) -> Result<bool> {
    is_psp_answer_set_counted(p, m, &Limits::default(), &mut EvalStats::default())
}

pub fn is_psp_answer_set_counted(
    p: &Program,
    m: &Interpretation,
    limits: &Limits,
    stats: &mut EvalStats,
) -> Result<bool> {
    let (converged, last) = iterate_k(p, m, limits, stats, |_| {})?;
    Ok(converged && &last == m)
}

pub fn enumerate_psp_answer_sets(p: &Program) -> Result<Vec<Interpretation>> {
    enumerate_psp_answer_sets_with(p, &Limits::default())
}

/// All PSP answer sets (subsets of the head atoms) in canonical order.
pub fn enumerate_psp_answer_sets_with(p: &Program, limits: &Limits) -> Result<Vec<Interpretation>> {
    let frame = Frame::new(check_heads(p, limits)?);
    let rules = frame::compile(&frame, p.rules());
    let cap = limits.max_free_domain;
    let checked: Result<Vec<Option<u64>>> = (0..1u64 << frame.len())
        .into_par_iter()
        .map(|m| {
            let mut stats = EvalStats::default();
            let upper: Vec<u64> = rules.iter().map(|r| r.body_mask(m)).collect();
            let mut cur = 0u64;
            loop {
                let mut next = cur;
                for (r, &up) in rules.iter().zip(&upper) {
                    if next & r.head_bit() == 0
                        && cond_sat_masks(r.body, r.body_mask(cur), up, cap, &mut stats)?
                    {
                        next |= r.head_bit();
                    }
                }
                if next & !m != 0 {
                    return Ok(None);
                }
                if next == cur {
                    return Ok((cur == m).then_some(m));
                }
                cur = next;
            }
        })
        .collect();
    let mut out: Vec<Interpretation> = checked?
        .into_iter()
        .flatten()
        .map(|m| frame.interp(m))
        .collect();
    sort_canonical(&mut out);
    Ok(out)
}
