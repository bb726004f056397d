//! Workloads shared by the benchmarks.

use gasp_core::fixtures::a_ring_chain;
use gasp_core::{Interpretation, Program};

/// A chain of `COUNT != 1` variants with `rules` rules, and its answer set.
pub fn ring_chain(rules: usize) -> (Program, Interpretation) {
    a_ring_chain(rules)
}
