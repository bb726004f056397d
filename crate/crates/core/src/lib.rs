//! Propositional answer-set engine for programs whose rule bodies are
//! generalized atoms ("structures"), under the FLP and PSP semantics.
//!
//! * [`structure`]: structures (literal conjunctions, count and sum
//!   aggregates, truth tables, DNFs), evaluation and renaming.
//! * [`classify`]: monotone / antimonotone / convex classification.
//! * [`flp`]: FLP reduct and answer sets, Gelfond–Lifschitz oracle.
//! * [`psp`]: conditional satisfaction, the `K` operator, PSP answer sets.
//! * [`reasoning`]: cautious/brave consequences, side-by-side comparison.
//! * [`generate`]: seeded random programs for differential testing.
//! * [`qbf`]: 2-QBF parsing, the cautious-reasoning reduction, and a
//!   brute-force validity oracle.

pub mod classify;
pub mod error;
pub mod fixtures;
pub mod flp;
mod frame;
pub mod fuzz;
pub mod generate;
pub mod interp;
pub mod limits;
pub mod parse;
pub mod program;
pub mod psp;
pub mod qbf;
pub mod reasoning;
pub mod structure;

pub use classify::{classify, decompose_convex, StructureClass};
pub use error::{Error, Result};
pub use flp::{enumerate_flp_answer_sets, flp_reduct, gl_stable_models, is_flp_answer_set, Reduct};
pub use generate::{generate, BodyClass, GeneratorConfig};
pub use interp::{atom, interp, Atom, Interpretation};
pub use limits::Limits;
pub use parse::{parse_program, ParseError};
pub use program::{models_program, Program, Rule};
pub use psp::{
    cond_sat, enumerate_psp_answer_sets, is_psp_answer_set, k_operator, lfp_k, EvalStats,
    FixpointTrace,
};
pub use reasoning::{brave, cautious, compare, Semantics, SemanticsReport};
pub use structure::{Comparator, Renaming, Structure, StructureKind};
