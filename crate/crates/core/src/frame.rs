//! Bitmask view of a program over a small, fixed set of atoms.
//!
//! Candidate interpretations drawn from the frame become `u64` masks; atoms
//! outside the frame are false in every such interpretation.

use std::borrow::Borrow;
use std::collections::HashMap;

use crate::interp::{Atom, Interpretation};
use crate::program::Rule;
use crate::structure::Structure;

pub(crate) struct Frame {
    atoms: Vec<Atom>,
    index: HashMap<Atom, usize>,
}

impl Frame {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let atoms: Vec<Atom> = atoms.into_iter().collect();
        assert!(atoms.len() <= 64, "frame wider than 64 atoms");
        let index = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Frame { atoms, index }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn bit(&self, a: &Atom) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn interp(&self, mask: u64) -> Interpretation {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect()
    }
}

pub(crate) struct CompiledRule<'p> {
    pub head: Option<usize>,
    pub body: &'p Structure,
    /// Frame bit of each body domain atom.
    positions: Vec<Option<usize>>,
}

impl CompiledRule<'_> {
    /// Restriction of a frame mask to the body domain.
    #[inline]
    pub fn body_mask(&self, frame_mask: u64) -> u64 {
        let mut m = 0;
        for (i, p) in self.positions.iter().enumerate() {
            if let Some(b) = p {
                m |= (frame_mask >> b & 1) << i;
            }
        }
        m
    }

    #[inline]
    pub fn body_holds(&self, frame_mask: u64) -> bool {
        self.body.eval_mask(self.body_mask(frame_mask))
    }

    #[inline]
    pub fn head_in(&self, frame_mask: u64) -> bool {
        self.head.is_some_and(|h| frame_mask >> h & 1 == 1)
    }

    pub fn head_bit(&self) -> u64 {
        self.head.map_or(0, |h| 1 << h)
    }
}

pub(crate) fn compile<'p>(
    frame: &Frame,
    rules: impl IntoIterator<Item = &'p Rule>,
) -> Vec<CompiledRule<'p>> {
    rules
        .into_iter()
        .map(|r| CompiledRule {
            head: frame.bit(&r.head),
            body: &r.body,
            positions: r.body.domain().iter().map(|a| frame.bit(a)).collect(),
        })
        .collect()
}

/// Does the frame mask satisfy every rule?
pub(crate) fn models<'p, R: Borrow<CompiledRule<'p>>>(rules: &[R], mask: u64) -> bool {
    rules.iter().all(|r| {
        let r = r.borrow();
        r.head_in(mask) || !r.body_holds(mask)
    })
}
