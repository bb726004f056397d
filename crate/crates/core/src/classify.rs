//! Monotonicity and convexity by exhaustive inspection of the subset
//! lattice of a structure's domain.

use std::fmt;

use crate::error::{Error, Result};
use crate::structure::{Structure, DEFAULT_ENUM_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StructureClass {
    pub monotone: bool,
    pub antimonotone: bool,
    pub convex: bool,
}

impl StructureClass {
    /// Most specific label: monotone, antimonotone, convex, non-convex.
    pub fn label(&self) -> &'static str {
        if self.monotone {
            "monotone"
        } else if self.antimonotone {
            "antimonotone"
        } else if self.convex {
            "convex"
        } else {
            "non-convex"
        }
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `up[m]` iff some row below `m` is true; `down[m]` iff some row above is.
fn closures(tv: &[bool], k: usize) -> (Vec<bool>, Vec<bool>) {
    let mut up = tv.to_vec();
    let mut down = tv.to_vec();
    for bit in 0..k {
        let b = 1usize << bit;
        for m in 0..tv.len() {
            if m & b != 0 {
                up[m] |= up[m ^ b];
            } else {
                down[m] |= down[m | b];
            }
        }
    }
    (up, down)
}

pub fn classify(s: &Structure) -> Result<StructureClass> {
    classify_with_cap(s, DEFAULT_ENUM_CAP)
}

pub fn classify_with_cap(s: &Structure, cap: usize) -> Result<StructureClass> {
    let tv = s.truth_vector(cap)?;
    Ok(classify_truth_vector(&tv, s.domain().len()))
}

/// Classifies a truth vector indexed by row mask over `k` atoms.
pub fn classify_truth_vector(tv: &[bool], k: usize) -> StructureClass {
    let mut monotone = true;
    let mut antimonotone = true;
    // Checking covering pairs (one added atom) suffices for both.
    for (m, &t) in tv.iter().enumerate() {
        for bit in 0..k {
            let b = 1usize << bit;
            if m & b == 0 {
                let above = tv[m | b];
                monotone &= !t || above;
                antimonotone &= !above || t;
            }
        }
    }
    let (up, down) = closures(tv, k);
    let convex = (0..tv.len()).all(|m| tv[m] || !(up[m] && down[m]));
    StructureClass {
        monotone,
        antimonotone,
        convex,
    }
}

/// Splits a convex structure into a monotone and an antimonotone truth
/// table over the same domain whose conjunction is the original.
pub fn decompose_convex(s: &Structure) -> Result<(Structure, Structure)> {
    let k = s.domain().len();
    let tv = s.truth_vector(DEFAULT_ENUM_CAP)?;
    if !classify_truth_vector(&tv, k).convex {
        return Err(Error::NotConvex);
    }
    let (up, down) = closures(&tv, k);
    let rows = |v: &[bool]| -> Vec<u64> {
        v.iter()
            .enumerate()
            .filter(|(_, &t)| t)
            .map(|(m, _)| m as u64)
            .collect()
    };
    let mono = Structure::table(s.domain().to_vec(), rows(&up))?;
    let anti = Structure::table(s.domain().to_vec(), rows(&down))?;
    Ok((mono, anti))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::interp::atom;
    use crate::structure::Comparator;
    use proptest::prelude::*;

    /// Definitional check over all chains X ⊂ Y (⊂ Z).
    fn brute_force(tv: &[bool]) -> StructureClass {
        let n = tv.len();
        let sub = |a: usize, b: usize| a & b == a && a != b;
        let mut c = StructureClass {
            monotone: true,
            antimonotone: true,
            convex: true,
        };
        for x in 0..n {
            for y in 0..n {
                if !sub(x, y) {
                    continue;
                }
                if tv[x] && !tv[y] {
                    c.monotone = false;
                }
                if tv[y] && !tv[x] {
                    c.antimonotone = false;
                }
                for z in 0..n {
                    if sub(y, z) && tv[x] && tv[z] && !tv[y] {
                        c.convex = false;
                    }
                }
            }
        }
        c
    }

    #[test]
    fn literal_blocks() {
        let anti = classify(&fixtures::literal_block(0, 3)).unwrap();
        assert_eq!(anti.label(), "antimonotone");
        assert!(!anti.monotone);
        let mono = classify(&fixtures::literal_block(3, 3)).unwrap();
        assert_eq!(mono.label(), "monotone");
        let mixed = classify(&fixtures::literal_block(1, 3)).unwrap();
        assert_eq!(mixed.label(), "convex");
    }

    #[test]
    fn count_not_equal_is_non_convex() {
        for (n, k) in [(2, 1), (3, 1), (3, 2), (5, 3)] {
            assert!(!classify(&fixtures::count_ne(n, k)).unwrap().convex);
        }
        let c = classify(&fixtures::a_ring()).unwrap();
        assert!(!c.monotone && !c.antimonotone && !c.convex);
    }

    #[test]
    fn sum_with_mixed_signs_is_non_convex() {
        // true at {} and {a,b}, false at {b}
        assert_eq!(classify(&fixtures::s4()).unwrap().label(), "non-convex");
        assert_eq!(classify(&fixtures::s5()).unwrap().label(), "non-convex");
    }

    #[test]
    fn constant_true_is_everything() {
        let c = classify(&Structure::constant_true()).unwrap();
        assert!(c.monotone && c.antimonotone && c.convex);
        assert_eq!(c.label(), "monotone");
    }

    #[test]
    fn cap_is_enforced() {
        let d = (0..8).map(|i| atom(&format!("v{i}"))).collect();
        let s = Structure::count(d, Comparator::Ge, 1).unwrap();
        assert!(matches!(
            classify_with_cap(&s, 7),
            Err(Error::DomainTooLarge { size: 8, cap: 7 })
        ));
    }

    #[test]
    fn complement_of_ring_breaks_closure() {
        // true exactly at the singletons: neither monotone nor antimonotone
        let c = classify(&fixtures::a_ring().complement().unwrap()).unwrap();
        assert!(!c.monotone && !c.antimonotone);
        assert!(c.convex);
    }

    #[test]
    fn decompose_degenerate_cases() {
        let mono = fixtures::literal_block(2, 2);
        let (m, a) = decompose_convex(&mono).unwrap();
        assert_eq!(m, mono.tabulate().unwrap());
        assert!((0..4).all(|r| a.eval_mask(r)));

        let anti = fixtures::literal_block(0, 2);
        let (m, a) = decompose_convex(&anti).unwrap();
        assert!((0..4).all(|r| m.eval_mask(r)));
        assert_eq!(a, anti.tabulate().unwrap());

        assert_eq!(decompose_convex(&fixtures::a_ring()), Err(Error::NotConvex));
    }

    #[test]
    fn decompose_literal_block_into_polar_parts() {
        // a1, a2, not a3, not a4
        let s = fixtures::literal_block(2, 4);
        let (m, a) = decompose_convex(&s).unwrap();
        let pos = Structure::literals([(atom("a1"), true), (atom("a2"), true)]).unwrap();
        let neg = Structure::literals([(atom("a3"), false), (atom("a4"), false)]).unwrap();
        for row in 0..16u64 {
            assert_eq!(m.eval_mask(row), pos.eval_mask(row & 0b11));
            assert_eq!(a.eval_mask(row), neg.eval_mask(row >> 2));
        }
    }

    /// Upward closure of `lo` intersected with the downward closure of `hi`.
    fn convex_table(dom: Vec<crate::interp::Atom>, lo: u16, hi: u16) -> Structure {
        Structure::table_from_fn(dom, |m| {
            let below = (0..16u64).any(|j| lo >> j & 1 == 1 && j & m == j);
            let above = (0..16u64).any(|j| hi >> j & 1 == 1 && j & m == m);
            below && above
        })
        .unwrap()
    }

    proptest! {
        #[test]
        fn agrees_with_triple_loop(k in 0usize..=6, bits in any::<u64>()) {
            let tv: Vec<bool> = (0..1usize << k).map(|m| bits >> m & 1 == 1).collect();
            prop_assert_eq!(classify_truth_vector(&tv, k), brute_force(&tv));
        }

        #[test]
        fn classes_nest(bits in any::<u32>()) {
            let tv: Vec<bool> = (0..32).map(|m| bits >> m & 1 == 1).collect();
            let c = classify_truth_vector(&tv, 5);
            prop_assert!(!c.monotone || c.convex);
            prop_assert!(!c.antimonotone || c.convex);
        }

        #[test]
        fn decomposition_round_trips(bits in any::<u16>()) {
            let tv: Vec<bool> = (0..16).map(|m| bits >> m & 1 == 1).collect();
            let d: Vec<_> = (0..4).map(|i| atom(&format!("d{i}"))).collect();
            let s = Structure::table_from_fn(d, |m| tv[m as usize]).unwrap();
            match decompose_convex(&s) {
                Ok((m, a)) => {
                    prop_assert!(classify(&m).unwrap().monotone);
                    prop_assert!(classify(&a).unwrap().antimonotone);
                    for row in 0..16u64 {
                        prop_assert_eq!(s.eval_mask(row), m.eval_mask(row) && a.eval_mask(row));
                    }
                }
                Err(e) => {
                    prop_assert_eq!(e, Error::NotConvex);
                    prop_assert!(!brute_force(&tv).convex);
                }
            }
        }

        #[test]
        fn convex_closed_under_conjunction(a in any::<u16>(), b in any::<u16>(), c in any::<u16>(), d in any::<u16>()) {
            let dom: Vec<_> = (0..4).map(|i| atom(&format!("d{i}"))).collect();
            // second structure shares two atoms and adds two fresh ones
            let other: Vec<_> = (2..6).map(|i| atom(&format!("d{i}"))).collect();
            let s = convex_table(dom, a, b);
            let t = convex_table(other, c, d);
            prop_assert!(classify(&s).unwrap().convex && classify(&t).unwrap().convex);
            prop_assert!(classify(&s.conjoin(&t).unwrap()).unwrap().convex);
        }
    }
}
