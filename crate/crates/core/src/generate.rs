//! Seeded random programs for the differential suites.
//!
//! Bodies are drawn per requested class and then checked against the
//! classifier; a draw the classifier disagrees with is rejected and redrawn.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify, StructureClass};
use crate::error::{Error, Result};
use crate::interp::{atom, Atom};
use crate::program::{Program, Rule};
use crate::structure::{Comparator, Structure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BodyClass {
    Monotone,
    Antimonotone,
    Convex,
    /// Non-convex with at most this many domain atoms.
    NonconvexBounded(usize),
    Nonconvex,
    /// Plain literal conjunctions (normal programs).
    Literals,
}

impl BodyClass {
    fn accepts(self, c: StructureClass, domain: usize) -> bool {
        match self {
            BodyClass::Monotone => c.monotone,
            BodyClass::Antimonotone => c.antimonotone,
            BodyClass::Convex | BodyClass::Literals => c.convex,
            BodyClass::NonconvexBounded(k) => !c.convex && domain <= k,
            BodyClass::Nonconvex => !c.convex,
        }
    }
}

impl fmt::Display for BodyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyClass::Monotone => f.write_str("monotone"),
            BodyClass::Antimonotone => f.write_str("antimonotone"),
            BodyClass::Convex => f.write_str("convex"),
            BodyClass::NonconvexBounded(k) => write!(f, "nonconvex-bounded({k})"),
            BodyClass::Nonconvex => f.write_str("nonconvex"),
            BodyClass::Literals => f.write_str("literals"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub atom_count: usize,
    pub rule_count: usize,
    pub structure_classes: Vec<BodyClass>,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.atom_count == 0 {
            return bad("atom_count must be at least 1");
        }
        if self.atom_count > 20 {
            return bad("atom_count must be at most 20");
        }
        if self.rule_count > 0 && self.structure_classes.is_empty() {
            return bad("no structure classes to draw bodies from");
        }
        for c in &self.structure_classes {
            match *c {
                BodyClass::NonconvexBounded(k) if k < 2 || self.atom_count < 2 => {
                    return bad("non-convex bodies need at least two atoms")
                }
                BodyClass::Nonconvex if self.atom_count < 2 => {
                    return bad("non-convex bodies need at least two atoms")
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Atom names used by the generator: `p1`, `p2`, ...
pub fn generator_atoms(n: usize) -> Vec<Atom> {
    (1..=n).map(|i| atom(&format!("p{i}"))).collect()
}

fn pick_domain(rng: &mut ChaCha8Rng, atoms: &[Atom], lo: usize, hi: usize) -> Vec<Atom> {
    let size = rng.gen_range(lo..=hi.min(atoms.len()));
    atoms.choose_multiple(rng, size).cloned().collect()
}

fn random_rows(rng: &mut ChaCha8Rng, k: usize) -> Vec<bool> {
    (0..1usize << k).map(|_| rng.gen_bool(0.5)).collect()
}

/// `up[m]` iff some seed row lies below `m`.
fn upward(seeds: &[bool]) -> Vec<bool> {
    (0..seeds.len())
        .map(|m| (0..seeds.len()).any(|j| seeds[j] && j & m == j))
        .collect()
}

fn downward(seeds: &[bool]) -> Vec<bool> {
    (0..seeds.len())
        .map(|m| (0..seeds.len()).any(|j| seeds[j] && j & m == m))
        .collect()
}

fn table(domain: Vec<Atom>, tv: &[bool]) -> Structure {
    Structure::table_from_fn(domain, |m| tv[m as usize]).expect("small generated table")
}

fn draw(rng: &mut ChaCha8Rng, atoms: &[Atom], class: BodyClass) -> Structure {
    let n = atoms.len();
    match class {
        BodyClass::Literals => {
            let d = pick_domain(rng, atoms, 0, 3);
            Structure::literals(d.into_iter().map(|a| (a, rng.gen_bool(0.5))))
                .expect("distinct atoms")
        }
        BodyClass::Monotone => {
            let d = pick_domain(rng, atoms, 0, 3);
            match rng.gen_range(0..4) {
                0 => Structure::conjunction(&d, &[]).expect("distinct atoms"),
                1 => {
                    let g = rng.gen_range(0..=d.len() as i64);
                    Structure::count(d, Comparator::Ge, g).expect("distinct atoms")
                }
                2 => {
                    let w: Vec<(Atom, i64)> =
                        d.into_iter().map(|a| (a, rng.gen_range(0..=3))).collect();
                    let g = rng.gen_range(0..=4);
                    Structure::sum(w, Comparator::Ge, g).expect("distinct atoms")
                }
                _ => {
                    let tv = upward(&random_rows(rng, d.len()));
                    table(d, &tv)
                }
            }
        }
        BodyClass::Antimonotone => {
            let d = pick_domain(rng, atoms, 0, 3);
            match rng.gen_range(0..3) {
                0 => Structure::conjunction(&[], &d).expect("distinct atoms"),
                1 => {
                    let g = rng.gen_range(0..=d.len() as i64);
                    Structure::count(d, Comparator::Le, g).expect("distinct atoms")
                }
                _ => {
                    let tv = downward(&random_rows(rng, d.len()));
                    table(d, &tv)
                }
            }
        }
        BodyClass::Convex => {
            let d = pick_domain(rng, atoms, 0, 4);
            match rng.gen_range(0..3) {
                0 => Structure::literals(d.into_iter().map(|a| (a, rng.gen_bool(0.5))))
                    .expect("distinct atoms"),
                1 => {
                    let g = rng.gen_range(0..=d.len() as i64);
                    Structure::count(d, Comparator::Eq, g).expect("distinct atoms")
                }
                _ => {
                    let up = upward(&random_rows(rng, d.len()));
                    let down = downward(&random_rows(rng, d.len()));
                    let tv: Vec<bool> = up.iter().zip(&down).map(|(u, d)| *u && *d).collect();
                    table(d, &tv)
                }
            }
        }
        BodyClass::NonconvexBounded(k) => {
            let d = pick_domain(rng, atoms, 2, k.min(n));
            let tv = random_rows(rng, d.len());
            table(d, &tv)
        }
        BodyClass::Nonconvex => {
            let d = pick_domain(rng, atoms, 2, n.min(5));
            match rng.gen_range(0..3) {
                0 => {
                    let g = rng.gen_range(1..d.len() as i64);
                    Structure::count(d, Comparator::Ne, g).expect("distinct atoms")
                }
                1 => {
                    let w: Vec<(Atom, i64)> =
                        d.into_iter().map(|a| (a, rng.gen_range(-2..=2))).collect();
                    let cmp = *Comparator::ALL.choose(rng).expect("non-empty");
                    Structure::sum(w, cmp, rng.gen_range(-1..=1)).expect("distinct atoms")
                }
                _ => {
                    let tv = random_rows(rng, d.len());
                    table(d, &tv)
                }
            }
        }
    }
}

/// Draws one body of the given class, redrawing until the classifier agrees.
pub fn random_body(rng: &mut ChaCha8Rng, atoms: &[Atom], class: BodyClass) -> Structure {
    loop {
        let s = draw(rng, atoms, class);
        let c = classify(&s).expect("generated domains are small");
        if class.accepts(c, s.domain().len()) {
            return s;
        }
    }
}

/// A program over `p1..pn`, deterministic in the seed.
pub fn generate(cfg: &GeneratorConfig) -> Result<Program> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let atoms = generator_atoms(cfg.atom_count);
    let mut p = Program::default();
    for _ in 0..cfg.rule_count {
        let class = *cfg.structure_classes.choose(&mut rng).expect("validated");
        let head = atoms.choose(&mut rng).expect("validated").clone();
        let body = random_body(&mut rng, &atoms, class);
        p.push(Rule::new(head, body));
    }
    Ok(p)
}
