//! Invariants of the engine, checked on random structures and programs.

use gasp_core::classify::classify;
use gasp_core::flp::{enumerate_flp_answer_sets, flp_reduct, is_flp_answer_set};
use gasp_core::generate::{generator_atoms, random_body, BodyClass, GeneratorConfig};
use gasp_core::psp::{cond_sat, enumerate_psp_answer_sets, k_operator, k_operator_over, lfp_k};
use gasp_core::reasoning::{cautious, Semantics};
use gasp_core::{
    atom, generate, models_program, Atom, Interpretation, Program, Renaming, Rule, Structure,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ALL_CLASSES: [BodyClass; 6] = [
    BodyClass::Monotone,
    BodyClass::Antimonotone,
    BodyClass::Convex,
    BodyClass::NonconvexBounded(3),
    BodyClass::Nonconvex,
    BodyClass::Literals,
];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_structure(r: &mut ChaCha8Rng) -> Structure {
    let class = *ALL_CLASSES.choose(r).unwrap();
    let atoms = generator_atoms(6);
    let s = random_body(r, &atoms, class);
    // Exercise the Dnf kind as well.
    if r.gen_bool(0.2) && !s.domain().is_empty() {
        let d = s.domain().to_vec();
        let disjuncts = (0..r.gen_range(1..=3))
            .map(|_| {
                let n = r.gen_range(0..=d.len());
                d.choose_multiple(r, n)
                    .map(|a| (a.clone(), r.gen_bool(0.5)))
                    .collect()
            })
            .collect();
        return Structure::dnf_over(d, disjuncts).unwrap();
    }
    s
}

fn random_subset(r: &mut ChaCha8Rng, atoms: &[Atom]) -> Interpretation {
    atoms.iter().filter(|_| r.gen_bool(0.5)).cloned().collect()
}

fn subsets(atoms: &[Atom]) -> impl Iterator<Item = Interpretation> + '_ {
    (0..1u64 << atoms.len()).map(move |m| {
        atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| m >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect()
    })
}

fn random_program(seed: u64, classes: Vec<BodyClass>) -> Program {
    let mut r = rng(seed);
    generate(&GeneratorConfig {
        atom_count: r.gen_range(2..=6),
        rule_count: r.gen_range(0..=8),
        structure_classes: classes,
        seed: r.gen(),
    })
    .unwrap()
}

/// `(I, M) |= S` straight from the definition: every `J` between `I` and `M`.
fn cond_sat_by_definition(s: &Structure, i: &Interpretation, m: &Interpretation) -> bool {
    let extra: Vec<Atom> = m.iter().filter(|a| !i.contains(a)).cloned().collect();
    let ok = subsets(&extra).all(|j| s.evaluate(&i.union(&j)));
    ok
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn irrelevance_of_atoms_outside_domain(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_structure(&mut r);
        let i = random_subset(&mut r, &generator_atoms(6));
        let fresh: Vec<Atom> = (0..4).map(|k| atom(&format!("fresh{k}"))).collect();
        let x = random_subset(&mut r, &fresh);
        prop_assert_eq!(s.evaluate(&i), s.evaluate(&i.union(&x)));
    }

    #[test]
    fn renaming_equivariance(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_structure(&mut r);
        let mut pool = generator_atoms(6);
        pool.extend((0..3).map(|k| atom(&format!("q{k}"))));
        let mut image = pool.clone();
        image.shuffle(&mut r);
        let sigma = Renaming::new(pool.iter().cloned().zip(image)).unwrap();
        let t = s.rename(&sigma).unwrap();
        for i in subsets(&pool[..6]) {
            prop_assert_eq!(t.evaluate(&sigma.apply_interp(&i)), s.evaluate(&i));
        }
    }

    #[test]
    fn tabulation_agrees_with_every_kind(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_structure(&mut r);
        let t = s.tabulate().unwrap();
        for i in subsets(s.domain()) {
            prop_assert_eq!(s.evaluate(&i), t.evaluate(&i));
        }
    }

    #[test]
    fn adding_rules_never_creates_models(seed in any::<u64>()) {
        let p = random_program(seed, ALL_CLASSES.to_vec());
        let mut r = rng(seed ^ 1);
        let extra = Rule::new(atom("p1"), random_structure(&mut r));
        let mut bigger = p.clone();
        bigger.push(extra);
        for i in subsets(&generator_atoms(6)) {
            prop_assert!(!models_program(&i, &bigger) || models_program(&i, &p));
        }
    }

    #[test]
    fn reduct_membership(seed in any::<u64>()) {
        let p = random_program(seed, ALL_CLASSES.to_vec());
        let i = random_subset(&mut rng(seed ^ 2), &generator_atoms(6));
        let reduct = flp_reduct(&p, &i);
        let expected: Vec<&Rule> = p.rules().iter().filter(|r| r.body.evaluate(&i)).collect();
        prop_assert_eq!(reduct.rules(), &expected[..]);
    }

    #[test]
    fn flp_answer_sets_only_use_heads(seed in any::<u64>()) {
        let p = random_program(seed, ALL_CLASSES.to_vec());
        let atoms: Vec<Atom> = p.atoms().into_iter().collect();
        prop_assume!(atoms.len() <= 10);
        let mut everywhere: Vec<Interpretation> = subsets(&atoms)
            .filter(|i| is_flp_answer_set(&p, i).unwrap())
            .collect();
        gasp_core::interp::sort_canonical(&mut everywhere);
        prop_assert_eq!(everywhere, enumerate_flp_answer_sets(&p).unwrap());
    }

    #[test]
    fn flp_answer_sets_form_an_antichain(seed in any::<u64>()) {
        let p = random_program(seed, ALL_CLASSES.to_vec());
        let sets = enumerate_flp_answer_sets(&p).unwrap();
        for a in &sets {
            for b in &sets {
                prop_assert!(a == b || !a.is_subset(b), "{} within {}", a, b);
            }
        }
    }

    #[test]
    fn k_operator_reduct_form(seed in any::<u64>()) {
        let p = random_program(seed, ALL_CLASSES.to_vec());
        let mut r = rng(seed ^ 3);
        let m = random_subset(&mut r, &generator_atoms(6));
        let i: Interpretation = m.iter().filter(|_| r.gen_bool(0.5)).cloned().collect();
        let reduct = flp_reduct(&p, &m);
        prop_assert_eq!(
            k_operator(&p, &m, &i).unwrap(),
            k_operator_over(reduct.rules().iter().copied(), &m, &i).unwrap()
        );
    }

    #[test]
    fn cond_sat_matches_definition_and_is_monotone(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = random_structure(&mut r);
        let mut pool = generator_atoms(6);
        pool.extend([atom("z1"), atom("z2")]);
        let m = random_subset(&mut r, &pool);
        let i: Interpretation = m.iter().filter(|_| r.gen_bool(0.5)).cloned().collect();
        let i2: Interpretation = m.iter().filter(|a| i.contains(a) || r.gen_bool(0.5)).cloned().collect();
        let lower = cond_sat(&s, &i, &m).unwrap();
        prop_assert_eq!(lower, cond_sat_by_definition(&s, &i, &m));
        prop_assert!(!lower || cond_sat(&s, &i2, &m).unwrap());
    }

    #[test]
    fn psp_answer_sets_are_flp_answer_sets(seed in any::<u64>()) {
        let p = random_program(seed, ALL_CLASSES.to_vec());
        let flp = enumerate_flp_answer_sets(&p).unwrap();
        for m in enumerate_psp_answer_sets(&p).unwrap() {
            prop_assert!(flp.contains(&m), "{} not FLP in\n{}", m, p);
        }
    }

    #[test]
    fn trace_length_is_bounded(seed in any::<u64>()) {
        let p = random_program(seed, ALL_CLASSES.to_vec());
        let m = random_subset(&mut rng(seed ^ 4), &generator_atoms(6));
        let t = lfp_k(&p, &m).unwrap();
        prop_assert!(t.stages.len() <= p.head_atoms().len() + 2);
        for w in t.stages.windows(2) {
            prop_assert!(w[0].is_subset(&w[1]));
        }
    }

    #[test]
    fn trace_matches_plain_iteration(seed in any::<u64>()) {
        let p = random_program(seed, ALL_CLASSES.to_vec());
        let m = random_subset(&mut rng(seed ^ 5), &generator_atoms(6));
        let mut stages = vec![Interpretation::new()];
        let converged = loop {
            let next = k_operator(&p, &m, stages.last().unwrap()).unwrap();
            let repeated = &next == stages.last().unwrap();
            let escaped = !next.is_subset(&m);
            stages.push(next);
            if escaped || repeated {
                break !escaped;
            }
        };
        let t = lfp_k(&p, &m).unwrap();
        prop_assert_eq!(t.stages, stages);
        prop_assert_eq!(t.converged, converged);
    }

    #[test]
    fn convex_programs_agree_on_cautious_consequences(seed in any::<u64>()) {
        let p = random_program(seed, vec![BodyClass::Monotone, BodyClass::Antimonotone, BodyClass::Convex]);
        for a in generator_atoms(6) {
            prop_assert_eq!(
                cautious(&p, &a, Semantics::Flp).unwrap(),
                cautious(&p, &a, Semantics::Psp).unwrap()
            );
        }
    }
}

#[test]
fn convex_bodies_classify_convex() {
    for seed in 0..50 {
        let p = random_program(seed, vec![BodyClass::Convex]);
        assert!(p.rules().iter().all(|r| classify(&r.body).unwrap().convex));
    }
}
