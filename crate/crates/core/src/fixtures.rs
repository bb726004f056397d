//! Named structures and programs that recur in tests, docs and the CLI.

use crate::interp::{atom, Atom, Interpretation};
use crate::program::{Program, Rule};
use crate::structure::{Comparator, Structure};

/// `I ∩ {a,b} != {b}`, written as `sum{a=1, b=-1} >= 0`.
pub fn s4() -> Structure {
    Structure::sum([(atom("a"), 1), (atom("b"), -1)], Comparator::Ge, 0).unwrap()
}

/// `I ∩ {a,b} != {a}`, written as `sum{a=-1, b=1} >= 0`.
pub fn s5() -> Structure {
    Structure::sum([(atom("a"), -1), (atom("b"), 1)], Comparator::Ge, 0).unwrap()
}

/// `{a <- S4; b <- S5}`.
pub fn p1() -> Program {
    Program::new([Rule::new(atom("a"), s4()), Rule::new(atom("b"), s5())])
}

/// `p1` plus `a <- b` and `b <- a`.
pub fn p1_loop() -> Program {
    let mut p = p1();
    p.push(Rule::new(
        atom("a"),
        Structure::conjunction(&[atom("b")], &[]).unwrap(),
    ));
    p.push(Rule::new(
        atom("b"),
        Structure::conjunction(&[atom("a")], &[]).unwrap(),
    ));
    p
}

fn x_pair() -> Vec<Atom> {
    vec![atom("x_T"), atom("x_F")]
}

/// True at `{}`, `{x_T}`, `{x_T, x_F}`; false at `{x_F}`.
pub fn s1() -> Structure {
    Structure::table(x_pair(), [0b00, 0b01, 0b11]).unwrap()
}

/// True at `{}`, `{x_F}`, `{x_T, x_F}`; false at `{x_T}`.
pub fn s2() -> Structure {
    Structure::table(x_pair(), [0b00, 0b10, 0b11]).unwrap()
}

/// `COUNT({x, y}) != 1`.
pub fn a_ring() -> Structure {
    a_ring_over(atom("x"), atom("y"))
}

/// The variant of [`a_ring`] over `{x, y}` renamed to `{u, v}`.
pub fn a_ring_over(u: Atom, v: Atom) -> Structure {
    Structure::count(vec![u, v], Comparator::Ne, 1).unwrap()
}

/// `COUNT({a1..an}) != k`.
pub fn count_ne(n: usize, k: i64) -> Structure {
    Structure::count(
        (1..=n).map(|i| atom(&format!("a{i}"))).collect(),
        Comparator::Ne,
        k,
    )
    .unwrap()
}

/// `a1, ..., am, not a(m+1), ..., not an`.
pub fn literal_block(m: usize, n: usize) -> Structure {
    assert!(m <= n);
    Structure::literals((1..=n).map(|i| (atom(&format!("a{i}")), i <= m))).unwrap()
}

/// A program over variants of [`a_ring`] with `rules` rules (rounded up to
/// an even count) whose fixpoint iteration derives one pair of atoms per
/// stage, together with its unique PSP answer set.
///
/// `p0. q0.` then `pi :- count{p(i-1), q(i-1)} != 1.` and the same for `qi`.
pub fn a_ring_chain(rules: usize) -> (Program, Interpretation) {
    let pairs = rules.div_ceil(2).max(1);
    let p = |i: usize| atom(&format!("p{i}"));
    let q = |i: usize| atom(&format!("q{i}"));
    let mut prog = Program::new([Rule::fact(p(0)), Rule::fact(q(0))]);
    for i in 1..pairs {
        let body = a_ring_over(p(i - 1), q(i - 1));
        prog.push(Rule::new(p(i), body.clone()));
        prog.push(Rule::new(q(i), body));
    }
    let model = (0..pairs).flat_map(|i| [p(i), q(i)]).collect();
    (prog, model)
}
