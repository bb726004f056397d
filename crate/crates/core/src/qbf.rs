//! 2-QBF (`forall x. exists y. E`, `E` in 3CNF) and the reduction of its
//! validity to cautious reasoning under the PSP semantics.
//!
//! The reduction program guesses an assignment with even loops over
//! `v_T`/`v_F`, saturates the existential atoms once `sat` holds, derives
//! `sat` from a structure encoding the negated matrix, and derives `w` from
//! `not sat`. Then `w` is a cautious consequence iff the formula is valid.
//!
//! The `sat` body reads an interpretation as a *partial* assignment: `v_T`
//! alone means true, `v_F` alone means false, and both or neither leave `v`
//! open. It holds iff every total assignment compatible with the
//! interpretation falsifies the matrix. On interpretations encoding a total
//! assignment this is exactly the negated matrix. The reading matters for
//! conditional satisfaction: between a pure `x`-assignment and the saturated
//! model every `y` is open, so `sat` fires iff no `y` completes the `x`
//! assignment. A plain DNF over the `_T`/`_F` atoms is monotone and cannot
//! express this (see [`mu_dnf`]).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::error::Error as EngineError;
use crate::interp::{atom, is_identifier, Atom, Interpretation};
use crate::limits::Limits;
use crate::parse::{lex, Cursor, ParseError, Tok};
use crate::program::{Program, Rule};
use crate::reasoning::{cautious_with, Semantics};
use crate::structure::Structure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QbfError {
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("the matrix has no clauses")]
    EmptyMatrix,
    #[error("variable `{0}` is not quantified")]
    UnboundVariable(String),
    #[error("variable `{0}` is quantified twice")]
    DuplicateVariable(String),
    #[error("both quantifier blocks must be non-empty")]
    EmptyBlock,
    #[error("clause {0} has more than three literals")]
    ClauseTooLong(usize),
    #[error("{0} variables exceed the brute-force cap of {1}")]
    TooManyVariables(usize, usize),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A literal over variable index `var` (universals first, then existentials).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn negated(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    fn holds(self, assignment: u64) -> bool {
        (assignment >> self.var & 1 == 1) == self.positive
    }
}

pub type Clause = [Lit; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qbf {
    pub universals: Vec<String>,
    pub existentials: Vec<String>,
    /// Conjunction of three-literal clauses.
    pub matrix: Vec<Clause>,
}

/// Disjunction of three-literal conjunctions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dnf3 {
    pub disjuncts: Vec<[Lit; 3]>,
}

impl Dnf3 {
    pub fn holds(&self, assignment: u64) -> bool {
        self.disjuncts
            .iter()
            .any(|d| d.iter().all(|l| l.holds(assignment)))
    }
}

/// Brute-force cap for [`qbf_valid`].
pub const MAX_QBF_VARS: usize = 24;

impl Qbf {
    pub fn new(
        universals: Vec<String>,
        existentials: Vec<String>,
        matrix: Vec<Clause>,
    ) -> Result<Self, QbfError> {
        if universals.is_empty() || existentials.is_empty() {
            return Err(QbfError::EmptyBlock);
        }
        if matrix.is_empty() {
            return Err(QbfError::EmptyMatrix);
        }
        let mut seen = BTreeMap::new();
        for v in universals.iter().chain(&existentials) {
            if !is_identifier(v) {
                return Err(QbfError::Syntax(ParseError {
                    line: 1,
                    column: 1,
                    message: format!("bad variable name `{v}`"),
                }));
            }
            if seen.insert(v.clone(), ()).is_some() {
                return Err(QbfError::DuplicateVariable(v.clone()));
            }
        }
        let vars = universals.len() + existentials.len();
        if vars > 64 {
            return Err(QbfError::TooManyVariables(vars, 64));
        }
        if let Some(l) = matrix.iter().flatten().find(|l| l.var >= vars) {
            return Err(QbfError::UnboundVariable(format!("#{}", l.var)));
        }
        Ok(Qbf {
            universals,
            existentials,
            matrix,
        })
    }

    pub fn var_count(&self) -> usize {
        self.universals.len() + self.existentials.len()
    }

    pub fn var_name(&self, var: usize) -> &str {
        let m = self.universals.len();
        if var < m {
            &self.universals[var]
        } else {
            &self.existentials[var - m]
        }
    }

    /// `E` under an assignment (bit `i` = value of variable `i`).
    pub fn matrix_holds(&self, assignment: u64) -> bool {
        self.matrix
            .iter()
            .all(|c| c.iter().any(|l| l.holds(assignment)))
    }

    pub fn true_atom(&self, var: usize) -> Atom {
        atom(&format!("{}_T", self.var_name(var)))
    }

    pub fn false_atom(&self, var: usize) -> Atom {
        atom(&format!("{}_F", self.var_name(var)))
    }

    fn lit_atom(&self, l: Lit) -> Atom {
        if l.positive {
            self.true_atom(l.var)
        } else {
            self.false_atom(l.var)
        }
    }
}

impl fmt::Display for Qbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "forall {} . exists {} . ",
            self.universals.join(", "),
            self.existentials.join(", ")
        )?;
        for (i, c) in self.matrix.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            let lits: Vec<String> = c
                .iter()
                .map(|l| {
                    format!(
                        "{}{}",
                        if l.positive { "" } else { "-" },
                        self.var_name(l.var)
                    )
                })
                .collect();
            write!(f, "({})", lits.join(" | "))?;
        }
        Ok(())
    }
}

fn pad(lits: Vec<Lit>, clause_no: usize) -> Result<Clause, QbfError> {
    match lits.len() {
        1 => Ok([lits[0]; 3]),
        2 => Ok([lits[0], lits[1], lits[1]]),
        3 => Ok([lits[0], lits[1], lits[2]]),
        _ => Err(QbfError::ClauseTooLong(clause_no)),
    }
}

fn var_block(c: &mut Cursor, keyword: &str) -> Result<Vec<String>, QbfError> {
    if !c.is_keyword(keyword) {
        return Err(c.unexpected(&format!("`{keyword}`")).into());
    }
    c.next();
    let mut vars = vec![c.ident("a variable")?];
    while c.eat(",") {
        vars.push(c.ident("a variable")?);
    }
    c.expect(".")?;
    Ok(vars)
}

fn parse_bespoke(src: &str) -> Result<Qbf, QbfError> {
    let mut c = Cursor::new(lex(src, '%')?);
    let universals = var_block(&mut c, "forall")?;
    let existentials = var_block(&mut c, "exists")?;
    let index: BTreeMap<String, usize> = universals
        .iter()
        .chain(&existentials)
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let mut matrix = Vec::new();
    if c.peek() == &Tok::Eof {
        return Err(QbfError::EmptyMatrix);
    }
    loop {
        c.expect("(")?;
        let mut lits = Vec::new();
        loop {
            let positive = !c.eat("-");
            let name = c.ident("a variable")?;
            let var = *index
                .get(&name)
                .ok_or_else(|| QbfError::UnboundVariable(name.clone()))?;
            lits.push(Lit { var, positive });
            if !c.eat("|") {
                break;
            }
        }
        c.expect(")")?;
        matrix.push(pad(lits, matrix.len() + 1)?);
        if !c.eat("&") {
            break;
        }
    }
    if c.peek() != &Tok::Eof {
        return Err(c.unexpected("`&` or end of input").into());
    }
    Qbf::new(universals, existentials, matrix)
}

fn qdimacs_error(line: usize, message: impl Into<String>) -> QbfError {
    QbfError::Syntax(ParseError {
        line,
        column: 1,
        message: message.into(),
    })
}

/// QDIMACS restricted to one `a` line, one `e` line and 3-literal clauses.
/// Universal variable `n` is named `xn`, existential `n` is named `yn`.
fn parse_qdimacs(src: &str) -> Result<Qbf, QbfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut universals: Vec<u64> = Vec::new();
    let mut existentials: Vec<u64> = Vec::new();
    let mut clauses: Vec<(usize, Vec<i64>)> = Vec::new();
    for (lno, line) in src.lines().enumerate() {
        let lno = lno + 1;
        let mut words = line.split_whitespace();
        let Some(first) = words.next() else { continue };
        let rest: Vec<&str> = words.collect();
        let numbers = |ws: &[&str]| -> Result<Vec<i64>, QbfError> {
            let ns: Vec<i64> = ws
                .iter()
                .map(|w| {
                    w.parse::<i64>()
                        .map_err(|_| qdimacs_error(lno, format!("bad number `{w}`")))
                })
                .collect::<Result<_, _>>()?;
            match ns.split_last() {
                Some((0, body)) if !body.contains(&0) => Ok(body.to_vec()),
                _ => Err(qdimacs_error(lno, "line must end with a single 0")),
            }
        };
        match first {
            "c" => {}
            "p" => {
                if rest.len() != 3 || rest[0] != "cnf" || header.is_some() {
                    return Err(qdimacs_error(lno, "expected `p cnf <vars> <clauses>`"));
                }
                let n = |w: &str| {
                    w.parse::<usize>()
                        .map_err(|_| qdimacs_error(lno, "bad header count"))
                };
                header = Some((n(rest[1])?, n(rest[2])?));
            }
            "a" | "e" => {
                if header.is_none() || !clauses.is_empty() {
                    return Err(qdimacs_error(lno, "quantifier line out of place"));
                }
                let vars = numbers(&rest)?;
                if vars.iter().any(|v| *v < 0) {
                    return Err(qdimacs_error(lno, "negative variable in prefix"));
                }
                let out_of_order = first == "a" && !existentials.is_empty();
                let block = if first == "a" {
                    &mut universals
                } else {
                    &mut existentials
                };
                if !block.is_empty() || out_of_order {
                    return Err(qdimacs_error(
                        lno,
                        "only a forall-exists prefix is supported",
                    ));
                }
                block.extend(vars.into_iter().map(|v| v as u64));
            }
            _ => {
                if header.is_none() {
                    return Err(qdimacs_error(lno, "clause before header"));
                }
                let mut all = vec![first];
                all.extend(rest);
                let lits = numbers(&all)?;
                if lits.len() != 3 {
                    return Err(qdimacs_error(
                        lno,
                        "clauses must have exactly three literals",
                    ));
                }
                clauses.push((lno, lits));
            }
        }
    }
    let (nvars, nclauses) = header.ok_or_else(|| qdimacs_error(1, "missing header"))?;
    if clauses.len() != nclauses {
        return Err(qdimacs_error(
            1,
            format!(
                "header announces {nclauses} clauses, found {}",
                clauses.len()
            ),
        ));
    }
    let mut index = BTreeMap::new();
    for (i, v) in universals.iter().chain(&existentials).enumerate() {
        if *v as usize > nvars {
            return Err(qdimacs_error(
                1,
                format!("variable {v} exceeds header count"),
            ));
        }
        if index.insert(*v, i).is_some() {
            return Err(QbfError::DuplicateVariable(v.to_string()));
        }
    }
    let mut matrix = Vec::new();
    for (_, lits) in clauses {
        let mut out = Vec::new();
        for l in lits {
            let var = *index
                .get(&l.unsigned_abs())
                .ok_or_else(|| QbfError::UnboundVariable(l.unsigned_abs().to_string()))?;
            out.push(Lit {
                var,
                positive: l > 0,
            });
        }
        matrix.push(pad(out, matrix.len() + 1)?);
    }
    Qbf::new(
        universals.iter().map(|v| format!("x{v}")).collect(),
        existentials.iter().map(|v| format!("y{v}")).collect(),
        matrix,
    )
}

/// Parses either the bespoke `forall ... . exists ... . (..) & (..)` syntax
/// or the QDIMACS subset (detected by its `p cnf` header).
pub fn parse_qbf(src: &str) -> Result<Qbf, QbfError> {
    let qdimacs = src
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('c') && !l.starts_with('%'))
        .is_some_and(|l| l.starts_with("p "));
    if qdimacs {
        parse_qdimacs(src)
    } else {
        parse_bespoke(src)
    }
}

/// De Morgan: disjunct `i` is clause `i` with every literal complemented.
pub fn negate_to_dnf(matrix: &[Clause]) -> Dnf3 {
    Dnf3 {
        disjuncts: matrix.iter().map(|c| c.map(Lit::negated)).collect(),
    }
}

/// Variables occurring in the matrix, in index order.
fn occurring(q: &Qbf) -> Vec<usize> {
    let mut vars: Vec<usize> = q.matrix.iter().flatten().map(|l| l.var).collect();
    vars.sort_unstable();
    vars.dedup();
    vars
}

/// The `sat` body: over `v_T, v_F` for each occurring variable, true iff
/// every total assignment compatible with the interpretation satisfies the
/// negated matrix.
pub fn mu_structure(q: &Qbf) -> Result<Structure, QbfError> {
    let vars = occurring(q);
    let dnf = negate_to_dnf(&q.matrix);
    let domain: Vec<Atom> = vars
        .iter()
        .flat_map(|&v| [q.true_atom(v), q.false_atom(v)])
        .collect();
    Ok(Structure::table_from_fn(domain, |row| {
        let mut fixed = 0u64;
        let mut open = Vec::new();
        for (j, &v) in vars.iter().enumerate() {
            match (row >> (2 * j) & 1 == 1, row >> (2 * j + 1) & 1 == 1) {
                (true, false) => fixed |= 1 << v,
                (false, true) => {}
                _ => open.push(v),
            }
        }
        (0..1u64 << open.len()).all(|bits| {
            let mut a = fixed;
            for (i, v) in open.iter().enumerate() {
                a |= (bits >> i & 1) << v;
            }
            dnf.holds(a)
        })
    })?)
}

/// The negated matrix as a literal DNF over `_T`/`_F` atoms. Monotone, and
/// therefore unsuitable as the `sat` body; kept for comparison.
pub fn mu_dnf(q: &Qbf) -> Result<Structure, QbfError> {
    let disjuncts = negate_to_dnf(&q.matrix)
        .disjuncts
        .iter()
        .map(|d| d.iter().map(|&l| (q.lit_atom(l), true)).collect())
        .collect();
    Ok(Structure::dnf(disjuncts)?)
}

fn guess_pair(t: Atom, f: Atom) -> [Rule; 2] {
    [
        Rule::new(
            t.clone(),
            Structure::conjunction(&[], std::slice::from_ref(&f)).expect("single atom"),
        ),
        Rule::new(f, Structure::conjunction(&[], &[t]).expect("single atom")),
    ]
}

/// The reduction program: guesses for `x` and `y`, saturation of `y` on
/// `sat`, `sat <- mu`, and `w <- not sat`.
pub fn build_reduction(q: &Qbf) -> Result<Program, QbfError> {
    build_reduction_with_body(q, mu_structure(q)?)
}

/// Same program with an arbitrary `sat` body.
pub fn build_reduction_with_body(q: &Qbf, sat_body: Structure) -> Result<Program, QbfError> {
    let m = q.universals.len();
    let sat = atom("sat");
    let mut rules = Vec::new();
    for v in 0..m {
        rules.extend(guess_pair(q.true_atom(v), q.false_atom(v)));
    }
    for v in m..q.var_count() {
        rules.extend(guess_pair(q.true_atom(v), q.false_atom(v)));
    }
    let on_sat = Structure::conjunction(std::slice::from_ref(&sat), &[]).expect("single atom");
    for v in m..q.var_count() {
        rules.push(Rule::new(q.true_atom(v), on_sat.clone()));
        rules.push(Rule::new(q.false_atom(v), on_sat.clone()));
    }
    rules.push(Rule::new(sat.clone(), sat_body));
    rules.push(Rule::new(
        atom("w"),
        Structure::conjunction(&[], &[sat]).expect("single atom"),
    ));
    Ok(Program::new(rules))
}

/// `forall x exists y. E` by enumeration.
pub fn qbf_valid(q: &Qbf) -> Result<bool, QbfError> {
    if q.var_count() > MAX_QBF_VARS {
        return Err(QbfError::TooManyVariables(q.var_count(), MAX_QBF_VARS));
    }
    Ok(counterexample(q).is_none())
}

/// A universal assignment no existential extension of which satisfies `E`.
pub fn counterexample(q: &Qbf) -> Option<u64> {
    let m = q.universals.len();
    let n = q.existentials.len();
    (0..1u64 << m).find(|&xs| !(0..1u64 << n).any(|ys| q.matrix_holds(xs | ys << m)))
}

/// The saturated interpretation built from a universal assignment: its
/// `x` literals, every `y_T` and `y_F`, and `sat`.
pub fn saturated_model(q: &Qbf, xs: u64) -> Interpretation {
    let m = q.universals.len();
    let mut out: Interpretation = (0..m)
        .map(|v| {
            if xs >> v & 1 == 1 {
                q.true_atom(v)
            } else {
                q.false_atom(v)
            }
        })
        .collect();
    for v in m..q.var_count() {
        out.insert(q.true_atom(v));
        out.insert(q.false_atom(v));
    }
    out.insert(atom("sat"));
    out
}

/// Runs both sides of the reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionCheck {
    pub cautious_w: bool,
    pub valid: bool,
}

impl ReductionCheck {
    pub fn agrees(&self) -> bool {
        self.cautious_w == self.valid
    }
}

pub fn check_reduction(q: &Qbf) -> Result<ReductionCheck, QbfError> {
    let p = build_reduction(q)?;
    Ok(ReductionCheck {
        cautious_w: cautious_with(&p, &atom("w"), Semantics::Psp, &Limits::default())?,
        valid: qbf_valid(q)?,
    })
}

/// Cautious `w` under PSP agrees with the brute-force validity oracle.
pub fn verify_reduction(q: &Qbf) -> Result<bool, QbfError> {
    Ok(check_reduction(q)?.agrees())
}
