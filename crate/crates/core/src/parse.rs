//! Program text format.
//!
//! ```text
//! rule      := atom ":-" body "." | atom "."
//! body      := structure | lit ("," lit)*
//! lit       := atom | "not" atom
//! structure := "count" "{" atomlist "}" cmp int
//!            | "sum" "{" [atom "=" int ("," atom "=" int)*] "}" cmp int
//!            | "table" "{" atomlist ":" rows "}"
//!            | "dnf" "{" atomlist ":" conj ("|" conj)* "}"
//!            | "not" structure
//! cmp       := "=" | "!=" | "<=" | "<" | ">=" | ">"
//! ```
//!
//! Table rows are bitstrings in atom-listing order (`1` = present). A table
//! over no atoms uses `e` for its single (empty) row. `%` starts a comment.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::error::Error;
use crate::interp::{is_identifier, Atom};
use crate::program::{Program, Rule};
use crate::structure::{Comparator, Conjunction, Payload, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

// Longest symbols first.
const SYMBOLS: &[&str] = &[
    ":-", "!=", "<=", ">=", "<", ">", "=", ".", ",", "{", "}", ":", "|", "&", "(", ")", "-",
];

/// Splits `src` into tokens. `comment` starts a line comment.
pub(crate) fn lex(src: &str, comment: char) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (lno, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (lno + 1, i + 1);
            if c == comment {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let digit_follows = chars.get(i + 1).is_some_and(|d| d.is_ascii_digit());
            if c.is_ascii_digit() || (c == '-' && digit_follows) {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                // Bitstring rows like `0110` are kept verbatim as identifiers.
                let tok = if text.starts_with('-') {
                    Tok::Int(text.parse().map_err(|_| ParseError {
                        line,
                        column,
                        message: format!("bad integer `{text}`"),
                    })?)
                } else {
                    Tok::Ident(text)
                };
                out.push(Token { tok, line, column });
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    column,
                });
                continue;
            }
            let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    out.push(Token {
                        tok: Tok::Sym(s),
                        line,
                        column,
                    });
                    i += s.len();
                }
                None => {
                    return Err(ParseError {
                        line,
                        column,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            }
        }
    }
    let (line, column) = out.last().map_or((1, 1), |t| (t.line, t.column + 1));
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

pub(crate) struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Token>) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, n: usize) -> &Tok {
        &self.toks[(self.pos + n).min(self.toks.len() - 1)].tok
    }

    pub fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        self.error(format!("expected {wanted}, found {}", self.peek()))
    }

    pub fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.next();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, sym: &str) -> Result<(), ParseError> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{sym}`")))
        }
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) if is_identifier(s) => {
                let s = s.clone();
                self.next();
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(n)
            }
            Tok::Ident(s) if s.bytes().all(|b| b.is_ascii_digit()) => {
                let n = s
                    .parse()
                    .map_err(|_| self.error(format!("bad integer `{s}`")))?;
                self.next();
                Ok(n)
            }
            _ => Err(self.unexpected("an integer")),
        }
    }
}

fn semantic(c: &Cursor, e: Error) -> ParseError {
    c.error(e.to_string())
}

fn atom(c: &mut Cursor) -> Result<Atom, ParseError> {
    let name = c.ident("an atom")?;
    Atom::new(&name).map_err(|e| semantic(c, e))
}

fn comparator(c: &mut Cursor) -> Result<Comparator, ParseError> {
    let cmp = match c.peek() {
        Tok::Sym("=") => Comparator::Eq,
        Tok::Sym("!=") => Comparator::Ne,
        Tok::Sym("<=") => Comparator::Le,
        Tok::Sym("<") => Comparator::Lt,
        Tok::Sym(">=") => Comparator::Ge,
        Tok::Sym(">") => Comparator::Gt,
        _ => return Err(c.unexpected("a comparison operator")),
    };
    c.next();
    Ok(cmp)
}

/// Atoms up to (not including) `stop`.
fn atom_list(c: &mut Cursor, stop: &str) -> Result<Vec<Atom>, ParseError> {
    let mut out = Vec::new();
    if matches!(c.peek(), Tok::Sym(s) if *s == stop) {
        return Ok(out);
    }
    loop {
        out.push(atom(c)?);
        if !c.eat(",") {
            return Ok(out);
        }
    }
}

fn structure_keyword(c: &Cursor) -> bool {
    matches!(c.peek(), Tok::Ident(s) if matches!(s.as_str(), "count" | "sum" | "table" | "dnf"))
        && c.peek_at(1) == &Tok::Sym("{")
}

fn starts_structure(c: &Cursor) -> bool {
    if structure_keyword(c) {
        return true;
    }
    // `not` followed by a structure (possibly another `not`).
    let mut n = 0;
    while matches!(c.peek_at(n), Tok::Ident(s) if s == "not") {
        n += 1;
    }
    n > 0
        && matches!(c.peek_at(n), Tok::Ident(s) if matches!(s.as_str(), "count" | "sum" | "table" | "dnf"))
        && c.peek_at(n + 1) == &Tok::Sym("{")
}

fn table_rows(c: &mut Cursor, width: usize) -> Result<Vec<u64>, ParseError> {
    let mut rows = Vec::new();
    if c.peek() == &Tok::Sym("}") {
        return Ok(rows);
    }
    loop {
        let text = match c.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(c.unexpected("a bitstring row")),
        };
        let row = if width == 0 && text == "e" {
            0
        } else {
            if text.len() != width || !text.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(c.error(format!("row `{text}` must be {width} characters of 0/1")));
            }
            text.bytes()
                .enumerate()
                .filter(|(_, b)| *b == b'1')
                .fold(0u64, |m, (i, _)| m | 1 << i)
        };
        c.next();
        rows.push(row);
        if !c.eat(",") {
            return Ok(rows);
        }
    }
}

fn literal(c: &mut Cursor) -> Result<(Atom, bool), ParseError> {
    if c.is_keyword("not") && matches!(c.peek_at(1), Tok::Ident(_)) {
        c.next();
        Ok((atom(c)?, false))
    } else {
        Ok((atom(c)?, true))
    }
}

fn structure(c: &mut Cursor) -> Result<Structure, ParseError> {
    if c.is_keyword("not") {
        c.next();
        let inner = structure(c)?;
        return inner.complement().map_err(|e| semantic(c, e));
    }
    let kw = c.ident("a structure")?;
    c.expect("{")?;
    let built = match kw.as_str() {
        "count" => {
            let domain = atom_list(c, "}")?;
            c.expect("}")?;
            let cmp = comparator(c)?;
            let guard = c.int()?;
            Structure::count(domain, cmp, guard)
        }
        "sum" => {
            let mut weights = Vec::new();
            while c.peek() != &Tok::Sym("}") {
                let a = atom(c)?;
                c.expect("=")?;
                weights.push((a, c.int()?));
                if !c.eat(",") {
                    break;
                }
            }
            c.expect("}")?;
            let cmp = comparator(c)?;
            let guard = c.int()?;
            Structure::sum(weights, cmp, guard)
        }
        "table" => {
            let domain = atom_list(c, ":")?;
            c.expect(":")?;
            let rows = table_rows(c, domain.len())?;
            c.expect("}")?;
            Structure::table(domain, rows)
        }
        "dnf" => {
            let domain = atom_list(c, ":")?;
            c.expect(":")?;
            let mut disjuncts = Vec::new();
            loop {
                let mut conj = Vec::new();
                if !matches!(c.peek(), Tok::Sym("|") | Tok::Sym("}")) {
                    loop {
                        conj.push(literal(c)?);
                        if !c.eat(",") {
                            break;
                        }
                    }
                }
                disjuncts.push(conj);
                if !c.eat("|") {
                    break;
                }
            }
            c.expect("}")?;
            Structure::dnf_over(domain, disjuncts)
        }
        other => return Err(c.error(format!("unknown structure `{other}`"))),
    };
    built.map_err(|e| semantic(c, e))
}

fn body(c: &mut Cursor) -> Result<Structure, ParseError> {
    if starts_structure(c) {
        return structure(c);
    }
    let mut lits = Vec::new();
    loop {
        lits.push(literal(c)?);
        if !c.eat(",") {
            break;
        }
    }
    Structure::literals(lits).map_err(|e| semantic(c, e))
}

fn rule(c: &mut Cursor) -> Result<Rule, ParseError> {
    let head = atom(c)?;
    if c.eat(".") {
        return Ok(Rule::fact(head));
    }
    c.expect(":-")?;
    let b = body(c)?;
    c.expect(".")?;
    Ok(Rule::new(head, b))
}

/// Parses program text.
pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    let mut c = Cursor::new(lex(src, '%')?);
    let mut rules = Vec::new();
    while c.peek() != &Tok::Eof {
        rules.push(rule(&mut c)?);
    }
    Ok(Program::new(rules))
}

fn write_atoms(f: &mut fmt::Formatter<'_>, atoms: &[Atom]) -> fmt::Result {
    for (i, a) in atoms.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        f.write_str(a.name())?;
    }
    Ok(())
}

fn write_conjunction(f: &mut fmt::Formatter<'_>, domain: &[Atom], c: Conjunction) -> fmt::Result {
    let mut first = true;
    for (i, a) in domain.iter().enumerate() {
        let neg = c.negative >> i & 1 == 1;
        if c.positive >> i & 1 == 0 && !neg {
            continue;
        }
        if !first {
            f.write_str(", ")?;
        }
        first = false;
        if neg {
            f.write_str("not ")?;
        }
        f.write_str(a.name())?;
    }
    Ok(())
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let domain = self.domain();
        match self.payload() {
            Payload::Literals(c) => write_conjunction(f, domain, *c),
            Payload::Count { cmp, guard } => {
                f.write_str("count{")?;
                write_atoms(f, domain)?;
                write!(f, "}} {cmp} {guard}")
            }
            Payload::Sum {
                weights,
                cmp,
                guard,
            } => {
                f.write_str("sum{")?;
                for (i, (a, w)) in domain.iter().zip(weights).enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}={w}")?;
                }
                write!(f, "}} {cmp} {guard}")
            }
            Payload::Table { satisfied } => {
                f.write_str("table{")?;
                write_atoms(f, domain)?;
                f.write_str(" :")?;
                for (i, row) in satisfied.iter().enumerate() {
                    f.write_str(if i == 0 { " " } else { ", " })?;
                    if domain.is_empty() {
                        f.write_str("e")?;
                    }
                    for bit in 0..domain.len() {
                        f.write_char(if row >> bit & 1 == 1 { '1' } else { '0' })?;
                    }
                }
                f.write_str("}")
            }
            Payload::Dnf { disjuncts } => {
                f.write_str("dnf{")?;
                write_atoms(f, domain)?;
                f.write_str(" :")?;
                for (i, c) in disjuncts.iter().enumerate() {
                    f.write_str(if i == 0 { " " } else { " | " })?;
                    write_conjunction(f, domain, *c)?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.body.domain().is_empty() && matches!(self.body.payload(), Payload::Literals(_)) {
            write!(f, "{}.", self.head)
        } else {
            write!(f, "{} :- {}.", self.head, self.body)
        }
    }
}

/// One rule per line.
impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.rules() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
