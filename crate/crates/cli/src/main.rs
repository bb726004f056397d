//! `gasp`: command-line front end for the answer-set engine.
//!
//! Exit codes: 0 on success, 1 on parse, semantic or cap errors, 2 on usage
//! errors. `cautious` and `brave` exit 0 when the query holds and 3 when it
//! does not.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gasp_core::classify::classify;
use gasp_core::fuzz::{run_fuzz, FuzzMode};
use gasp_core::qbf::{build_reduction, check_reduction, parse_qbf, Qbf};
use gasp_core::reasoning::{answer_sets, compare_with, Semantics};
use gasp_core::{Atom, Limits, Program};

#[derive(Parser)]
#[command(
    name = "gasp",
    version,
    about = "Answer sets of programs with generalized-atom bodies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every answer set, one per line.
    Answersets {
        #[arg(long, value_enum)]
        semantics: SemanticsArg,
        #[command(flatten)]
        limits: LimitArgs,
        file: PathBuf,
    },
    /// Classify each rule body.
    Classify { file: PathBuf },
    /// Is the atom in every answer set?
    Cautious {
        #[command(flatten)]
        query: Query,
    },
    /// Is the atom in some answer set?
    Brave {
        #[command(flatten)]
        query: Query,
    },
    /// Compare FLP and PSP answer sets.
    Compare {
        #[arg(long, value_enum, default_value_t = Report::Text)]
        report: Report,
        #[command(flatten)]
        limits: LimitArgs,
        file: PathBuf,
    },
    /// Emit the program built from a 2-QBF.
    QbfReduce {
        #[arg(long, value_enum, default_value_t = Format::Gasp)]
        format: Format,
        qbf_file: PathBuf,
    },
    /// Check the reduction of a 2-QBF against brute-force validity.
    QbfVerify { qbf_file: PathBuf },
    /// Run a seeded batch of random programs against a semantic property.
    Fuzz {
        #[arg(long, value_parser = parse_mode)]
        mode: FuzzMode,
        #[arg(long)]
        cases: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args)]
struct Query {
    #[arg(long, value_enum)]
    semantics: SemanticsArg,
    #[arg(long, value_parser = parse_atom)]
    atom: Atom,
    #[command(flatten)]
    limits: LimitArgs,
    file: PathBuf,
}

#[derive(Args)]
struct LimitArgs {
    /// Largest number of head atoms enumerated over.
    #[arg(long, default_value_t = Limits::default().max_heads)]
    max_heads: usize,
    /// Largest interpretation checked for minimality.
    #[arg(long, default_value_t = Limits::default().max_minimality)]
    max_minimality: usize,
    /// Largest number of free domain atoms in a conditional-satisfaction test.
    #[arg(long, default_value_t = Limits::default().max_free_domain)]
    max_free_domain: usize,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_heads: self.max_heads,
            max_minimality: self.max_minimality,
            max_free_domain: self.max_free_domain,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Flp,
    Psp,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Flp => Semantics::Flp,
            SemanticsArg::Psp => Semantics::Psp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Text,
    Kv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Gasp,
}

fn parse_mode(s: &str) -> Result<FuzzMode, String> {
    s.parse()
        .map_err(|e: <FuzzMode as std::str::FromStr>::Err| e.to_string())
}

fn parse_atom(s: &str) -> Result<Atom, String> {
    Atom::new(s).map_err(|e| e.to_string())
}

/// Output plus exit status of a successful invocation.
struct Outcome {
    stdout: String,
    stderr: String,
    code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_program(path: &Path) -> Result<Program, String> {
    let src = read(path)?;
    gasp_core::parse_program(&src).map_err(|e| format!("{}:{e}", path.display()))
}

fn load_qbf(path: &Path) -> Result<Qbf, String> {
    let src = read(path)?;
    parse_qbf(&src).map_err(|e| format!("{}: {e}", path.display()))
}

fn query(q: &Query, brave: bool) -> Result<Outcome, String> {
    let p = load_program(&q.file)?;
    let sem = Semantics::from(q.semantics);
    let sets = answer_sets(&p, sem, &q.limits.limits()).map_err(|e| e.to_string())?;
    let holds = if brave {
        sets.iter().any(|m| m.contains(&q.atom))
    } else {
        sets.iter().all(|m| m.contains(&q.atom))
    };
    let mut stderr = String::new();
    if sets.is_empty() {
        stderr = if brave {
            "note: no answer sets; no atom is brave\n".into()
        } else {
            "note: no answer sets; all atoms cautious\n".into()
        };
    }
    let verb = if brave { "brave" } else { "cautious" };
    Ok(Outcome {
        stdout: format!(
            "{}: {} under {sem}\n",
            q.atom,
            if holds {
                verb.to_string()
            } else {
                format!("not {verb}")
            }
        ),
        stderr,
        code: if holds { 0 } else { 3 },
    })
}

fn run(cli: Cli) -> Result<Outcome, String> {
    match cli.command {
        Command::Answersets {
            semantics,
            limits,
            file,
        } => {
            let p = load_program(&file)?;
            let sets =
                answer_sets(&p, semantics.into(), &limits.limits()).map_err(|e| e.to_string())?;
            let mut out = Outcome::ok(sets.iter().map(|m| format!("{m}\n")).collect());
            if sets.is_empty() {
                out.stderr = "note: no answer sets\n".into();
            }
            Ok(out)
        }
        Command::Classify { file } => {
            let p = load_program(&file)?;
            let mut out = String::new();
            for (i, r) in p.rules().iter().enumerate() {
                let class = classify(&r.body).map_err(|e| format!("rule#{}: {e}", i + 1))?;
                let _ = writeln!(out, "rule#{}: {class}", i + 1);
            }
            Ok(Outcome::ok(out))
        }
        Command::Cautious { query: q } => query(&q, false),
        Command::Brave { query: q } => query(&q, true),
        Command::Compare {
            report,
            limits,
            file,
        } => {
            let p = load_program(&file)?;
            let r = compare_with(&p, &limits.limits()).map_err(|e| e.to_string())?;
            Ok(Outcome::ok(match report {
                Report::Text => r.to_text(),
                Report::Kv => r.to_kv(),
            }))
        }
        Command::QbfReduce {
            format: Format::Gasp,
            qbf_file,
        } => {
            let q = load_qbf(&qbf_file)?;
            let p = build_reduction(&q).map_err(|e| e.to_string())?;
            let mut text = p.to_string();
            if !text.ends_with('\n') {
                text.push('\n');
            }
            Ok(Outcome::ok(text))
        }
        Command::QbfVerify { qbf_file } => {
            let q = load_qbf(&qbf_file)?;
            let c = check_reduction(&q).map_err(|e| e.to_string())?;
            let stdout = format!(
                "valid: {}\ncautious w under PSP: {}\nreduction {}\n",
                c.valid,
                c.cautious_w,
                if c.agrees() { "agrees" } else { "DISAGREES" }
            );
            Ok(Outcome {
                stdout,
                stderr: String::new(),
                code: if c.agrees() { 0 } else { 1 },
            })
        }
        Command::Fuzz { mode, cases, seed } => {
            let o = run_fuzz(mode, cases, seed).map_err(|e| e.to_string())?;
            let list = |xs: &[usize]| {
                xs.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let mut stdout = format!(
                "mode={} cases={} seed={seed}\nviolations={}\ndivergent={}\n",
                o.mode,
                o.cases,
                o.violations.len(),
                o.divergent.len()
            );
            if !o.violations.is_empty() {
                let _ = writeln!(stdout, "violating cases: {}", list(&o.violations));
            }
            let _ = writeln!(stdout, "{}", if o.passed() { "PASS" } else { "FAIL" });
            Ok(Outcome {
                stdout,
                stderr: String::new(),
                code: if o.passed() { 0 } else { 1 },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            eprint!("{}", out.stderr);
            ExitCode::from(out.code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
