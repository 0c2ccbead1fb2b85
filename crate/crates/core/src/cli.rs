//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failed, 2 construction impossible,
//! 3 bad input or file format.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::conversion::{convert2, convert3};
use crate::cycle::{CyclicSequence, Kind};
use crate::error::Error;
use crate::induction::construct3;
use crate::search::{backtrack_with, Equivalence, Mode, SearchConfig, DEFAULT_BUDGET};
use crate::seqfile::{parse_sequence_file, write_sequence_file};
use crate::transition::{build_graph, construct_cycle, render_dot};
use crate::verify::verify_cycle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_IMPOSSIBLE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mcycles", version, about = "Construct, verify and search universal cycles for multisets and subsets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a universal cycle and write it as a sequence file.
    Construct(ConstructArgs),
    /// Check a sequence file and print a report.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Exhaustively search for Mcycles.
    Search(SearchArgs),
    /// Write the transition graph in DOT format.
    Graph {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        dot: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Transition,
    Induct,
    Convert,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    M,
    U,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::M => Kind::Multiset,
            KindArg::U => Kind::Subset,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EquivArg {
    Raw,
    Relabel,
    RelabelRotation,
}

impl From<EquivArg> for Equivalence {
    fn from(e: EquivArg) -> Self {
        match e {
            EquivArg::Raw => Equivalence::Raw,
            EquivArg::Relabel => Equivalence::Relabel,
            EquivArg::RelabelRotation => Equivalence::RelabelRotation,
        }
    }
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long, value_enum, default_value = "m")]
    kind: KindArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ucycle to convert (convert method only).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file; printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["first", "all", "count"])))]
struct SearchArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    t: u32,
    #[arg(long)]
    first: bool,
    #[arg(long)]
    all: bool,
    #[arg(long)]
    count: bool,
    #[arg(long, value_enum, default_value = "relabel-rotation")]
    equiv: EquivArg,
    /// Fixed leading symbols, comma or space separated.
    #[arg(long)]
    prefix: Option<String>,
    #[arg(long)]
    limit: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Verification(_) => EXIT_VERIFY_FAILED,
            Error::BadPattern { .. }
            | Error::NotEulerian(_)
            | Error::NotCoprimeShift { .. }
            | Error::Infeasible { .. } => EXIT_IMPOSSIBLE,
            Error::InvalidParameters(_)
            | Error::NotAUcycle(_)
            | Error::BudgetExceeded { .. }
            | Error::Overflow(..)
            | Error::Format(_) => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_failure(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_failure(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_failure(format!("cannot write {}: {e}", path.display())))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Construct(a) => construct(a, out),
        Command::Verify { input } => verify(&input, out),
        Command::Search(a) => search(a, out),
        Command::Graph { n, t, kind, dot } => graph(n, t, kind.into(), &dot, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn require(v: Option<u32>, name: &str) -> Result<u32, Failure> {
    v.ok_or_else(|| input_failure(format!("--{name} is required for this method")))
}

fn construct(a: ConstructArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let seq: CyclicSequence = match a.method {
        Method::Transition => {
            let (n, t) = (require(a.n, "n")?, require(a.t, "t")?);
            construct_cycle(n, t, a.kind.into(), a.seed)?
        }
        Method::Induct => {
            let n = require(a.n, "n")?;
            if a.t.is_some_and(|t| t != 3) || Kind::from(a.kind) != Kind::Multiset {
                return Err(input_failure("the inductive method builds 3-Mcycles only"));
            }
            construct3(n)?
        }
        Method::Convert => {
            let path = a.input.as_deref().ok_or_else(|| input_failure("--in is required for convert"))?;
            let ucycle = parse_sequence_file(&read(path)?)?;
            if ucycle.kind() != Kind::Subset {
                return Err(input_failure("convert expects a Ucycle file (kind u)"));
            }
            if a.n.is_some_and(|n| n != ucycle.n()) || a.t.is_some_and(|t| t != ucycle.t()) {
                return Err(input_failure("--n/--t disagree with the input file header"));
            }
            match ucycle.t() {
                2 => convert2(&ucycle)?,
                3 => convert3(&ucycle)?,
                t => return Err(input_failure(format!("conversion covers t = 2 and t = 3, not {t}"))),
            }
        }
    };
    let report = verify_cycle(seq.symbols(), seq.n(), seq.t(), seq.kind());
    if !report.ok {
        return Err(Failure { code: EXIT_VERIFY_FAILED, message: report.summary_line() });
    }
    let text = write_sequence_file(&seq);
    match &a.out {
        Some(path) => {
            write(path, &text)?;
            let _ = writeln!(out, "wrote {} ({} symbols) {}", path.display(), seq.len(), report.summary_line());
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(EXIT_OK)
}

fn verify(input: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let seq = parse_sequence_file(&read(input)?)?;
    let report = seq.verify();
    let _ = writeln!(out, "{report}");
    Ok(if report.ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn parse_prefix(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| input_failure(format!("bad prefix symbol {s:?}"))))
        .collect()
}

fn search(a: SearchArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mode = if a.first {
        Mode::First
    } else if a.all {
        Mode::All
    } else {
        Mode::Count
    };
    let mut config = SearchConfig::new(a.n, a.t, mode, a.equiv.into()).with_seed(a.seed);
    config.budget = a.budget;
    config.limit = a.limit;
    if let Some(p) = &a.prefix {
        config.prefix = parse_prefix(p)?;
    }
    let mut found: Vec<Vec<u32>> = Vec::new();
    let stats = backtrack_with(&config, &mut |seq| {
        if mode != Mode::Count {
            found.push(seq.to_vec());
        }
        ControlFlow::Continue(())
    })?;
    match mode {
        Mode::Count => {
            let _ = writeln!(out, "count={} nodes={}", stats.found, stats.nodes);
        }
        Mode::First if found.is_empty() => {
            let _ = writeln!(out, "no Mcycle found (nodes={})", stats.nodes);
            return Ok(EXIT_IMPOSSIBLE);
        }
        Mode::First => {
            let seq = CyclicSequence::new(found.swap_remove(0), a.n, a.t, Kind::Multiset)?;
            let text = write_sequence_file(&seq);
            match &a.out {
                Some(path) => write(path, &text)?,
                None => {
                    let _ = out.write_all(text.as_bytes());
                }
            }
        }
        Mode::All => {
            let mut text = String::new();
            for seq in &found {
                let line: Vec<String> = seq.iter().map(u32::to_string).collect();
                text.push_str(&line.join(" "));
                text.push('\n');
            }
            match &a.out {
                Some(path) => write(path, &text)?,
                None => {
                    let _ = out.write_all(text.as_bytes());
                }
            }
            let _ = writeln!(out, "count={} nodes={}", stats.found, stats.nodes);
        }
    }
    Ok(EXIT_OK)
}

fn graph(n: u32, t: u32, kind: Kind, dot: &Path, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = build_graph(n, t as usize, kind)?;
    write(dot, &render_dot(&g))?;
    let _ = writeln!(
        out,
        "wrote {} ({} vertices, {} edges)",
        dot.display(),
        g.vertices().len(),
        g.edges().len()
    );
    Ok(EXIT_OK)
}
