//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when the automaton has no answer (it does
//! not synchronize), 2 on usage errors (bad arguments, unreadable or
//! malformed input, unknown names, capacity limits).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use resetword_core::enumerate::{Generation, SearchSpec};
use resetword_core::exact::minimal_sync_word;
use resetword_core::greedy::{self, Algorithm, SecondOrder};
use resetword_core::reach::{is_synchronizing, scc};
use resetword_core::semigroup::{semigroup_closure, DEFAULT_CAP};
use resetword_core::Dfa;
use serde::Serialize;

use crate::catalog::{self, CatalogError, NAMED};
use crate::format;
use crate::report::{CheckJson, EnumerationJson, ExactJson, SemigroupJson, SyncJson};
use crate::runner::{self, RunError, RunOptions};

#[derive(Parser, Debug)]
#[command(name = "resetword", version, about = "Synchronizing words for finite automata")]
pub struct Cli {
    /// Fixture directory for catalog names [default: $RESETWORD_FIXTURES or the bundled one]
    #[arg(long, global = true, value_name = "DIR")]
    pub fixtures: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether the automaton has a reset word
    Check(Input),
    /// Find a reset word with a greedy algorithm
    Sync {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = AlgoArg::Semigroup)]
        algo: AlgoArg,
        /// Seed order of the semigroup algorithm
        #[arg(long, value_enum, default_value_t = OrderArg::Preimage)]
        order: OrderArg,
        /// Print one line per step
        #[arg(long)]
        trace: bool,
    },
    /// Find a shortest reset word (at most 28 states)
    Exact(Input),
    /// Size of the transition semigroup
    Semigroup {
        #[command(flatten)]
        input: Input,
        /// Give up after this many elements
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Exhaustive census of automata with n states and q letters
    Enumerate(EnumerateArgs),
    /// List catalog names, or print one automaton
    Catalog {
        name: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
pub struct Input {
    /// Automaton file, or a catalog name such as cerny:9 or cpr
    pub input: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Eppstein,
    Cycle,
    Semigroup,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Preimage,
    Length,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: usize,
    /// Record automata with shortest reset length at least this [default: (n-1)^2]
    #[arg(long)]
    pub threshold: Option<usize>,
    /// Number of shards; 0 picks eight per thread
    #[arg(long, default_value_t = 0)]
    pub shards: usize,
    /// Write and reuse one checkpoint file per shard
    #[arg(long, value_name = "DIR")]
    pub checkpoint_dir: Option<PathBuf>,
    /// Write every recorded automaton as a fixture file
    #[arg(long, value_name = "DIR")]
    pub emit_fixtures: Option<PathBuf>,
    /// Keep automata that are not strongly connected
    #[arg(long)]
    pub no_strongly_connected: bool,
    /// Keep automata with a synchronizing proper sub-alphabet
    #[arg(long)]
    pub no_prune: bool,
    /// Keep isomorphic copies
    #[arg(long)]
    pub no_dedup: bool,
    /// Do not identify automata differing by a renaming of letters
    #[arg(long)]
    pub fixed_letters: bool,
    /// Generate every table instead of breadth-first normal ones
    #[arg(long)]
    pub raw: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<resetword_core::Error> for CliError {
    fn from(e: resetword_core::Error) -> Self {
        if e.is_domain() {
            CliError::Domain(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<RunError> for CliError {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Search(e) => e.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Parses the process arguments, runs, prints, and returns the exit status.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(output) => {
            print!("{}", output.text);
            ExitCode::from(output.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// What a command prints and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Loads a file, or a catalog name when no such file exists.
pub fn resolve(input: &str, fixtures: &Path) -> Result<Dfa, CliError> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("{input}: {e}")))?;
        return format::parse(&text).map_err(|e| CliError::Usage(format!("{input}: {e}")));
    }
    if input.starts_with("cerny:") || NAMED.iter().any(|(name, _)| *name == input) {
        return Ok(catalog::load(input, fixtures)?);
    }
    Err(CliError::Usage(format!(
        "`{input}` is neither a file nor a catalog name"
    )))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let fixtures = cli.fixtures.clone().unwrap_or_else(catalog::default_dir);
    match &cli.command {
        Command::Check(input) => check(&resolve(&input.input, &fixtures)?, input.json),
        Command::Sync {
            input,
            algo,
            order,
            trace,
        } => sync(&resolve(&input.input, &fixtures)?, *algo, *order, *trace, input.json),
        Command::Exact(input) => exact(&resolve(&input.input, &fixtures)?, input.json),
        Command::Semigroup { input, cap } => {
            semigroup(&resolve(&input.input, &fixtures)?, *cap, input.json)
        }
        Command::Enumerate(args) => enumerate(args),
        Command::Catalog { name, json } => catalog_cmd(name.as_deref(), &fixtures, *json),
    }
}

fn check(d: &Dfa, as_json: bool) -> Result<Output, CliError> {
    let dec = scc(d);
    let report = CheckJson {
        synchronizing: is_synchronizing(d),
        components: dec.components.len(),
        sink_components: dec.sink_count(),
    };
    let text = if as_json {
        json(&report)
    } else {
        format!(
            "{}\ncomponents {}\nsink components {}\n",
            if report.synchronizing {
                "synchronizing"
            } else {
                "not synchronizing"
            },
            report.components,
            report.sink_components
        )
    };
    Ok(Output {
        text,
        code: if report.synchronizing { 0 } else { 1 },
    })
}

fn sync(
    d: &Dfa,
    algo: AlgoArg,
    order: OrderArg,
    trace: bool,
    as_json: bool,
) -> Result<Output, CliError> {
    let result = match algo {
        AlgoArg::Eppstein => greedy::run(d, Algorithm::Eppstein)?,
        AlgoArg::Cycle => greedy::run(d, Algorithm::Cycle)?,
        AlgoArg::Semigroup => greedy::semigroup_ordered(
            d,
            match order {
                OrderArg::Preimage => SecondOrder::PreimageFirst,
                OrderArg::Length => SecondOrder::LengthFirst,
            },
        )?,
    };
    let report = SyncJson::new(&result, d.n());
    if as_json {
        return Ok(Output::ok(json(&report)));
    }
    let mut text = format!(
        "algorithm {}\nlength {}\nword {}\n",
        report.algorithm, report.length, report.word
    );
    if report.over_n_squared {
        let _ = writeln!(text, "note: length exceeds n^2 = {}", d.n() * d.n());
    }
    if trace {
        for s in &report.trace {
            let _ = writeln!(
                text,
                "step {}..{} |S| {} -> {} {} {}",
                s.start, s.end, s.before, s.after, s.kind, s.segment
            );
        }
    }
    Ok(Output::ok(text))
}

fn exact(d: &Dfa, as_json: bool) -> Result<Output, CliError> {
    let r = minimal_sync_word(d)?;
    let report = ExactJson {
        synchronizing: r.word.is_some(),
        length: r.length(),
        word: r.word.as_ref().map(ToString::to_string),
        visited: r.visited,
    };
    let code = if report.synchronizing { 0 } else { 1 };
    let text = if as_json {
        json(&report)
    } else {
        match (&report.length, &report.word) {
            (Some(len), Some(word)) => {
                format!("length {len}\nword {word}\nvisited {}\n", report.visited)
            }
            _ => format!("not synchronizing\nvisited {}\n", report.visited),
        }
    };
    Ok(Output { text, code })
}

fn semigroup(d: &Dfa, cap: usize, as_json: bool) -> Result<Output, CliError> {
    let c = semigroup_closure(d, cap);
    let report = SemigroupJson {
        size: c.is_complete().then(|| c.size()),
        cap,
        complete: c.is_complete(),
        contains_constant: c.contains_constant(),
    };
    let text = if as_json {
        json(&report)
    } else {
        match report.size {
            Some(size) => format!("size {size}\n"),
            None => format!("over cap({cap})\n"),
        }
    };
    Ok(Output::ok(text))
}

pub fn search_spec(args: &EnumerateArgs) -> SearchSpec {
    let mut spec = SearchSpec::new(args.n, args.q);
    spec.require_strongly_connected = !args.no_strongly_connected;
    spec.prune_redundant_letters = !args.no_prune;
    spec.dedup_isomorphic = !args.no_dedup;
    spec.permute_letters = !args.fixed_letters;
    if let Some(t) = args.threshold {
        spec.threshold = t;
    }
    if args.raw {
        spec.generation = Generation::Raw;
    }
    spec
}

fn enumerate(args: &EnumerateArgs) -> Result<Output, CliError> {
    let spec = search_spec(args);
    let options = RunOptions {
        shards: args.shards,
        checkpoint_dir: args.checkpoint_dir.clone(),
    };
    let report = runner::run(&spec, &options)?;
    let dto = EnumerationJson::from_report(&report);
    if let Some(dir) = &args.emit_fixtures {
        emit_fixtures(dir, &dto)?;
    }
    if args.json {
        return Ok(Output::ok(json(&dto)));
    }
    let c = &dto.counters;
    let mut text = format!(
        "n {} q {} threshold {} generation {}\n",
        spec.n, spec.q, spec.threshold, dto.spec.generation
    );
    let _ = writeln!(
        text,
        "generated {}\nstrongly connected {}\nunique {}\nsynchronizing {}\nirreducible {}",
        c.generated, c.strongly_connected, c.unique, c.synchronizing, c.irreducible
    );
    for (len, count) in &dto.histogram {
        let _ = writeln!(text, "length {len}: {count}");
    }
    let show = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
    let _ = writeln!(text, "max length {}", show(dto.max_length));
    let _ = writeln!(text, "max below (n-1)^2 {}", show(dto.max_below_bound));
    let _ = writeln!(text, "max excluding Černý {}", show(dto.max_excluding_cerny));
    for e in &dto.extremal {
        let _ = writeln!(
            text,
            "\nlength {} word {} semigroup {}{}\n{}",
            e.length,
            e.word,
            show(e.semigroup_size),
            if e.is_cerny { " (Černý)" } else { "" },
            e.table.trim_end()
        );
    }
    Ok(Output::ok(text))
}

fn emit_fixtures(dir: &Path, dto: &EnumerationJson) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
    for (i, e) in dto.extremal.iter().enumerate() {
        let dfa = format::parse(&e.table).expect("tables in reports parse");
        let name = format!("n{}-q{}-len{}-{i}.dfa", dfa.n(), dfa.q(), e.length);
        let comments = [
            format!("shortest reset word {} (length {})", e.word, e.length),
            format!(
                "semigroup size {}",
                e.semigroup_size.map_or("over cap".into(), |s| s.to_string())
            ),
            format!(
                "found by: resetword enumerate --n {} --q {}{}",
                dto.spec.n,
                dto.spec.q,
                if dto.spec.threshold == (dto.spec.n - 1).pow(2) {
                    String::new()
                } else {
                    format!(" --threshold {}", dto.spec.threshold)
                }
            ),
        ];
        let path = dir.join(&name);
        std::fs::write(&path, format::serialize_with_comments(&dfa, &comments))
            .map_err(|err| CliError::Usage(format!("{}: {err}", path.display())))?;
    }
    Ok(())
}

fn catalog_cmd(name: Option<&str>, fixtures: &Path, as_json: bool) -> Result<Output, CliError> {
    let Some(name) = name else {
        let manifest = catalog::read_manifest(fixtures)?;
        let entries = manifest.map(|m| m.fixtures).unwrap_or_default();
        if as_json {
            return Ok(Output::ok(json(&entries)));
        }
        let mut text = String::from("cerny:<n>  generated\n");
        for (known, command) in NAMED {
            match entries.iter().find(|e| e.name == *known) {
                Some(e) => {
                    let _ = writeln!(
                        text,
                        "{known}  n {} q {} length {} semigroup {}",
                        e.n, e.q, e.min_length, e.semigroup_size
                    );
                }
                None => {
                    let _ = writeln!(text, "{known}  missing ({command})");
                }
            }
        }
        return Ok(Output::ok(text));
    };
    let d = catalog::load(name, fixtures)?;
    Ok(Output::ok(format::serialize(&d)))
}
