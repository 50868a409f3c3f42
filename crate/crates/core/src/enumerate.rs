//! Exhaustive census of small complete automata.
//!
//! Every transition table of a given size goes through the filters in
//! order: strong connectivity, isomorphism reduction, synchronizability,
//! removal of automata with a synchronizing proper sub-alphabet (`q - 1`
//! letters), and finally the exact shortest reset word. Survivors feed a
//! histogram of shortest lengths, and those at or above a threshold are kept
//! as extremal automata.
//!
//! With strong connectivity and isomorphism reduction both on, tables are
//! generated in breadth-first normal form from state 0 (each entry is an old
//! state or the next unused one), which skips every table that is not its own
//! breadth-first labeling; [`BfsCanon`] then keeps one per class. Otherwise
//! all `n^(nq)` tables are generated letter by letter.
//!
//! The search splits into [`Unit`]s fixed by a table prefix. Units share
//! nothing, and reports merge associatively and commutatively, so units may
//! run in any order or in parallel.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{self, from_state_major, BfsCanon};
use crate::exact::{ImageSearch, MAX_SEARCH_LETTERS};
use crate::reach::is_synchronizing;
use crate::semigroup::{semigroup_size, DEFAULT_CAP};
use crate::{Dfa, Error, Result, Word, SUBSET_CAP};

/// Largest number of tables a search may generate.
pub const ENVELOPE: f64 = 4e9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Generation {
    /// Breadth-first normal tables; needs strong connectivity and dedup.
    #[default]
    Orderly,
    /// Every table, letters-major lexicographic.
    Raw,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SearchSpec {
    pub n: usize,
    pub q: usize,
    pub require_strongly_connected: bool,
    pub prune_redundant_letters: bool,
    pub dedup_isomorphic: bool,
    /// Isomorphisms may also rename letters.
    pub permute_letters: bool,
    /// Automata with shortest reset length at least this are recorded.
    pub threshold: usize,
    pub generation: Generation,
}

impl SearchSpec {
    /// All filters on, letters permuted, recording lengths `(n-1)^2`.
    pub fn new(n: usize, q: usize) -> Self {
        SearchSpec {
            n,
            q,
            require_strongly_connected: true,
            prune_redundant_letters: true,
            dedup_isomorphic: true,
            permute_letters: true,
            threshold: n.saturating_sub(1).pow(2),
            generation: Generation::Orderly,
        }
    }

    pub fn bound(&self) -> usize {
        (self.n - 1) * (self.n - 1)
    }

    /// Generation actually used: orderly needs both reductions on.
    pub fn effective_generation(&self) -> Generation {
        if self.require_strongly_connected && self.dedup_isomorphic {
            self.generation
        } else {
            Generation::Raw
        }
    }

    /// Approximate number of tables generated.
    pub fn estimate(&self) -> f64 {
        let raw = powf(self.n as f64, (self.n * self.q) as i32);
        match self.effective_generation() {
            Generation::Raw => raw,
            Generation::Orderly => raw / (1..self.n).map(|k| k as f64).product::<f64>(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidSpec("n must be at least 2"));
        }
        if self.q < 1 {
            return Err(Error::InvalidSpec("q must be at least 1"));
        }
        if self.n > SUBSET_CAP {
            return Err(Error::Capacity {
                what: "enumeration",
                unit: "states",
                got: self.n,
                max: SUBSET_CAP,
            });
        }
        if self.q > MAX_SEARCH_LETTERS {
            return Err(Error::Capacity {
                what: "enumeration",
                unit: "letters",
                got: self.q,
                max: MAX_SEARCH_LETTERS,
            });
        }
        if self.threshold > self.bound() {
            return Err(Error::InvalidSpec("threshold exceeds (n-1)^2"));
        }
        let estimate = self.estimate();
        if estimate > ENVELOPE {
            return Err(Error::EnvelopeExceeded {
                estimate,
                limit: ENVELOPE,
            });
        }
        Ok(())
    }

    /// Work units in a fixed order.
    pub fn units(&self) -> Result<Vec<Unit>> {
        self.validate()?;
        let prefixes = match self.effective_generation() {
            Generation::Raw => raw_prefixes(self.n),
            Generation::Orderly => orderly_prefixes(self.n, self.q),
        };
        Ok(prefixes
            .into_iter()
            .enumerate()
            .map(|(id, prefix)| Unit { id, prefix })
            .collect())
    }
}

fn powf(x: f64, k: i32) -> f64 {
    // no_std has no f64::powi
    (0..k).fold(1.0, |acc, _| acc * x)
}

/// A slice of the search fixed by a table prefix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unit {
    pub id: usize,
    /// Leading entries: state-major for orderly generation, the first
    /// letter's row for raw generation.
    pub prefix: Vec<u8>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Counters {
    pub generated: u64,
    pub strongly_connected: u64,
    pub unique: u64,
    pub synchronizing: u64,
    pub irreducible: u64,
}

impl Counters {
    fn add(&mut self, o: &Counters) {
        self.generated += o.generated;
        self.strongly_connected += o.strongly_connected;
        self.unique += o.unique;
        self.synchronizing += o.synchronizing;
        self.irreducible += o.irreducible;
    }
}

/// A recorded automaton, in lexicographically least form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Extremal {
    pub length: usize,
    pub dfa: Dfa,
    /// A shortest reset word of `dfa`.
    pub word: Word,
    /// `None` above the default semigroup cap.
    pub semigroup_size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub spec: SearchSpec,
    pub counters: Counters,
    /// Shortest reset length → number of surviving automata.
    pub histogram: BTreeMap<usize, u64>,
    /// Sorted by length then table, without duplicates.
    pub extremal: Vec<Extremal>,
}

impl EnumerationReport {
    pub fn empty(spec: SearchSpec) -> Self {
        EnumerationReport {
            spec,
            counters: Counters::default(),
            histogram: BTreeMap::new(),
            extremal: Vec::new(),
        }
    }

    /// Adds another report for the same spec.
    pub fn merge(&mut self, other: &EnumerationReport) {
        debug_assert_eq!(self.spec, other.spec);
        self.counters.add(&other.counters);
        for (&len, &count) in &other.histogram {
            *self.histogram.entry(len).or_insert(0) += count;
        }
        self.extremal.extend(other.extremal.iter().cloned());
        self.extremal.sort();
        self.extremal.dedup();
    }

    pub fn histogram_total(&self) -> u64 {
        self.histogram.values().sum()
    }

    pub fn max_length(&self) -> Option<usize> {
        self.histogram.keys().next_back().copied()
    }

    /// Largest shortest reset length strictly below `(n-1)^2`.
    pub fn max_below_bound(&self) -> Option<usize> {
        self.histogram.range(..self.spec.bound()).next_back().map(|(&l, _)| l)
    }

    /// Recorded automata of exactly `length`.
    pub fn extremal_at(&self, length: usize) -> impl Iterator<Item = &Extremal> {
        self.extremal.iter().filter(move |e| e.length == length)
    }
}

/// Runs the whole search.
pub fn enumerate(spec: &SearchSpec) -> Result<EnumerationReport> {
    enumerate_with(spec, |_, _| {})
}

/// Runs the whole search, calling `visit` with every surviving automaton
/// and its shortest reset length.
pub fn enumerate_with(
    spec: &SearchSpec,
    mut visit: impl FnMut(&Dfa, usize),
) -> Result<EnumerationReport> {
    let units = spec.units()?;
    let mut worker = Worker::new(spec)?;
    let mut report = EnumerationReport::empty(spec.clone());
    for unit in &units {
        report.merge(&worker.run(unit, &mut visit));
    }
    Ok(report)
}

/// Automata whose shortest reset word has length at least `target`.
pub fn find_extremal(spec: &SearchSpec, target: usize) -> Result<Vec<Extremal>> {
    let mut spec = spec.clone();
    spec.threshold = target;
    Ok(enumerate(&spec)?.extremal)
}

/// Per-thread search state.
pub struct Worker {
    spec: SearchSpec,
    canon: BfsCanon,
    search: ImageSearch,
    table: Vec<u8>,
    letters_major: Vec<u8>,
}

impl Worker {
    pub fn new(spec: &SearchSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Worker {
            spec: spec.clone(),
            canon: BfsCanon::new(spec.n, spec.q, spec.permute_letters),
            search: ImageSearch::new(spec.n, spec.q)?,
            table: vec![0; spec.n * spec.q],
            letters_major: vec![0; spec.n * spec.q],
        })
    }

    /// Runs one unit.
    pub fn run(&mut self, unit: &Unit, visit: &mut impl FnMut(&Dfa, usize)) -> EnumerationReport {
        let mut report = EnumerationReport::empty(self.spec.clone());
        match self.spec.effective_generation() {
            Generation::Orderly => {
                self.table[..unit.prefix.len()].copy_from_slice(&unit.prefix);
                let labels = unit.prefix.iter().fold(1, |m, &v| m.max(v as usize + 1));
                self.orderly(unit.prefix.len(), labels, &mut report, visit);
            }
            Generation::Raw => {
                let (n, q) = (self.spec.n, self.spec.q);
                self.letters_major[..n].copy_from_slice(&unit.prefix);
                self.letters_major[n..].fill(0);
                loop {
                    for a in 0..q {
                        for s in 0..n {
                            self.table[s * q + a] = self.letters_major[a * n + s];
                        }
                    }
                    self.process(&mut report, visit);
                    if !odometer(&mut self.letters_major[n..], n as u8) {
                        break;
                    }
                }
            }
        }
        report
    }

    /// Fills positions `pos..` in breadth-first normal form; `labels` states
    /// are discovered so far.
    fn orderly(
        &mut self,
        pos: usize,
        labels: usize,
        report: &mut EnumerationReport,
        visit: &mut impl FnMut(&Dfa, usize),
    ) {
        let (n, q) = (self.spec.n, self.spec.q);
        if pos == n * q {
            if labels == n {
                self.process(report, visit);
            }
            return;
        }
        if pos / q >= labels {
            return;
        }
        for v in 0..=labels.min(n - 1) {
            self.table[pos] = v as u8;
            let next = if v == labels { labels + 1 } else { labels };
            self.orderly(pos + 1, next, report, visit);
        }
    }

    fn process(&mut self, report: &mut EnumerationReport, visit: &mut impl FnMut(&Dfa, usize)) {
        let spec = &self.spec;
        let (n, q) = (spec.n, spec.q);
        let c = &mut report.counters;
        c.generated += 1;
        if spec.require_strongly_connected && !strongly_connected(&self.table, n, q) {
            return;
        }
        c.strongly_connected += 1;
        let dfa = if spec.dedup_isomorphic {
            if spec.require_strongly_connected {
                if !self.canon.is_canonical(&self.table) {
                    return;
                }
                from_state_major(n, q, &self.table)
            } else {
                let d = from_state_major(n, q, &self.table);
                if !canon::is_canonical(&d, spec.permute_letters) {
                    return;
                }
                d
            }
        } else {
            from_state_major(n, q, &self.table)
        };
        c.unique += 1;
        if !is_synchronizing(&dfa) {
            return;
        }
        c.synchronizing += 1;
        if spec.prune_redundant_letters && has_synchronizing_subalphabet(&dfa) {
            return;
        }
        c.irreducible += 1;
        let length = self
            .search
            .min_length(&dfa)
            .expect("search buffers are sized for this SearchSpec")
            .expect("synchronizing automaton has a reset word");
        *report.histogram.entry(length).or_insert(0) += 1;
        visit(&dfa, length);
        if length >= spec.threshold {
            let least = canon::canonical_form(&dfa, spec.permute_letters);
            let word = self
                .search
                .shortest_word(&least)
                .expect("search buffers are sized for this SearchSpec")
                .word
                .expect("synchronizing automaton has a reset word");
            report.extremal.push(Extremal {
                length,
                semigroup_size: semigroup_size(&least, DEFAULT_CAP),
                dfa: least,
                word,
            });
        }
    }
}

/// True when some `q - 1` letters already synchronize `d`.
pub fn has_synchronizing_subalphabet(d: &Dfa) -> bool {
    let q = d.q();
    if q < 2 {
        return false;
    }
    (0..q).any(|drop| {
        let keep: Vec<usize> = (0..q).filter(|&a| a != drop).collect();
        is_synchronizing(&d.restrict_alphabet(&keep).expect("nonempty sub-alphabet"))
    })
}

/// Strong connectivity of a state-major table: every state reaches state 0
/// and state 0 reaches every state.
fn strongly_connected(table: &[u8], n: usize, q: usize) -> bool {
    let full = (1u32 << n) - 1;
    let closure = |step: &dyn Fn(u32) -> u32| {
        let mut set = 1u32;
        loop {
            let next = set | step(set);
            if next == set {
                return set == full;
            }
            set = next;
        }
    };
    let forward = |set: u32| {
        let mut out = 0;
        for s in 0..n {
            if set >> s & 1 == 1 {
                for &t in &table[s * q..(s + 1) * q] {
                    out |= 1 << t;
                }
            }
        }
        out
    };
    let backward = |set: u32| {
        let mut out = 0;
        for s in 0..n {
            if table[s * q..(s + 1) * q].iter().any(|&t| set >> t & 1 == 1) {
                out |= 1 << s;
            }
        }
        out
    };
    closure(&forward) && closure(&backward)
}

/// Next value of a base-`base` counter, last digit fastest.
fn odometer(digits: &mut [u8], base: u8) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn raw_prefixes(n: usize) -> Vec<Vec<u8>> {
    let mut row = vec![0u8; n];
    let mut out = vec![row.clone()];
    while odometer(&mut row, n as u8) {
        out.push(row.clone());
    }
    out
}

/// Breadth-first normal prefixes, as short as possible while giving at
/// least 256 units.
fn orderly_prefixes(n: usize, q: usize) -> Vec<Vec<u8>> {
    let mut level: Vec<(Vec<u8>, usize)> = vec![(Vec::new(), 1)];
    for pos in 0..n * q {
        if level.len() >= 256 {
            break;
        }
        let mut next = Vec::new();
        for (prefix, labels) in &level {
            if pos / q >= *labels {
                continue;
            }
            for v in 0..=(*labels).min(n - 1) {
                let mut p = prefix.clone();
                p.push(v as u8);
                next.push((p, if v == *labels { labels + 1 } else { *labels }));
            }
        }
        level = next;
    }
    level.into_iter().map(|(p, _)| p).collect()
}
