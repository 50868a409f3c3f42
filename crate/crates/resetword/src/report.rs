//! Serializable forms of library results, used for `--json` output and
//! checkpoint files.

use std::collections::BTreeMap;

use resetword_core::canon::canonical_form;
use resetword_core::enumerate::{
    Counters, EnumerationReport, Extremal, Generation, SearchSpec,
};
use resetword_core::greedy::{Step, StepKind, SyncResult};
use resetword_core::{cerny, Dfa, Word};
use serde::{Deserialize, Serialize};

use crate::format;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub n: usize,
    pub q: usize,
    pub require_strongly_connected: bool,
    pub prune_redundant_letters: bool,
    pub dedup_isomorphic: bool,
    pub permute_letters: bool,
    pub threshold: usize,
    pub generation: String,
}

impl From<&SearchSpec> for SpecJson {
    fn from(s: &SearchSpec) -> Self {
        SpecJson {
            n: s.n,
            q: s.q,
            require_strongly_connected: s.require_strongly_connected,
            prune_redundant_letters: s.prune_redundant_letters,
            dedup_isomorphic: s.dedup_isomorphic,
            permute_letters: s.permute_letters,
            threshold: s.threshold,
            generation: match s.effective_generation() {
                Generation::Orderly => "orderly",
                Generation::Raw => "raw",
            }
            .into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountersJson {
    pub generated: u64,
    pub strongly_connected: u64,
    pub unique: u64,
    pub synchronizing: u64,
    pub irreducible: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalJson {
    pub length: usize,
    /// The automaton in the text file format.
    pub table: String,
    pub word: String,
    pub semigroup_size: Option<usize>,
    pub is_cerny: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationJson {
    pub spec: SpecJson,
    pub counters: CountersJson,
    /// Shortest reset length → count.
    pub histogram: BTreeMap<usize, u64>,
    pub max_length: Option<usize>,
    /// Largest length strictly below `(n-1)^2`.
    pub max_below_bound: Option<usize>,
    /// Largest length among automata that are not Černý automata.
    pub max_excluding_cerny: Option<usize>,
    pub extremal: Vec<ExtremalJson>,
}

impl EnumerationJson {
    pub fn from_report(r: &EnumerationReport) -> Self {
        let c = &r.counters;
        let cerny_form = cerny(r.spec.n)
            .ok()
            .filter(|c| c.q() == r.spec.q)
            .map(|c| canonical_form(&c, r.spec.permute_letters));
        let is_cerny = |d: &Dfa| cerny_form.as_ref() == Some(d);
        let extremal: Vec<ExtremalJson> = r
            .extremal
            .iter()
            .map(|e| ExtremalJson {
                length: e.length,
                table: format::serialize(&e.dfa),
                word: e.word.to_string(),
                semigroup_size: e.semigroup_size,
                is_cerny: is_cerny(&e.dfa),
            })
            .collect();
        // a Černý automaton has length exactly (n-1)^2
        let cerny_hits = extremal.iter().filter(|e| e.is_cerny).count() as u64;
        let max_excluding_cerny = r
            .histogram
            .iter()
            .rev()
            .find(|(&len, &count)| {
                let cerny_here = if len == r.spec.bound() { cerny_hits } else { 0 };
                count > cerny_here
            })
            .map(|(&len, _)| len);
        EnumerationJson {
            spec: SpecJson::from(&r.spec),
            counters: CountersJson {
                generated: c.generated,
                strongly_connected: c.strongly_connected,
                unique: c.unique,
                synchronizing: c.synchronizing,
                irreducible: c.irreducible,
            },
            histogram: r.histogram.clone(),
            max_length: r.max_length(),
            max_below_bound: r.max_below_bound(),
            max_excluding_cerny,
            extremal,
        }
    }

    /// Rebuilds the library report for `spec`; fails if the stored spec
    /// differs or a table does not parse.
    pub fn to_report(&self, spec: &SearchSpec) -> Result<EnumerationReport, String> {
        if self.spec != SpecJson::from(spec) {
            return Err("report was produced for a different search".into());
        }
        let mut extremal = Vec::with_capacity(self.extremal.len());
        for e in &self.extremal {
            extremal.push(Extremal {
                length: e.length,
                dfa: format::parse(&e.table).map_err(|err| err.to_string())?,
                word: e.word.parse::<Word>().map_err(|err| err.to_string())?,
                semigroup_size: e.semigroup_size,
            });
        }
        let c = &self.counters;
        Ok(EnumerationReport {
            spec: spec.clone(),
            counters: Counters {
                generated: c.generated,
                strongly_connected: c.strongly_connected,
                unique: c.unique,
                synchronizing: c.synchronizing,
                irreducible: c.irreducible,
            },
            histogram: self.histogram.clone(),
            extremal,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub before: usize,
    pub after: usize,
    pub start: usize,
    pub end: usize,
    pub kind: String,
    pub segment: String,
}

impl StepJson {
    pub fn new(step: &Step, word: &Word) -> Self {
        let kind = match step.kind {
            StepKind::Pair { p, q, times } => format!("pair ({p},{q}) x{times}"),
            StepKind::Marked { index, times } => format!("marked #{index} x{times}"),
            StepKind::Product { left, right, times } => {
                format!("product #{left}*#{right} x{times}")
            }
            StepKind::Generator { p, q, suffix, times } => {
                format!("generator ({p},{q}) marked suffix {suffix} x{times}")
            }
        };
        StepJson {
            before: step.before,
            after: step.after,
            start: step.span.start,
            end: step.span.end,
            kind,
            segment: Word::from_letters(word.letters()[step.span.clone()].to_vec()).to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyncJson {
    pub algorithm: String,
    pub length: usize,
    pub word: String,
    /// Length exceeds `n^2`.
    pub over_n_squared: bool,
    pub trace: Vec<StepJson>,
}

impl SyncJson {
    pub fn new(r: &SyncResult, n: usize) -> Self {
        SyncJson {
            algorithm: r.algorithm.name().into(),
            length: r.len(),
            word: r.word.to_string(),
            over_n_squared: r.len() > n * n,
            trace: r.trace.iter().map(|s| StepJson::new(s, &r.word)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactJson {
    pub synchronizing: bool,
    pub length: Option<usize>,
    pub word: Option<String>,
    pub visited: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupJson {
    pub size: Option<usize>,
    pub cap: usize,
    pub complete: bool,
    pub contains_constant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub synchronizing: bool,
    pub components: usize,
    pub sink_components: usize,
}
