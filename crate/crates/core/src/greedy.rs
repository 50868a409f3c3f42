//! Greedy reset words built from shortest pair-merging words.
//!
//! All three algorithms keep the current image `S` of the state set and
//! repeatedly append a word shrinking it, until one state is left:
//!
//! * [`eppstein`] appends the shortest merging word of the closest pair in `S`;
//! * [`cycle`] picks the same word and then keeps appending it while every
//!   extra copy still shrinks `S`;
//! * [`semigroup`] maintains a set of marked words with cached mappings
//!   (seeded by the shortest merging words of a linear number of pairs) and
//!   prefers reusing them, or products of two of them, to building new ones.
//!
//! Ties are always broken towards the smaller letter and then the smaller pair
//! index, so every run is deterministic.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::pairs::{merge_stats_of, pair_index, PairTable};
use crate::{Dfa, Error, Mapping, Result, StateSet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Eppstein,
    Cycle,
    Semigroup,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Eppstein, Algorithm::Cycle, Algorithm::Semigroup];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Eppstein => "eppstein",
            Algorithm::Cycle => "cycle",
            Algorithm::Semigroup => "semigroup",
        }
    }
}

impl core::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eppstein" => Ok(Algorithm::Eppstein),
            "cycle" => Ok(Algorithm::Cycle),
            "semigroup" => Ok(Algorithm::Semigroup),
            _ => Err(Error::InvalidSpec("unknown algorithm")),
        }
    }
}

/// How the semigroup algorithm orders its seed generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SecondOrder {
    /// Larger basin of the merge state first, then shorter words.
    #[default]
    PreimageFirst,
    /// Shorter words first, then larger basins.
    LengthFirst,
}

/// What produced one segment of the reset word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Shortest merging word of `{p, q}`, appended `times` times.
    Pair { p: usize, q: usize, times: usize },
    /// A marked word of the semigroup algorithm reused as is.
    Marked { index: usize, times: usize },
    /// A new marked word, the product of marked words `left` and `right`.
    Product { left: usize, right: usize, times: usize },
    /// A new marked word: the shortest merging word of `{p, q}` whose last
    /// `suffix` letters form an already marked word.
    Generator { p: usize, q: usize, suffix: usize, times: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    /// `|S|` before the segment.
    pub before: usize,
    /// `|S|` after the segment.
    pub after: usize,
    /// Letters of the reset word written by this step.
    pub span: Range<usize>,
    pub kind: StepKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncResult {
    pub algorithm: Algorithm,
    pub word: Word,
    pub trace: Vec<Step>,
}

impl SyncResult {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// Runs `algorithm` on `d`.
pub fn run(d: &Dfa, algorithm: Algorithm) -> Result<SyncResult> {
    run_with_table(d, &PairTable::build(d), algorithm)
}

/// Runs `algorithm` with a pair table already built for `d`.
pub fn run_with_table(d: &Dfa, table: &PairTable, algorithm: Algorithm) -> Result<SyncResult> {
    match algorithm {
        Algorithm::Eppstein => greedy_pairs(d, table, false),
        Algorithm::Cycle => greedy_pairs(d, table, true),
        Algorithm::Semigroup => semigroup_with(d, table, SecondOrder::default()),
    }
}

pub fn eppstein(d: &Dfa) -> Result<SyncResult> {
    run(d, Algorithm::Eppstein)
}

pub fn cycle(d: &Dfa) -> Result<SyncResult> {
    run(d, Algorithm::Cycle)
}

pub fn semigroup(d: &Dfa) -> Result<SyncResult> {
    run(d, Algorithm::Semigroup)
}

/// Semigroup algorithm with an explicit seed order.
pub fn semigroup_ordered(d: &Dfa, order: SecondOrder) -> Result<SyncResult> {
    semigroup_with(d, &PairTable::build(d), order)
}

fn require_sync(table: &PairTable) -> Result<()> {
    if table.all_finite() {
        Ok(())
    } else {
        Err(Error::NotSynchronizing)
    }
}

/// Appends segments and records the trace.
struct Recorder<'a> {
    d: &'a Dfa,
    image: StateSet,
    word: Word,
    trace: Vec<Step>,
}

impl<'a> Recorder<'a> {
    fn new(d: &'a Dfa) -> Self {
        Recorder {
            d,
            image: StateSet::full(d.n()),
            word: Word::new(),
            trace: Vec::new(),
        }
    }

    fn done(&self) -> bool {
        self.image.len() <= 1
    }

    fn push(&mut self, segment: &[u8], after: StateSet, kind: StepKind) {
        let start = self.word.len();
        self.word.extend_from_slice(segment);
        self.trace.push(Step {
            before: self.image.len(),
            after: after.len(),
            span: start..self.word.len(),
            kind,
        });
        self.image = after;
    }

    fn finish(self, algorithm: Algorithm) -> SyncResult {
        SyncResult {
            algorithm,
            word: self.word,
            trace: self.trace,
        }
    }
}

fn greedy_pairs(d: &Dfa, table: &PairTable, powers: bool) -> Result<SyncResult> {
    require_sync(table)?;
    let mut rec = Recorder::new(d);
    while !rec.done() {
        let (p, q, _) = table
            .closest_pair(&rec.image)
            .ok_or(Error::NotSynchronizing)?;
        let w = table.pair_word(d, p, q)?;
        let mut after = d.image_of_set(&rec.image, &w);
        let mut segment = w.letters().to_vec();
        let mut times = 1;
        if powers {
            loop {
                let next = d.image_of_set(&after, &w);
                if next.len() >= after.len() {
                    break;
                }
                after = next;
                segment.extend_from_slice(w.letters());
                times += 1;
            }
        }
        rec.push(&segment, after, StepKind::Pair { p, q, times });
    }
    Ok(rec.finish(if powers {
        Algorithm::Cycle
    } else {
        Algorithm::Eppstein
    }))
}

struct MarkedWord {
    word: Word,
    map: Mapping,
    stable_rank: usize,
}

impl MarkedWord {
    fn new(word: Word, map: Mapping) -> Self {
        let stable_rank = map.cycles().cyclic_points();
        MarkedWord {
            word,
            map,
            stable_rank,
        }
    }
}

/// Applies a marked word to the recorder: drops the longest prefix that
/// leaves the image unchanged as a set, then repeats while the image shrinks.
/// Returns false if the word does not shrink the image.
fn apply_marked(rec: &mut Recorder<'_>, m: &MarkedWord, kind: impl Fn(usize) -> StepKind) -> bool {
    let d = rec.d;
    let mut image = rec.image;
    if m.map.image(&image).len() >= image.len() {
        return false;
    }
    let mut segment = Vec::new();
    let mut times = 0;
    loop {
        // longest prefix fixing the image set
        let letters = m.word.letters();
        let mut cur = image;
        let mut skip = 0;
        for (i, &a) in letters.iter().enumerate() {
            cur = d.image_under_letter(&cur, a as usize);
            if cur == image {
                skip = i + 1;
            }
        }
        let after = m.map.image(&image);
        if times > 0 && after.len() >= image.len() {
            break;
        }
        segment.extend_from_slice(&letters[skip..]);
        image = after;
        times += 1;
        if image.len() <= 1 {
            break;
        }
    }
    rec.push(&segment, image, kind(times));
    true
}

fn semigroup_with(d: &Dfa, table: &PairTable, order: SecondOrder) -> Result<SyncResult> {
    require_sync(table)?;
    let n = d.n();
    let mut rec = Recorder::new(d);
    if rec.done() {
        return Ok(rec.finish(Algorithm::Semigroup));
    }

    // seed generators: shortest merging words of the first n pairs by length
    let mut seeds = Vec::new();
    for (p, q) in table.pairs_by_length().into_iter().take(n) {
        let word = table.pair_word(d, p, q)?;
        let map = d.mapping(&word);
        let stats = merge_stats_of(&map, p, q)?;
        seeds.push((p, q, word, map, stats));
    }
    match order {
        SecondOrder::PreimageFirst => {
            seeds.sort_by_key(|s| (core::cmp::Reverse(s.4.preimage_count), s.2.len()))
        }
        SecondOrder::LengthFirst => {
            seeds.sort_by_key(|s| (s.2.len(), core::cmp::Reverse(s.4.preimage_count)))
        }
    }
    let mut marked: Vec<MarkedWord> = Vec::with_capacity(2 * n);
    // marked generator index per pair, for suffix lookup
    let mut generator_of = vec![usize::MAX; table.pair_count()];
    for (p, q, word, map, _) in seeds {
        generator_of[pair_index(p, q, n)] = marked.len();
        marked.push(MarkedWord::new(word, map));
    }

    while !rec.done() {
        // marked words as they are
        if let Some(i) = (0..marked.len()).find(|&i| marked[i].map.image(&rec.image).len() < rec.image.len()) {
            apply_marked(&mut rec, &marked[i], |times| StepKind::Marked { index: i, times });
            continue;
        }

        // products of two marked words, high defect and short first
        let mut by_rank: Vec<usize> = (0..marked.len()).collect();
        by_rank.sort_by_key(|&i| (marked[i].stable_rank, marked[i].word.len()));
        let mut found = None;
        let mut tried = 0;
        'outer: for &x in &by_rank {
            for &y in &by_rank {
                if tried == 2 * n {
                    break 'outer;
                }
                tried += 1;
                let map = marked[x].map.then(&marked[y].map);
                if map.image(&rec.image).len() < rec.image.len() {
                    found = Some((x, y, map));
                    break 'outer;
                }
            }
        }
        if let Some((x, y, map)) = found {
            let word = marked[x].word.concat(&marked[y].word);
            marked.push(MarkedWord::new(word, map));
            let index = marked.len() - 1;
            apply_marked(&mut rec, &marked[index], |times| StepKind::Product {
                left: x,
                right: y,
                times,
            });
            continue;
        }

        // new generator from the closest pair, reusing its longest marked suffix
        let (p, q, _) = table
            .closest_pair(&rec.image)
            .ok_or(Error::NotSynchronizing)?;
        let path = table.path(d, p, q)?;
        let split = path
            .iter()
            .position(|&(x, y, _)| generator_of[pair_index(x, y, n)] != usize::MAX);
        let word: Word = path.iter().map(|&(_, _, a)| a as u8).collect::<Vec<_>>().into();
        let (map, suffix) = match split {
            Some(i) => {
                let (x, y, _) = path[i];
                let v = &marked[generator_of[pair_index(x, y, n)]];
                let mut u = Mapping::identity(n);
                for &(_, _, a) in &path[..i] {
                    u.then_letter(d, a);
                }
                (u.then(&v.map), path.len() - i)
            }
            None => (d.mapping(&word), 0),
        };
        generator_of[pair_index(p, q, n)] = marked.len();
        marked.push(MarkedWord::new(word, map));
        let index = marked.len() - 1;
        let applied = apply_marked(&mut rec, &marked[index], |times| StepKind::Generator {
            p,
            q,
            suffix,
            times,
        });
        debug_assert!(applied, "a merging word of a pair in S shrinks S");
    }
    Ok(rec.finish(Algorithm::Semigroup))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cerny;
    use alloc::string::ToString;

    #[test]
    fn eppstein_on_cerny3() {
        let r = eppstein(&cerny(3).unwrap()).unwrap();
        assert_eq!(r.word.to_string(), "baab");
        assert_eq!(r.trace.len(), 2);
        assert_eq!((r.trace[0].before, r.trace[0].after), (3, 2));
        assert_eq!(r.trace[1].span, 1..4);
    }

    #[test]
    fn single_state_gives_empty_word() {
        let d = Dfa::from_letter_maps(&[[0usize]]).unwrap();
        for a in Algorithm::ALL {
            let r = run(&d, a).unwrap();
            assert!(r.word.is_empty());
            assert!(r.trace.is_empty());
        }
    }

    #[test]
    fn non_synchronizing_is_rejected() {
        let d = Dfa::from_letter_maps(&[[1usize, 0, 2], [0, 1, 1]]).unwrap();
        for a in Algorithm::ALL {
            assert_eq!(run(&d, a), Err(Error::NotSynchronizing));
        }
    }

    #[test]
    fn all_reset_cerny() {
        for n in 2..20 {
            let c = cerny(n).unwrap();
            for a in Algorithm::ALL {
                let r = run(&c, a).unwrap();
                assert!(c.resets(&r.word), "{a:?} on C{n}");
                assert!(r.trace.windows(2).all(|w| w[0].after == w[1].before));
                assert!(r.trace.iter().all(|s| s.after < s.before));
            }
        }
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
    }
}
