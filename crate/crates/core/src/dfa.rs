use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result, MAX_LETTERS, MAX_STATES};

/// A complete deterministic automaton over states `0..n` and letters `0..q`.
///
/// The table is stored letter-major: the images of all states under letter
/// `a` are contiguous, which is also the layout of the text format.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dfa {
    n: usize,
    q: usize,
    delta: Vec<u8>,
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for a in 0..self.q {
            list.entry(&self.letter_map(a));
        }
        list.finish()
    }
}

impl Dfa {
    /// Builds an automaton from one image table per letter:
    /// `maps[a][s]` is the state reached from `s` by letter `a`.
    pub fn from_letter_maps<M: AsRef<[usize]>>(maps: &[M]) -> Result<Self> {
        let q = maps.len();
        if q == 0 {
            return Err(Error::NoLetters);
        }
        let n = maps[0].as_ref().len();
        let mut delta = Vec::with_capacity(n * q);
        for map in maps {
            let map = map.as_ref();
            if map.len() != n {
                return Err(Error::TableSize {
                    got: map.len(),
                    expected: n,
                });
            }
            for &t in map {
                if t >= n {
                    return Err(Error::StateOutOfRange { state: t, n });
                }
                delta.push(t as u8);
            }
        }
        Self::from_table(n, q, delta)
    }

    /// Builds an automaton from a flat letter-major table of `n * q` entries.
    pub fn from_table(n: usize, q: usize, delta: Vec<u8>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoStates);
        }
        if q == 0 {
            return Err(Error::NoLetters);
        }
        if n > MAX_STATES {
            return Err(Error::TooManyStates { n, max: MAX_STATES });
        }
        if q > MAX_LETTERS {
            return Err(Error::TooManyLetters { q, max: MAX_LETTERS });
        }
        if delta.len() != n * q {
            return Err(Error::TableSize {
                got: delta.len(),
                expected: n * q,
            });
        }
        if let Some(&t) = delta.iter().find(|&&t| t as usize >= n) {
            return Err(Error::StateOutOfRange {
                state: t as usize,
                n,
            });
        }
        Ok(Dfa { n, q, delta })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    /// The letter-major transition table.
    #[inline]
    pub fn table(&self) -> &[u8] {
        &self.delta
    }

    /// Images of every state under letter `a`.
    #[inline]
    pub fn letter_map(&self, a: usize) -> &[u8] {
        &self.delta[a * self.n..(a + 1) * self.n]
    }

    /// Transition without range checks beyond slice indexing.
    #[inline]
    pub fn next(&self, s: usize, a: usize) -> usize {
        self.delta[a * self.n + s] as usize
    }

    /// Checked transition.
    pub fn apply_letter(&self, s: usize, a: usize) -> Result<usize> {
        if s >= self.n {
            return Err(Error::StateOutOfRange { state: s, n: self.n });
        }
        if a >= self.q {
            return Err(Error::LetterOutOfRange { letter: a, q: self.q });
        }
        Ok(self.next(s, a))
    }

    /// Fails if the word uses a letter outside the alphabet.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|&&a| a as usize >= self.q) {
            Some(&a) => Err(Error::LetterOutOfRange {
                letter: a as usize,
                q: self.q,
            }),
            None => Ok(()),
        }
    }

    pub fn apply_word(&self, s: usize, w: &Word) -> usize {
        w.letters()
            .iter()
            .fold(s, |s, &a| self.next(s, a as usize))
    }

    pub fn image_under_letter(&self, set: &StateSet, a: usize) -> StateSet {
        let map = self.letter_map(a);
        set.iter().map(|s| map[s] as usize).collect()
    }

    /// `{ s·w : s ∈ set }`. Panics if `w` uses a letter outside the alphabet.
    pub fn image_of_set(&self, set: &StateSet, w: &Word) -> StateSet {
        let mut cur = *set;
        for &a in w.letters() {
            cur = self.image_under_letter(&cur, a as usize);
        }
        cur
    }

    /// Size of the image of the whole state set.
    pub fn rank(&self, w: &Word) -> usize {
        self.mapping(w).rank()
    }

    pub fn defect(&self, w: &Word) -> usize {
        self.n - self.rank(w)
    }

    /// True when `w` sends every state to one state.
    pub fn resets(&self, w: &Word) -> bool {
        self.rank(w) == 1
    }

    pub fn letter_mapping(&self, a: usize) -> Mapping {
        Mapping(self.letter_map(a).to_vec())
    }

    /// The transformation induced by `w` (the identity for the empty word).
    pub fn mapping(&self, w: &Word) -> Mapping {
        let mut m = Mapping::identity(self.n);
        for &a in w.letters() {
            m.then_letter(self, a as usize);
        }
        m
    }

    /// Keeps only the given letters, in the given order.
    pub fn restrict_alphabet(&self, letters: &[usize]) -> Result<Dfa> {
        if letters.is_empty() {
            return Err(Error::EmptySubAlphabet);
        }
        let mut delta = Vec::with_capacity(self.n * letters.len());
        for &a in letters {
            if a >= self.q {
                return Err(Error::LetterOutOfRange { letter: a, q: self.q });
            }
            delta.extend_from_slice(self.letter_map(a));
        }
        Dfa::from_table(self.n, letters.len(), delta)
    }

    /// Renames state `s` to `perm[s]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Dfa> {
        check_permutation(perm, self.n)?;
        let mut delta = vec![0u8; self.n * self.q];
        for a in 0..self.q {
            for s in 0..self.n {
                delta[a * self.n + perm[s]] = perm[self.next(s, a)] as u8;
            }
        }
        Ok(Dfa {
            n: self.n,
            q: self.q,
            delta,
        })
    }

    /// Letter `j` of the result is letter `order[j]` of `self`.
    pub fn permute_letters(&self, order: &[usize]) -> Result<Dfa> {
        check_permutation(order, self.q)?;
        self.restrict_alphabet(order)
    }

    /// True when every letter acts as a permutation of the states.
    pub fn is_permutation_automaton(&self) -> bool {
        (0..self.q).all(|a| self.letter_mapping(a).rank() == self.n)
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::NotAPermutation { n });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::NotAPermutation { n });
        }
        seen[p] = true;
    }
    Ok(())
}

/// The Černý automaton: `a` shifts `i ↦ i+1 mod n`, `b` sends 0 to 1 and fixes
/// every other state. Its shortest reset word has length `(n-1)²`.
pub fn cerny(n: usize) -> Result<Dfa> {
    if n < 2 {
        return Err(Error::CernyTooSmall(n));
    }
    let a: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let b: Vec<usize> = (0..n).map(|i| if i == 0 { 1 } else { i }).collect();
    Dfa::from_letter_maps(&[a, b])
}

/// A finite word over letters `0..q`, printed as `a`, `b`, `c`, ...
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub const fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    #[inline]
    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, a: usize) {
        self.0.push(a as u8);
    }

    pub fn extend(&mut self, w: &Word) {
        self.0.extend_from_slice(&w.0);
    }

    pub fn extend_from_slice(&mut self, letters: &[u8]) {
        self.0.extend_from_slice(letters);
    }

    pub fn concat(&self, w: &Word) -> Word {
        let mut out = self.clone();
        out.extend(w);
        out
    }

    pub fn power(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Applies a letter renaming: letter `a` becomes `rename[a]`.
    pub fn rename(&self, rename: &[usize]) -> Word {
        Word(self.0.iter().map(|&a| rename[a as usize] as u8).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &a in &self.0 {
            fmt::Write::write_char(f, (b'a' + a) as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.bytes()
            .map(|c| match c {
                b'a'..=b'z' => Ok(c - b'a'),
                _ => Err(Error::LetterOutOfRange {
                    letter: c as usize,
                    q: MAX_LETTERS,
                }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Word)
    }
}

impl From<Vec<u8>> for Word {
    fn from(letters: Vec<u8>) -> Self {
        Word(letters)
    }
}

/// A set of states, 256 bits wide.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    bits: [u64; 4],
}

impl StateSet {
    pub const fn empty() -> Self {
        StateSet { bits: [0; 4] }
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut set = StateSet::empty();
        for (i, word) in set.bits.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *word = u64::MAX;
            } else if n > lo {
                *word = (1u64 << (n - lo)) - 1;
            }
        }
        set
    }

    pub fn singleton(s: usize) -> Self {
        let mut set = StateSet::empty();
        set.insert(s);
        set
    }

    /// Returns true if `s` was not already present.
    #[inline]
    pub fn insert(&mut self, s: usize) -> bool {
        let (w, b) = (s / 64, 1u64 << (s % 64));
        let fresh = self.bits[w] & b == 0;
        self.bits[w] |= b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, s: usize) -> bool {
        let (w, b) = (s / 64, 1u64 << (s % 64));
        let present = self.bits[w] & b != 0;
        self.bits[w] &= !b;
        present
    }

    #[inline]
    pub fn contains(&self, s: usize) -> bool {
        s < MAX_STATES && self.bits[s / 64] & (1u64 << (s % 64)) != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == [0; 4]
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// Low 64 bits, for callers that know the set lives below 64.
    pub fn low_bits(&self) -> u64 {
        self.bits[0]
    }

    pub fn from_low_bits(bits: u64) -> Self {
        StateSet {
            bits: [bits, 0, 0, 0],
        }
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = StateSet::empty();
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Tail length and cycle length of one state under iteration of a mapping:
/// the least `tail` and `period` with `x·f^tail == x·f^(tail+period)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub tail: usize,
    pub period: usize,
}

/// A full transformation of the state set; an element of the transition
/// semigroup.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mapping(Vec<u8>);

impl fmt::Debug for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl Mapping {
    pub fn identity(n: usize) -> Self {
        Mapping((0..n).map(|s| s as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::NoStates);
        }
        if n > MAX_STATES {
            return Err(Error::TooManyStates { n, max: MAX_STATES });
        }
        match images.iter().find(|&&t| t as usize >= n) {
            Some(&t) => Err(Error::StateOutOfRange {
                state: t as usize,
                n,
            }),
            None => Ok(Mapping(images)),
        }
    }

    #[inline]
    pub fn images(&self) -> &[u8] {
        &self.0
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, s: usize) -> usize {
        self.0[s] as usize
    }

    /// `self` followed by `other`: `x ↦ other(self(x))`, matching word
    /// concatenation order.
    pub fn then(&self, other: &Mapping) -> Mapping {
        Mapping(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn then_letter(&mut self, dfa: &Dfa, a: usize) {
        let map = dfa.letter_map(a);
        for x in &mut self.0 {
            *x = map[*x as usize];
        }
    }

    pub fn image(&self, set: &StateSet) -> StateSet {
        set.iter().map(|s| self.apply(s)).collect()
    }

    pub fn rank(&self) -> usize {
        let mut seen = StateSet::empty();
        for &x in &self.0 {
            seen.insert(x as usize);
        }
        seen.len()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&x| x == self.0[0])
    }

    pub fn power(&self, k: usize) -> Mapping {
        let mut out = Mapping::identity(self.n());
        for _ in 0..k {
            out = out.then(self);
        }
        out
    }

    /// Tail length and period of `x` under iteration.
    pub fn orbit(&self, x: usize) -> Orbit {
        let n = self.n();
        let mut first_seen = vec![usize::MAX; n];
        let mut cur = x;
        let mut step = 0;
        while first_seen[cur] == usize::MAX {
            first_seen[cur] = step;
            cur = self.apply(cur);
            step += 1;
        }
        Orbit {
            tail: first_seen[cur],
            period: step - first_seen[cur],
        }
    }

    /// Functional-graph analysis of the mapping: for each state its tail
    /// length, its cycle, and its position on that cycle.
    pub fn cycles(&self) -> CycleStructure {
        let n = self.n();
        const UNSEEN: u32 = u32::MAX;
        let mut tail = vec![UNSEEN; n];
        let mut cycle_of = vec![0u32; n];
        let mut pos = vec![0u32; n];
        let mut cycles: Vec<Vec<u8>> = Vec::new();
        let mut on_path = vec![u32::MAX; n];
        let mut path = Vec::new();
        for start in 0..n {
            if tail[start] != UNSEEN {
                continue;
            }
            path.clear();
            let mut cur = start;
            while tail[cur] == UNSEEN && on_path[cur] == u32::MAX {
                on_path[cur] = path.len() as u32;
                path.push(cur);
                cur = self.apply(cur);
            }
            let mut cut = path.len();
            if tail[cur] == UNSEEN {
                // closed a new cycle starting at path[on_path[cur]]
                let from = on_path[cur] as usize;
                let id = cycles.len() as u32;
                let members: Vec<u8> = path[from..].iter().map(|&s| s as u8).collect();
                for (i, &s) in path[from..].iter().enumerate() {
                    tail[s] = 0;
                    cycle_of[s] = id;
                    pos[s] = i as u32;
                }
                cycles.push(members);
                cut = from;
            }
            // states on the path before `cut` hang off the tree above `path[cut]`
            for i in (0..cut).rev() {
                let s = path[i];
                let t = self.apply(s);
                tail[s] = tail[t] + 1;
                cycle_of[s] = cycle_of[t];
            }
            for &s in &path {
                on_path[s] = u32::MAX;
            }
        }
        // position of the entry point for tree states
        let mut entry = vec![0u32; n];
        for s in 0..n {
            let mut cur = s;
            for _ in 0..tail[s] {
                cur = self.apply(cur);
            }
            entry[s] = pos[cur];
        }
        CycleStructure {
            tail,
            cycle_of,
            entry,
            cycles,
        }
    }

    /// The idempotent power `f^E`, with `E` the least positive multiple of
    /// every cycle length that is at least the longest tail. Its image is the
    /// set of cyclic points of `f`.
    pub fn idempotent_power(&self) -> Mapping {
        self.cycles().idempotent_power()
    }
}

/// Result of [`Mapping::cycles`].
#[derive(Clone, Debug)]
pub struct CycleStructure {
    tail: Vec<u32>,
    cycle_of: Vec<u32>,
    entry: Vec<u32>,
    cycles: Vec<Vec<u8>>,
}

impl CycleStructure {
    pub fn tail(&self, s: usize) -> usize {
        self.tail[s] as usize
    }

    pub fn period(&self, s: usize) -> usize {
        self.cycles[self.cycle_of[s] as usize].len()
    }

    /// Longest tail, i.e. the least `k` with `Γf^k = Γf^(k+1)`.
    pub fn max_tail(&self) -> usize {
        self.tail.iter().copied().max().unwrap_or(0) as usize
    }

    /// Number of cyclic points: the rank of every high enough power.
    pub fn cyclic_points(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    pub fn cycle_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.cycles.iter().map(Vec::len)
    }

    /// Image of `s` under the idempotent power.
    pub fn settle(&self, s: usize) -> usize {
        let cycle = &self.cycles[self.cycle_of[s] as usize];
        let len = cycle.len();
        // E is a multiple of len and E >= tail, so f^E(s) sits `tail` steps
        // behind the entry point on the cycle.
        let back = self.tail[s] as usize % len;
        let at = (self.entry[s] as usize + len - back) % len;
        cycle[at] as usize
    }

    pub fn idempotent_power(&self) -> Mapping {
        Mapping((0..self.tail.len()).map(|s| self.settle(s) as u8).collect())
    }
}
