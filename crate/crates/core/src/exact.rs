//! Shortest reset words by breadth-first search over image sets.
//!
//! Starting from the full state set, every layer applies each letter to the
//! sets of the previous layer; a set is kept only the first time it appears,
//! so layer `L` holds exactly the sets whose shortest producing word has
//! length `L`. The first singleton found ends the search.
//!
//! Sets are `u32` bit masks and the visited table is dense, one `u16` per
//! subset: the layer (plus one) in the high 12 bits and the letter that
//! produced the set in the low 4. Untouched pages of the table are never
//! written, so sparse searches stay cheap even at the subset cap.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Dfa, Error, Result, Word, SUBSET_CAP};

/// Largest alphabet accepted by the search (letters fit in 4 bits).
pub const MAX_SEARCH_LETTERS: usize = 16;
const MAX_LAYER: usize = (1 << 12) - 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    /// A shortest reset word, `None` if the automaton does not synchronize.
    pub word: Option<Word>,
    /// Number of distinct image sets stored, the full set included.
    pub visited: usize,
}

impl ExactResult {
    pub fn length(&self) -> Option<usize> {
        self.word.as_ref().map(Word::len)
    }
}

/// Reusable search state for automata of one size.
pub struct ImageSearch {
    n: usize,
    q: usize,
    /// images[a][k][v]: image of the states `8k + i` for the bits `i` of `v`
    images: Vec<[[u32; 256]; 4]>,
    entry: Vec<u16>,
    touched: bool,
    frontier: Vec<u32>,
    next: Vec<u32>,
}

impl ImageSearch {
    pub fn new(n: usize, q: usize) -> Result<Self> {
        if n > SUBSET_CAP {
            return Err(Error::Capacity {
                what: "exact search",
                unit: "states",
                got: n,
                max: SUBSET_CAP,
            });
        }
        if q > MAX_SEARCH_LETTERS {
            return Err(Error::Capacity {
                what: "exact search",
                unit: "letters",
                got: q,
                max: MAX_SEARCH_LETTERS,
            });
        }
        Ok(ImageSearch {
            n,
            q,
            images: vec![[[0; 256]; 4]; q],
            entry: vec![0; 1 << n],
            touched: false,
            frontier: Vec::new(),
            next: Vec::new(),
        })
    }

    fn check(&self, d: &Dfa) -> Result<()> {
        if d.n() != self.n || d.q() != self.q {
            return Err(Error::InvalidSpec("automaton size differs from the search buffers"));
        }
        Ok(())
    }

    fn load(&mut self, d: &Dfa) {
        for a in 0..self.q {
            let row = d.letter_map(a);
            let tables = &mut self.images[a];
            for (k, table) in tables.iter_mut().enumerate() {
                for v in 1..256usize {
                    let low = v.trailing_zeros() as usize;
                    let s = 8 * k + low;
                    let bit = if s < self.n { 1u32 << row[s] } else { 0 };
                    table[v] = table[v & (v - 1)] | bit;
                }
            }
        }
        if self.touched {
            self.entry.fill(0);
        }
        self.touched = true;
    }

    #[inline]
    fn image(&self, a: usize, set: u32) -> u32 {
        let t = &self.images[a];
        t[0][(set & 0xff) as usize]
            | t[1][((set >> 8) & 0xff) as usize]
            | t[2][((set >> 16) & 0xff) as usize]
            | t[3][(set >> 24) as usize]
    }

    #[inline]
    fn layer_of(&self, set: u32) -> Option<usize> {
        match self.entry[set as usize] {
            0 => None,
            e => Some((e >> 4) as usize - 1),
        }
    }

    /// Runs the search; returns the first singleton and its layer, and the
    /// number of visited sets. With `stop_early` false the whole reachable
    /// lattice is explored.
    fn bfs(&mut self, d: &Dfa, stop_early: bool) -> Result<(Option<(u32, usize)>, usize)> {
        self.check(d)?;
        self.load(d);
        let full = (1u32 << self.n) - 1;
        self.entry[full as usize] = 1 << 4;
        let mut visited = 1;
        let mut found = None;
        if self.n == 1 {
            return Ok((Some((full, 0)), visited));
        }
        self.frontier.clear();
        self.frontier.push(full);
        let mut layer = 0;
        while !self.frontier.is_empty() {
            if layer == MAX_LAYER {
                return Err(Error::Capacity {
                    what: "exact search",
                    unit: "layers",
                    got: layer + 1,
                    max: MAX_LAYER,
                });
            }
            let tag = ((layer + 2) as u16) << 4;
            self.next.clear();
            for i in 0..self.frontier.len() {
                let set = self.frontier[i];
                for a in 0..self.q {
                    let img = self.image(a, set);
                    if self.entry[img as usize] != 0 {
                        continue;
                    }
                    self.entry[img as usize] = tag | a as u16;
                    visited += 1;
                    self.next.push(img);
                    if found.is_none() && img.is_power_of_two() {
                        found = Some((img, layer + 1));
                        if stop_early {
                            return Ok((found, visited));
                        }
                    }
                }
            }
            core::mem::swap(&mut self.frontier, &mut self.next);
            layer += 1;
        }
        Ok((found, visited))
    }

    /// Length of a shortest reset word, `None` if there is none.
    pub fn min_length(&mut self, d: &Dfa) -> Result<Option<usize>> {
        Ok(self.bfs(d, true)?.0.map(|(_, layer)| layer))
    }

    /// A shortest reset word and the number of visited sets.
    pub fn shortest_word(&mut self, d: &Dfa) -> Result<ExactResult> {
        let (found, visited) = self.bfs(d, true)?;
        let word = found.map(|(set, layer)| self.reconstruct(d, set, layer));
        Ok(ExactResult { word, visited })
    }

    /// Walks back from `set` at `layer` to the full set: each step picks a
    /// preimage under the stored letter lying exactly one layer lower.
    fn reconstruct(&self, d: &Dfa, mut set: u32, mut layer: usize) -> Word {
        let mut letters = Vec::with_capacity(layer);
        let full = (1u32 << self.n) - 1;
        while layer > 0 {
            let a = (self.entry[set as usize] & 0xf) as usize;
            letters.push(a as u8);
            set = if layer == 1 {
                full
            } else {
                self.predecessor(d, a, set, layer - 1)
                    .expect("a set at layer L has a preimage at layer L-1")
            };
            layer -= 1;
        }
        letters.reverse();
        Word::from_letters(letters)
    }

    /// Some `x` with `x·a = target` stored at `layer`.
    fn predecessor(&self, d: &Dfa, a: usize, target: u32, layer: usize) -> Option<u32> {
        let row = d.letter_map(a);
        let mut fibres: Vec<u32> = Vec::new();
        let mut rest = target;
        while rest != 0 {
            let t = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut fibre = 0u32;
            for (s, &image) in row.iter().enumerate() {
                if image as usize == t {
                    fibre |= 1 << s;
                }
            }
            fibres.push(fibre);
        }
        self.pick(&fibres, 0, 0, layer)
    }

    /// Chooses a nonempty subset of every fibre; larger subsets first.
    fn pick(&self, fibres: &[u32], index: usize, acc: u32, layer: usize) -> Option<u32> {
        if index == fibres.len() {
            return (self.layer_of(acc) == Some(layer)).then_some(acc);
        }
        let fibre = fibres[index];
        let mut sub = fibre;
        while sub != 0 {
            if let Some(x) = self.pick(fibres, index + 1, acc | sub, layer) {
                return Some(x);
            }
            sub = (sub - 1) & fibre;
        }
        None
    }

    /// Explores the whole reachable lattice and checks that the stored
    /// layers are shortest distances from the full set: every set but the
    /// full one has a preimage one layer lower, and no letter leads from a
    /// set to one more than a layer further.
    pub fn audit_layers(&mut self, d: &Dfa) -> Result<bool> {
        let (_, visited) = self.bfs(d, false)?;
        let mut seen = 0;
        for set in 1..self.entry.len() as u32 {
            let Some(layer) = self.layer_of(set) else {
                continue;
            };
            seen += 1;
            if layer > 0 {
                let a = (self.entry[set as usize] & 0xf) as usize;
                if layer > 1 && self.predecessor(d, a, set, layer - 1).is_none() {
                    return Ok(false);
                }
            }
            for b in 0..self.q {
                match self.layer_of(self.image(b, set)) {
                    Some(l) if l <= layer + 1 => {}
                    _ => return Ok(false),
                }
            }
        }
        Ok(seen == visited)
    }
}

/// A shortest reset word of `d` and the number of image sets visited.
pub fn minimal_sync_word(d: &Dfa) -> Result<ExactResult> {
    ImageSearch::new(d.n(), d.q())?.shortest_word(d)
}

/// Length of a shortest reset word of `d`.
pub fn minimal_sync_length(d: &Dfa) -> Result<Option<usize>> {
    ImageSearch::new(d.n(), d.q())?.min_length(d)
}

/// Tries every word of length `0..=max_len` in order and returns the first
/// length with a reset word. Exponential; meant as an independent check.
pub fn minimal_sync_length_bruteforce(d: &Dfa, max_len: usize) -> Option<usize> {
    for len in 0..=max_len {
        let mut word = vec![0usize; len];
        loop {
            let end = |s: usize| word.iter().fold(s, |s, &a| d.next(s, a));
            let first = end(0);
            if (1..d.n()).all(|s| end(s) == first) {
                return Some(len);
            }
            if !advance(&mut word, d.q()) {
                break;
            }
        }
    }
    None
}

/// Next word of the same length in lexicographic order; false after the last.
fn advance(word: &mut [usize], q: usize) -> bool {
    for letter in word.iter_mut().rev() {
        *letter += 1;
        if *letter < q {
            return true;
        }
        *letter = 0;
    }
    false
}
