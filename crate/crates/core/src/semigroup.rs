//! Transition semigroup: all transformations induced by nonempty words.
//!
//! Elements are found breadth first from the letter mappings, composing each
//! new element with every letter. Element tables live in one flat arena and
//! are deduplicated through a hash table of arena indices. Every element
//! keeps the element and letter it was first reached from, so a shortest
//! word inducing it can be rebuilt.

use alloc::vec::Vec;
use core::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};

use crate::{Dfa, Mapping, Word};

/// Default bound on the number of elements.
pub const DEFAULT_CAP: usize = 1_000_000;

const ROOT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct SemigroupClosure {
    n: usize,
    arena: Vec<u8>,
    /// (element extended, letter); `ROOT` for a bare letter
    witness: Vec<(u32, u8)>,
    complete: bool,
}

impl SemigroupClosure {
    /// Number of elements found.
    pub fn size(&self) -> usize {
        self.witness.len()
    }

    /// False when the cap stopped the search before closure.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn images(&self, i: usize) -> &[u8] {
        &self.arena[i * self.n..(i + 1) * self.n]
    }

    pub fn element(&self, i: usize) -> Mapping {
        Mapping::from_images(self.images(i).to_vec()).expect("stored images are in range")
    }

    /// A shortest word inducing element `i`.
    pub fn word(&self, i: usize) -> Word {
        let mut letters = Vec::new();
        let mut at = i as u32;
        while at != ROOT {
            let (pred, a) = self.witness[at as usize];
            letters.push(a);
            at = pred;
        }
        letters.reverse();
        Word::from_letters(letters)
    }

    /// Index of a constant element, if any was found.
    pub fn constant(&self) -> Option<usize> {
        (0..self.size()).find(|&i| {
            let img = self.images(i);
            img.iter().all(|&s| s == img[0])
        })
    }

    pub fn contains_constant(&self) -> bool {
        self.constant().is_some()
    }
}

/// Breadth-first closure of the letter mappings of `d`, stopping once `cap`
/// elements are stored.
pub fn semigroup_closure(d: &Dfa, cap: usize) -> SemigroupClosure {
    close(d, cap, false)
}

/// Outcome of [`find_constant`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstantSearch {
    /// A shortest word inducing a constant map.
    Found(Word),
    /// The closure is complete and holds no constant.
    Absent,
    /// The cap was reached before any constant.
    Capped,
}

/// Runs the closure only until the first constant element. Elements appear
/// in order of shortest word length, so the word found is a shortest reset
/// word.
pub fn find_constant(d: &Dfa, cap: usize) -> ConstantSearch {
    let c = close(d, cap, true);
    match c.constant() {
        Some(i) => ConstantSearch::Found(c.word(i)),
        None if c.is_complete() => ConstantSearch::Absent,
        None => ConstantSearch::Capped,
    }
}

fn close(d: &Dfa, cap: usize, stop_at_constant: bool) -> SemigroupClosure {
    let (n, q) = (d.n(), d.q());
    let hasher = DefaultHashBuilder::default();
    let mut index: HashTable<u32> = HashTable::new();
    let mut out = SemigroupClosure {
        n,
        arena: Vec::new(),
        witness: Vec::new(),
        complete: true,
    };
    let mut scratch = alloc::vec![0u8; n];

    // inserts `scratch`; false when the cap is hit
    let mut insert = |out: &mut SemigroupClosure, scratch: &[u8], pred: u32, a: u8| -> bool {
        let hash = hasher.hash_one(scratch);
        let arena = &out.arena;
        if index
            .find(hash, |&i| &arena[i as usize * n..(i as usize + 1) * n] == scratch)
            .is_some()
        {
            return true;
        }
        if out.witness.len() == cap {
            out.complete = false;
            return false;
        }
        let id = out.witness.len() as u32;
        out.arena.extend_from_slice(scratch);
        out.witness.push((pred, a));
        let arena = &out.arena;
        index.insert_unique(hash, id, |&i| {
            hasher.hash_one(&arena[i as usize * n..(i as usize + 1) * n])
        });
        true
    };

    for a in 0..q {
        scratch.copy_from_slice(d.letter_map(a));
        if !insert(&mut out, &scratch, ROOT, a as u8) {
            return out;
        }
        if stop_at_constant && scratch.iter().all(|&s| s == scratch[0]) {
            return out;
        }
    }
    let mut i = 0;
    while i < out.witness.len() {
        for a in 0..q {
            let row = d.letter_map(a);
            for s in 0..n {
                scratch[s] = row[out.arena[i * n + s] as usize];
            }
            if !insert(&mut out, &scratch, i as u32, a as u8) {
                return out;
            }
            if stop_at_constant && scratch.iter().all(|&s| s == scratch[0]) {
                return out;
            }
        }
        i += 1;
    }
    out
}

/// Size of the transition semigroup, `None` if it exceeds `cap`.
pub fn semigroup_size(d: &Dfa, cap: usize) -> Option<usize> {
    let c = semigroup_closure(d, cap);
    c.is_complete().then(|| c.size())
}
