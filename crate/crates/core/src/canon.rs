//! Isomorphism classes of automata.
//!
//! [`canonical_form`] is the lexicographically least letter-major table over
//! all state relabelings (and optionally all letter permutations). It works
//! for any automaton but costs `n!·q!` table builds, so it is meant for
//! reporting and small audits.
//!
//! The census uses the cheaper [`BfsCanon`]: when every state is reachable
//! from every other, a relabeling is fixed by a start state and a letter
//! order (number states in breadth-first order). The least such labeling,
//! compared state-major, is a canonical form for strongly connected automata.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::Dfa;

/// Lexicographically least table over all relabelings of `d`; with
/// `permute_letters` letters may be reordered too. Two automata are
/// isomorphic iff their canonical forms are equal.
pub fn canonical_form(d: &Dfa, permute_letters: bool) -> Dfa {
    let (n, q) = (d.n(), d.q());
    let table = d.table();
    let mut best: Vec<u8> = table.to_vec();
    let mut cand = vec![0u8; n * q];
    let mut letters: Vec<usize> = (0..q).collect();
    loop {
        let mut states: Vec<usize> = (0..n).collect();
        loop {
            // states[new] = old
            let mut rename = vec![0u8; n];
            for (new, &old) in states.iter().enumerate() {
                rename[old] = new as u8;
            }
            if relabel_below(table, n, &letters, &states, &rename, &best, &mut cand) {
                best.copy_from_slice(&cand);
            }
            if !next_permutation(&mut states) {
                break;
            }
        }
        if !permute_letters || !next_permutation(&mut letters) {
            break;
        }
    }
    Dfa::from_table(n, q, best).expect("relabeling keeps the table valid")
}

/// True when `d` is its own canonical form.
pub fn is_canonical(d: &Dfa, permute_letters: bool) -> bool {
    canonical_form(d, permute_letters).table() == d.table()
}

/// Builds the relabeled table into `cand`, giving up as soon as it compares
/// greater than `best`. Returns true if `cand` is strictly smaller.
fn relabel_below(
    table: &[u8],
    n: usize,
    letters: &[usize],
    states: &[usize],
    rename: &[u8],
    best: &[u8],
    cand: &mut [u8],
) -> bool {
    let mut smaller = false;
    for (j, &a) in letters.iter().enumerate() {
        let row = &table[a * n..(a + 1) * n];
        for (new, &old) in states.iter().enumerate() {
            let v = rename[row[old] as usize];
            let at = j * n + new;
            cand[at] = v;
            if !smaller {
                match v.cmp(&best[at]) {
                    Ordering::Less => smaller = true,
                    Ordering::Greater => return false,
                    Ordering::Equal => {}
                }
            }
        }
    }
    smaller
}

/// Rearranges into the next permutation in lexicographic order; false after
/// the last one.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..k).collect();
    let mut out = vec![p.clone()];
    while next_permutation(&mut p) {
        out.push(p.clone());
    }
    out
}

/// Breadth-first canonical labeling of strongly connected tables.
///
/// Tables here are state-major: entry `s * q + a` is the target of `s` under
/// `a`. The labeling from start `s` with letter order `σ` numbers `s` as 0
/// and then every newly met state in order of discovery, scanning states by
/// label and letters by `σ`.
#[derive(Clone, Debug)]
pub struct BfsCanon {
    n: usize,
    q: usize,
    orders: Vec<Vec<usize>>,
    label: Vec<u8>,
    queue: Vec<u8>,
}

const UNLABELED: u8 = u8::MAX;

impl BfsCanon {
    pub fn new(n: usize, q: usize, permute_letters: bool) -> Self {
        let orders = if permute_letters {
            permutations(q)
        } else {
            vec![(0..q).collect()]
        };
        BfsCanon {
            n,
            q,
            orders,
            label: vec![UNLABELED; n],
            queue: vec![0; n],
        }
    }

    /// Compares the labeling from `start` under letter order `order` with
    /// `reference`. `None` when some state is unreachable from `start`; a
    /// labeling found greater is reported before reachability is known.
    fn compare(
        &mut self,
        table: &[u8],
        start: usize,
        order: usize,
        reference: &[u8],
    ) -> Option<Ordering> {
        let (n, q) = (self.n, self.q);
        self.label.fill(UNLABELED);
        self.label[start] = 0;
        self.queue[0] = start as u8;
        let mut next = 1usize;
        let mut verdict = Ordering::Equal;
        for i in 0..n {
            if i >= next {
                return None;
            }
            let old = self.queue[i] as usize;
            for (j, &a) in self.orders[order].iter().enumerate() {
                let t = table[old * q + a] as usize;
                if self.label[t] == UNLABELED {
                    self.label[t] = next as u8;
                    self.queue[next] = t as u8;
                    next += 1;
                }
                if verdict == Ordering::Equal {
                    verdict = self.label[t].cmp(&reference[i * q + j]);
                    if verdict == Ordering::Greater {
                        return Some(Ordering::Greater);
                    }
                }
            }
        }
        Some(verdict)
    }

    /// Writes the labeling from `start` under letter order `order` to `out`.
    fn write(&mut self, table: &[u8], start: usize, order: usize, out: &mut [u8]) -> bool {
        let (n, q) = (self.n, self.q);
        self.label.fill(UNLABELED);
        self.label[start] = 0;
        self.queue[0] = start as u8;
        let mut next = 1usize;
        for i in 0..n {
            if i >= next {
                return false;
            }
            let old = self.queue[i] as usize;
            for (j, &a) in self.orders[order].iter().enumerate() {
                let t = table[old * q + a] as usize;
                if self.label[t] == UNLABELED {
                    self.label[t] = next as u8;
                    self.queue[next] = t as u8;
                    next += 1;
                }
                out[i * q + j] = self.label[t];
            }
        }
        true
    }

    /// True when the state-major `table` is the least breadth-first labeling
    /// of itself. Every table passing this test is reachable from state 0.
    pub fn is_canonical(&mut self, table: &[u8]) -> bool {
        if self.compare(table, 0, 0, table) != Some(Ordering::Equal) {
            return false;
        }
        for order in 0..self.orders.len() {
            for start in 0..self.n {
                if start == 0 && order == 0 {
                    continue;
                }
                if self.compare(table, start, order, table) == Some(Ordering::Less) {
                    return false;
                }
            }
        }
        true
    }

    /// Least breadth-first labeling over all start states reaching every
    /// state. `None` if no start state reaches every state.
    pub fn canonical(&mut self, table: &[u8]) -> Option<Vec<u8>> {
        let mut best: Option<Vec<u8>> = None;
        let mut cand = vec![0u8; self.n * self.q];
        for order in 0..self.orders.len() {
            for start in 0..self.n {
                if !self.write(table, start, order, &mut cand) {
                    continue;
                }
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand.clone());
                }
            }
        }
        best
    }
}

/// Converts a letter-major table to state-major.
pub fn to_state_major(d: &Dfa) -> Vec<u8> {
    let (n, q) = (d.n(), d.q());
    let mut out = vec![0u8; n * q];
    for a in 0..q {
        for s in 0..n {
            out[s * q + a] = d.next(s, a) as u8;
        }
    }
    out
}

/// Converts a state-major table back to an automaton.
pub fn from_state_major(n: usize, q: usize, table: &[u8]) -> Dfa {
    let mut delta = vec![0u8; n * q];
    for s in 0..n {
        for a in 0..q {
            delta[a * n + s] = table[s * q + a];
        }
    }
    Dfa::from_table(n, q, delta).expect("state-major table is valid")
}
