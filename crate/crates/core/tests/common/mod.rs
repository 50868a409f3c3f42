#![allow(dead_code)]

use proptest::prelude::*;
use resetword_core::{Dfa, Mapping, Word};

pub fn dfa(max_n: usize, max_q: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_n, 1..=max_q).prop_flat_map(|(n, q)| {
        prop::collection::vec(0..n as u8, n * q)
            .prop_map(move |t| Dfa::from_table(n, q, t).unwrap())
    })
}

pub fn dfa_with_word(max_n: usize, max_q: usize, max_len: usize) -> impl Strategy<Value = (Dfa, Word)> {
    dfa(max_n, max_q).prop_flat_map(move |d| {
        let q = d.q() as u8;
        prop::collection::vec(0..q, 0..=max_len).prop_map(move |w| (d.clone(), Word::from_letters(w)))
    })
}

pub fn mapping(max_n: usize) -> impl Strategy<Value = Mapping> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0..n as u8, n).prop_map(|v| Mapping::from_images(v).unwrap())
    })
}

/// Every complete automaton with `n` states and `q` letters.
pub fn all_dfas(n: usize, q: usize) -> impl Iterator<Item = Dfa> {
    let cells = n * q;
    let total = n.pow(cells as u32);
    (0..total).map(move |mut code| {
        let mut table = vec![0u8; cells];
        for cell in table.iter_mut() {
            *cell = (code % n) as u8;
            code /= n;
        }
        Dfa::from_table(n, q, table).unwrap()
    })
}

/// `x·f^i` for `i = 0..len`, by direct iteration.
pub fn trajectory(f: &Mapping, x: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    let mut cur = x;
    for _ in 0..len {
        out.push(cur);
        cur = f.apply(cur);
    }
    out
}
