//! Independent reference computations checked against the library.

mod common;

use std::collections::{HashMap, HashSet, VecDeque};

use common::{all_dfas, dfa};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use resetword_core::canon::canonical_form;
use resetword_core::enumerate::{enumerate, enumerate_with, Generation, SearchSpec};
use resetword_core::exact::{minimal_sync_length_bruteforce, minimal_sync_word, ImageSearch};
use resetword_core::greedy::{self, Algorithm};
use resetword_core::reach::{is_synchronizing, scc};
use resetword_core::semigroup::{find_constant, semigroup_closure, ConstantSearch, DEFAULT_CAP};
use resetword_core::{Dfa, Error};

/// Shortest reset length by breadth-first search over subsets held as
/// bitmasks in a hash set.
fn subset_bfs(d: &Dfa) -> Option<usize> {
    let full: u64 = (1u64 << d.n()) - 1;
    let mut seen = HashSet::from([full]);
    let mut queue = VecDeque::from([(full, 0usize)]);
    while let Some((set, len)) = queue.pop_front() {
        if set.count_ones() == 1 {
            return Some(len);
        }
        for a in 0..d.q() {
            let mut image = 0u64;
            for s in (0..d.n()).filter(|&s| set >> s & 1 == 1) {
                image |= 1 << d.next(s, a);
            }
            if seen.insert(image) {
                queue.push_back((image, len + 1));
            }
        }
    }
    None
}

fn random_dfa(rng: &mut StdRng, n: usize, q: usize) -> Dfa {
    let table = (0..n * q).map(|_| rng.random_range(0..n) as u8).collect();
    Dfa::from_table(n, q, table).unwrap()
}

fn check_agreement(d: &Dfa) {
    let sync = is_synchronizing(d);
    let exact = minimal_sync_word(d).unwrap();
    let closure = semigroup_closure(d, DEFAULT_CAP);
    assert!(closure.is_complete());
    assert_eq!(exact.word.is_some(), sync, "{d:?}");
    assert_eq!(closure.contains_constant(), sync, "{d:?}");
    assert_eq!(exact.length(), subset_bfs(d), "{d:?}");
    if let Some(w) = &exact.word {
        assert!(d.resets(w));
        let c = closure.constant().unwrap();
        assert!(d.resets(&closure.word(c)));
    }
    let first = match find_constant(d, DEFAULT_CAP) {
        ConstantSearch::Found(w) => Some(w.len()),
        ConstantSearch::Absent => None,
        ConstantSearch::Capped => unreachable!("the full closure fits"),
    };
    // the semigroup holds nonempty words only
    assert_eq!(first, exact.length().map(|l| l.max(1)), "{d:?}");
}

#[test]
fn oracles_agree_on_every_small_automaton() {
    for n in 1..=3 {
        for q in 1..=2 {
            for d in all_dfas(n, q) {
                check_agreement(&d);
                let bound = (n - 1) * (n - 1) + 1;
                assert_eq!(
                    minimal_sync_length_bruteforce(&d, bound),
                    subset_bfs(&d),
                    "{d:?}"
                );
            }
        }
    }
}

#[test]
fn exact_matches_bruteforce_on_random_automata() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = rng.random_range(1..=6);
        let q = rng.random_range(1..=3);
        let d = random_dfa(&mut rng, n, q);
        let exact = minimal_sync_word(&d).unwrap();
        let Some(len) = exact.length() else {
            assert!(!is_synchronizing(&d));
            continue;
        };
        // word enumeration is exponential; past q^len ~ 10^6 fall back on subsets
        if (q as f64).powi(len as i32) <= 1e6 {
            assert_eq!(minimal_sync_length_bruteforce(&d, len), Some(len), "{d:?}");
        } else {
            assert_eq!(subset_bfs(&d), Some(len), "{d:?}");
        }
        assert!(ImageSearch::new(n, q).unwrap().audit_layers(&d).unwrap());
    }
}

proptest! {
    #[test]
    fn oracles_agree_on_random_automata(d in dfa(8, 3)) {
        check_agreement(&d);
    }

    #[test]
    fn layers_are_consistent(d in dfa(10, 3)) {
        prop_assert!(ImageSearch::new(d.n(), d.q()).unwrap().audit_layers(&d).unwrap());
    }
}

#[test]
fn greedy_words_are_valid() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10_000 {
        let n = rng.random_range(1..=10);
        let q = rng.random_range(1..=4);
        let d = random_dfa(&mut rng, n, q);
        let min = minimal_sync_word(&d).unwrap().length();
        for algorithm in Algorithm::ALL {
            let result = greedy::run(&d, algorithm);
            let Some(min) = min else {
                assert!(matches!(result, Err(Error::NotSynchronizing)));
                continue;
            };
            let r = result.unwrap();
            assert!(d.resets(&r.word), "{algorithm:?} {d:?}");
            assert!(r.len() >= min);
            assert!(r.len() <= (n * n * n - n) / 6, "{algorithm:?} {d:?}");
            assert_eq!(greedy::run(&d, algorithm).unwrap(), r);
        }
    }
}

/// Whether the census should keep `d`, decided from scratch.
fn passes_filters(d: &Dfa) -> bool {
    let q = d.q();
    let sub_sync = q > 1
        && (0..q).any(|drop| {
            let keep: Vec<usize> = (0..q).filter(|&a| a != drop).collect();
            subset_bfs(&d.restrict_alphabet(&keep).unwrap()).is_some()
        });
    scc(d).is_strongly_connected() && subset_bfs(d).is_some() && !sub_sync
}

/// Canonical form → shortest reset length over everything the census visits.
fn census(spec: &SearchSpec) -> HashMap<Vec<u8>, usize> {
    let mut kept = HashMap::new();
    enumerate_with(spec, |d, len| {
        let key = canonical_form(d, spec.permute_letters).table().to_vec();
        assert!(kept.insert(key, len).is_none(), "visited twice: {d:?}");
    })
    .unwrap();
    kept
}

#[test]
fn census_keeps_exactly_the_filtered_classes() {
    for (n, q) in [(2, 2), (3, 2), (3, 3), (4, 2)] {
        let spec = SearchSpec::new(n, q);
        let kept = census(&spec);
        let mut expected = HashMap::new();
        for d in all_dfas(n, q) {
            if passes_filters(&d) {
                expected.insert(canonical_form(&d, true).table().to_vec(), subset_bfs(&d).unwrap());
            }
        }
        assert_eq!(kept, expected, "n={n} q={q}");
    }
}

#[test]
fn census_filters_are_sound_on_a_sample() {
    let (n, q) = (5, 2);
    let spec = SearchSpec::new(n, q);
    let kept = census(&spec);
    let mut rng = StdRng::seed_from_u64(3);
    let raw = n.pow((n * q) as u32);
    for _ in 0..raw / 100 {
        let d = random_dfa(&mut rng, n, q);
        let key = canonical_form(&d, true).table().to_vec();
        if passes_filters(&d) {
            assert_eq!(kept.get(&key).copied(), subset_bfs(&d), "{d:?}");
        } else {
            assert!(!kept.contains_key(&key), "{d:?}");
        }
    }
}

#[test]
fn generation_modes_agree() {
    for (n, q) in [(3, 2), (3, 3), (4, 2)] {
        let orderly = SearchSpec::new(n, q);
        let mut raw = orderly.clone();
        raw.generation = Generation::Raw;
        let (a, b) = (enumerate(&orderly).unwrap(), enumerate(&raw).unwrap());
        assert_eq!(a.histogram, b.histogram);
        assert_eq!(a.counters.unique, b.counters.unique);
        assert_eq!(a.extremal, b.extremal);
        assert_eq!(enumerate(&orderly).unwrap(), a);
    }
}
