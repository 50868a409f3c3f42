mod common;

use std::collections::HashSet;

use common::{all_dfas, dfa, dfa_with_word, mapping, trajectory};
use proptest::prelude::*;
use resetword_core::canon::{canonical_form, permutations, to_state_major, BfsCanon};
use resetword_core::pairs::{collision_cycle_word, merge_stats_of, PairTable};
use resetword_core::reach::{is_synchronizing, scc};
use resetword_core::{Dfa, Mapping, StateSet, Word};

fn word_strategy(q: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..q as u8, 0..=max_len).prop_map(Word::from_letters)
}

fn two_words(max_n: usize, max_q: usize) -> impl Strategy<Value = (Dfa, Word, Word)> {
    dfa(max_n, max_q).prop_flat_map(|d| {
        let q = d.q();
        (Just(d), word_strategy(q, 12), word_strategy(q, 12))
    })
}

fn with_perms(max_n: usize, max_q: usize) -> impl Strategy<Value = (Dfa, Vec<usize>, Vec<usize>)> {
    dfa(max_n, max_q).prop_flat_map(|d| {
        let states = Just((0..d.n()).collect::<Vec<_>>()).prop_shuffle();
        let letters = Just((0..d.q()).collect::<Vec<_>>()).prop_shuffle();
        (Just(d), states, letters)
    })
}

/// Image of every unordered pair (including the diagonal) under `w`, computed
/// on the pair automaton directly.
fn pair_automaton_resets(d: &Dfa, w: &Word) -> bool {
    let n = d.n();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p..n).map(move |q| (p, q))).collect();
    for &a in w.letters() {
        for pair in pairs.iter_mut() {
            let (x, y) = (d.next(pair.0, a as usize), d.next(pair.1, a as usize));
            *pair = (x.min(y), x.max(y));
        }
    }
    pairs.iter().all(|&(p, q)| p == q)
}

/// All words of length exactly `len`, as letter vectors.
fn words_of_length(q: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..q as u8).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

proptest! {
    #[test]
    fn images_compose((d, u, v) in two_words(8, 3)) {
        let all = StateSet::full(d.n());
        prop_assert_eq!(d.image_of_set(&all, &u.concat(&v)), d.image_of_set(&d.image_of_set(&all, &u), &v));
        prop_assert_eq!(d.mapping(&u.concat(&v)), d.mapping(&u).then(&d.mapping(&v)));
        for s in 0..d.n() {
            prop_assert_eq!(d.apply_word(s, &u.concat(&v)), d.apply_word(d.apply_word(s, &u), &v));
        }
    }

    #[test]
    fn rank_never_grows((d, u, v) in two_words(8, 3)) {
        let uv = u.concat(&v);
        prop_assert!(d.rank(&uv) <= d.rank(&u));
        prop_assert!(d.rank(&uv) <= d.rank(&v));
        prop_assert_eq!(d.rank(&uv) + d.defect(&uv), d.n());
    }

    #[test]
    fn cycle_structure_matches_orbits(f in mapping(12)) {
        let cycles = f.cycles();
        for s in 0..f.n() {
            let orbit = f.orbit(s);
            prop_assert_eq!(cycles.tail(s), orbit.tail);
            prop_assert_eq!(cycles.period(s), orbit.period);
        }
        let e = f.idempotent_power();
        prop_assert_eq!(e.then(&e), e.clone());
        prop_assert_eq!(e.rank(), cycles.cyclic_points());
        // a high enough power of f is the idempotent one
        let order: usize = cycles.cycle_lengths().fold(1, |l, c| l / gcd(l, c) * c);
        let big = order * (cycles.max_tail() / order + 1);
        prop_assert_eq!(f.power(big), e);
    }

    #[test]
    fn canonical_form_is_a_class_invariant((d, states, letters) in with_perms(4, 2)) {
        let renamed = d.relabel(&states).unwrap().permute_letters(&letters).unwrap();
        let canon = canonical_form(&d, true);
        prop_assert_eq!(canonical_form(&renamed, true), canon.clone());
        prop_assert_eq!(canonical_form(&canon, true), canon.clone());
        prop_assert_eq!(canonical_form(&d.relabel(&states).unwrap(), false), canonical_form(&d, false));
        prop_assert_eq!(is_synchronizing(&canon), is_synchronizing(&d));
    }

    #[test]
    fn bfs_canon_is_a_class_invariant((d, states, letters) in with_perms(6, 3)) {
        prop_assume!(scc(&d).is_strongly_connected());
        let renamed = d.relabel(&states).unwrap().permute_letters(&letters).unwrap();
        let mut canon = BfsCanon::new(d.n(), d.q(), true);
        let form = canon.canonical(&to_state_major(&d)).unwrap();
        prop_assert_eq!(canon.canonical(&to_state_major(&renamed)), Some(form.clone()));
        prop_assert!(canon.is_canonical(&form));
    }

    #[test]
    fn first_letter_steps_one_closer(d in dfa(9, 3)) {
        let t = PairTable::build(&d);
        prop_assert_eq!(t.all_finite(), is_synchronizing(&d));
        for i in 0..t.pair_count() {
            let (p, q) = t.pair(i);
            let Some(dist) = t.distance(p, q) else {
                prop_assert!(t.first_letter(p, q).is_none());
                continue;
            };
            let a = t.first_letter(p, q).unwrap();
            prop_assert_eq!(t.distance(d.next(p, a), d.next(q, a)), Some(dist - 1));
            // no letter does better
            for b in 0..d.q() {
                if let Some(e) = t.distance(d.next(p, b), d.next(q, b)) {
                    prop_assert!(e + 1 >= dist);
                    if e + 1 == dist {
                        prop_assert!(a <= b);
                    }
                }
            }
            let w = t.pair_word(&d, p, q).unwrap();
            prop_assert_eq!(w.len(), dist);
            prop_assert_eq!(d.apply_word(p, &w), d.apply_word(q, &w));
            prop_assert_eq!(Some(d.apply_word(p, &w)), t.merge_state(p, q));
            let path = t.path(&d, p, q).unwrap();
            prop_assert_eq!(path.len(), dist);
            prop_assert_eq!(path.first().map(|s| (s.0, s.1)), Some((p, q)));
        }
    }

    #[test]
    fn pair_words_are_shortest(d in dfa(4, 3)) {
        let t = PairTable::build(&d);
        for i in 0..t.pair_count() {
            let (p, q) = t.pair(i);
            let dist = t.distance(p, q).unwrap_or(usize::MAX);
            for len in 0..dist.min(7) {
                for w in words_of_length(d.q(), len) {
                    let w = Word::from_letters(w);
                    prop_assert_ne!(d.apply_word(p, &w), d.apply_word(q, &w));
                }
            }
        }
    }

    #[test]
    fn closest_pair_is_closest((d, w) in dfa_with_word(9, 3, 6)) {
        let t = PairTable::build(&d);
        let set = d.image_of_set(&StateSet::full(d.n()), &w);
        let members: Vec<usize> = set.iter().collect();
        let best = members
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| members[i + 1..].iter().map(move |&q| (p, q)))
            .filter_map(|(p, q)| t.distance(p, q))
            .min();
        prop_assert_eq!(t.closest_pair(&set).map(|c| c.2), best);
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    /// A word resets the automaton exactly when it drives every pair of the
    /// pair automaton onto the diagonal.
    #[test]
    fn reset_iff_pairs_collapse((d, w) in dfa_with_word(7, 3, 16)) {
        prop_assert_eq!(d.resets(&w), pair_automaton_resets(&d, &w));
    }

    /// Reset words exist exactly when the diagonal is reachable from every
    /// pair.
    #[test]
    fn synchronizing_iff_every_pair_merges(d in dfa(8, 3)) {
        prop_assert_eq!(is_synchronizing(&d), PairTable::build(&d).all_finite());
    }

    /// For a state `p` outside the image of `s`, with `k`, `r` least such that
    /// `p·s^k = p·s^(k+r)`: every pair `(p·s^i, p·s^(r+i))` with `i < k` is
    /// merged by `s^(k-i)`, and these are `k` distinct pairs merged by `s^k`.
    #[test]
    fn iterated_word_merges_tail_pairs((d, w) in dfa_with_word(8, 3, 8)) {
        let s = d.mapping(&w);
        let n = d.n();
        let image = s.image(&StateSet::full(n));
        for p in (0..n).filter(|&p| !image.contains(p)) {
            let xs = trajectory(&s, p, 2 * n + 1);
            // least k, then least r
            let (k, r) = (0..=n)
                .flat_map(|k| (1..=n).map(move |r| (k, r)))
                .find(|&(k, r)| xs[k] == xs[k + r])
                .unwrap();
            let orbit = s.orbit(p);
            prop_assert_eq!((orbit.tail, orbit.period), (k, r));
            prop_assert!(k >= 1);
            let sk = s.power(k);
            let mut merged = HashSet::new();
            for i in 0..k {
                let (x, y) = (xs[i], xs[r + i]);
                prop_assert_ne!(x, y);
                let tail = s.power(k - i);
                prop_assert_eq!(tail.apply(x), tail.apply(y));
                prop_assert_eq!(sk.apply(x), sk.apply(y));
                merged.insert((x.min(y), x.max(y)));
            }
            prop_assert_eq!(merged.len(), k);
        }
    }

    /// Around a collision `r·α = t·α` the cycle word `s` fixes `r`, loses
    /// rank, and some state outside `Γs` has a tail of `k` steps into `r`
    /// whose `k+1` states `s^k` unites.
    #[test]
    fn collision_cycle_word_unites_a_tail(d in dfa(8, 3)) {
        let n = d.n();
        for r in 0..n {
            for alpha in 0..d.q() {
                let Some(s) = collision_cycle_word(&d, r, alpha) else {
                    continue;
                };
                prop_assert_eq!(s.letters()[0] as usize, alpha);
                prop_assert!(s.len() <= n);
                let f = d.mapping(&s);
                prop_assert_eq!(f.apply(r), r);
                prop_assert!(f.rank() < n);
                let image = f.image(&StateSet::full(n));
                let witness = (0..n).filter(|&p| !image.contains(p)).find(|&p| {
                    let orbit = f.orbit(p);
                    let xs = trajectory(&f, p, orbit.tail + 1);
                    let fk = f.power(orbit.tail);
                    orbit.period == 1
                        && xs[orbit.tail] == r
                        && xs.iter().collect::<HashSet<_>>().len() == orbit.tail + 1
                        && xs.iter().all(|&x| fk.apply(x) == r)
                });
                prop_assert!(witness.is_some(), "no tail into {} under {}", r, s);
            }
        }
    }

    /// If `s^k = s^(k+1)` then `|Γs^k|` is the number of fixed points of `s`.
    #[test]
    fn aperiodic_power_rank_is_fixed_point_count(
        images in (1..=12usize).prop_flat_map(|n| {
            (0..n).map(|i| 0..=i as u8).collect::<Vec<_>>()
        }),
        f in mapping(9),
    ) {
        // images[i] <= i gives a mapping whose cycles are all fixed points
        let aperiodic = Mapping::from_images(images).unwrap();
        for s in [aperiodic, f] {
            let n = s.n();
            let Some(k) = (0..=n).find(|&k| s.power(k) == s.power(k + 1)) else {
                continue;
            };
            let fixed = (0..n).filter(|&x| s.apply(x) == x).count();
            prop_assert_eq!(s.power(k).rank(), fixed);
        }
    }

    #[test]
    fn merge_stats_describe_powers((d, w) in dfa_with_word(8, 3, 8)) {
        let f = d.mapping(&w);
        let n = d.n();
        for p in 0..n {
            for q in p + 1..n {
                let Ok(stats) = merge_stats_of(&f, p, q) else {
                    prop_assert_ne!(f.apply(p), f.apply(q));
                    continue;
                };
                let all = StateSet::full(n);
                let at = f.power(stats.stabilization).image(&all);
                prop_assert_eq!(at.len(), stats.stabilized_rank);
                prop_assert_eq!(f.power(stats.stabilization + 1).image(&all), at);
                if stats.stabilization > 0 {
                    prop_assert_ne!(f.power(stats.stabilization - 1).image(&all), at);
                }
                let e = f.idempotent_power();
                let target = e.apply(f.apply(p));
                prop_assert_eq!((0..n).filter(|&s| e.apply(s) == target).count(), stats.preimage_count);
            }
        }
    }
}

/// Orbits of the relabeling action counted directly, against the number of
/// distinct canonical forms.
#[test]
fn canonical_forms_count_orbits() {
    for n in 1..=3 {
        for q in 1..=2 {
            for permute in [false, true] {
                let state_perms = permutations(n);
                let letter_perms = if permute { permutations(q) } else { vec![(0..q).collect()] };
                let mut seen: HashSet<Vec<u8>> = HashSet::new();
                let mut orbits = 0;
                let mut forms = HashSet::new();
                for d in all_dfas(n, q) {
                    let canon = canonical_form(&d, permute);
                    if !seen.contains(d.table()) {
                        orbits += 1;
                        let mut orbit = HashSet::new();
                        let mut stabilizer = 0;
                        for sp in &state_perms {
                            for lp in &letter_perms {
                                let image = d.relabel(sp).unwrap().permute_letters(lp).unwrap();
                                stabilizer += usize::from(image == d);
                                orbit.insert(image.table().to_vec());
                            }
                        }
                        assert_eq!(orbit.len() * stabilizer, state_perms.len() * letter_perms.len());
                        assert_eq!(canon.table(), &orbit.iter().min().unwrap()[..]);
                        seen.extend(orbit);
                    }
                    forms.insert(canon.table().to_vec());
                }
                assert_eq!(forms.len(), orbits, "n={n} q={q} permute={permute}");
                // orbits partition the raw tables
                assert_eq!(seen.len(), n.pow((n * q) as u32));
            }
        }
    }
}
