//! Shortest merging words for pairs of states.
//!
//! For every unordered pair `{p, q}` of distinct states the table keeps the
//! length of the shortest word `w` with `p·w = q·w` and its first letter. The
//! rest of the word is the entry of the successor pair `{p·α, q·α}`, so
//! words are rebuilt on demand and the table stays `O(n²)`.
//!
//! Distances come from a multi-source breadth-first search over preimages in
//! the pair graph, starting from the diagonal. First letters are fixed
//! afterwards: the smallest letter whose successor pair is one step closer.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Dfa, Error, Mapping, Result, StateSet, Word};

/// Distance of a pair that no word merges.
pub const UNREACHABLE: u32 = u32::MAX;
const NO_LETTER: u8 = u8::MAX;

/// Index of `{p, q}` (`p < q`) in lexicographic order of `(p, q)`.
#[inline]
pub fn pair_index(p: usize, q: usize, n: usize) -> usize {
    debug_assert!(p < q && q < n);
    p * n - p * (p + 1) / 2 + (q - p - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_at(index: usize, n: usize) -> (usize, usize) {
    let mut p = 0;
    let mut start = 0;
    loop {
        let row = n - p - 1;
        if index < start + row {
            return (p, p + 1 + index - start);
        }
        start += row;
        p += 1;
    }
}

#[inline]
fn ordered(p: usize, q: usize) -> (usize, usize) {
    if p < q {
        (p, q)
    } else {
        (q, p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTable {
    n: usize,
    dist: Vec<u32>,
    first: Vec<u8>,
    merge_state: Vec<u8>,
    pairs: Vec<(u8, u8)>,
}

impl PairTable {
    pub fn build(d: &Dfa) -> Self {
        let (n, q) = (d.n(), d.q());
        let pair_count = n * n.saturating_sub(1) / 2;
        let mut dist = vec![UNREACHABLE; pair_count];

        // preimage lists per letter, flattened: pre[a][t] = states s with s·a = t
        let mut preimages: Vec<Vec<Vec<u8>>> = vec![vec![Vec::new(); n]; q];
        for (a, pre) in preimages.iter_mut().enumerate() {
            for s in 0..n {
                pre[d.next(s, a)].push(s as u8);
            }
        }

        let mut queue = VecDeque::new();
        for pre in &preimages {
            for fibre in pre {
                for (x, &s) in fibre.iter().enumerate() {
                    for &t in &fibre[x + 1..] {
                        let id = pair_index(s as usize, t as usize, n);
                        if dist[id] == UNREACHABLE {
                            dist[id] = 1;
                            queue.push_back(id);
                        }
                    }
                }
            }
        }
        let mut pairs = vec![(0u8, 0u8); pair_count];
        for (id, slot) in pairs.iter_mut().enumerate() {
            let (p, q) = pair_at(id, n);
            *slot = (p as u8, q as u8);
        }
        let mut bfs_order = Vec::with_capacity(pair_count);
        while let Some(id) = queue.pop_front() {
            bfs_order.push(id);
            let (x, y) = pairs[id];
            let next = dist[id] + 1;
            for pre in &preimages {
                for &s in &pre[x as usize] {
                    for &t in &pre[y as usize] {
                        if s == t {
                            continue;
                        }
                        let (s, t) = ordered(s as usize, t as usize);
                        let pid = pair_index(s, t, n);
                        if dist[pid] == UNREACHABLE {
                            dist[pid] = next;
                            queue.push_back(pid);
                        }
                    }
                }
            }
        }

        // first letter: least letter stepping one closer to the diagonal
        let mut first = vec![NO_LETTER; pair_count];
        let mut merge_state = vec![0u8; pair_count];
        for &id in &bfs_order {
            let (p, r) = pairs[id];
            let (p, r) = (p as usize, r as usize);
            for a in 0..q {
                let (pa, ra) = (d.next(p, a), d.next(r, a));
                let hit = if dist[id] == 1 {
                    pa == ra
                } else {
                    pa != ra && {
                        let (x, y) = ordered(pa, ra);
                        dist[pair_index(x, y, n)] == dist[id] - 1
                    }
                };
                if hit {
                    first[id] = a as u8;
                    merge_state[id] = if pa == ra {
                        pa as u8
                    } else {
                        let (x, y) = ordered(pa, ra);
                        merge_state[pair_index(x, y, n)]
                    };
                    break;
                }
            }
        }
        PairTable {
            n,
            dist,
            first,
            merge_state,
            pairs,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pair_count(&self) -> usize {
        self.dist.len()
    }

    /// The pair stored at `index`.
    pub fn pair(&self, index: usize) -> (usize, usize) {
        let (p, q) = self.pairs[index];
        (p as usize, q as usize)
    }

    /// Length of the shortest merging word of `{p, q}`; `Some(0)` when
    /// `p == q`, `None` when the pair cannot be merged.
    pub fn distance(&self, p: usize, q: usize) -> Option<usize> {
        if p == q {
            return Some(0);
        }
        let (p, q) = ordered(p, q);
        match self.dist[pair_index(p, q, self.n)] {
            UNREACHABLE => None,
            d => Some(d as usize),
        }
    }

    #[inline]
    pub fn distance_at(&self, index: usize) -> u32 {
        self.dist[index]
    }

    pub fn first_letter(&self, p: usize, q: usize) -> Option<usize> {
        if p == q {
            return None;
        }
        let (p, q) = ordered(p, q);
        match self.first[pair_index(p, q, self.n)] {
            NO_LETTER => None,
            a => Some(a as usize),
        }
    }

    /// State both members reach at the end of the shortest merging word.
    pub fn merge_state(&self, p: usize, q: usize) -> Option<usize> {
        if p == q {
            return Some(p);
        }
        self.distance(p, q)?;
        let (p, q) = ordered(p, q);
        Some(self.merge_state[pair_index(p, q, self.n)] as usize)
    }

    /// True when every pair can be merged, i.e. the automaton synchronizes.
    pub fn all_finite(&self) -> bool {
        self.dist.iter().all(|&d| d != UNREACHABLE)
    }

    /// The shortest merging word of `{p, q}`, rebuilt from first letters.
    pub fn pair_word(&self, d: &Dfa, p: usize, q: usize) -> Result<Word> {
        let mut word = Word::new();
        for (_, _, a) in self.path(d, p, q)? {
            word.push(a);
        }
        Ok(word)
    }

    /// The pairs visited along the shortest merging word of `{p, q}`, each
    /// with the letter read from it.
    pub fn path(&self, d: &Dfa, p: usize, q: usize) -> Result<Vec<(usize, usize, usize)>> {
        let mut steps = Vec::new();
        let (mut x, mut y) = (p, q);
        while x != y {
            let a = self
                .first_letter(x, y)
                .ok_or(Error::PairNotMergeable { p, q })?;
            steps.push((x, y, a));
            (x, y) = ordered(d.next(x, a), d.next(y, a));
        }
        Ok(steps)
    }

    /// Mergeable pairs sorted by distance, ties by pair index. Counting sort,
    /// linear in the number of pairs.
    pub fn pairs_by_length(&self) -> Vec<(usize, usize)> {
        let max = self
            .dist
            .iter()
            .filter(|&&d| d != UNREACHABLE)
            .max()
            .copied()
            .unwrap_or(0) as usize;
        let mut counts = vec![0usize; max + 2];
        for &d in &self.dist {
            if d != UNREACHABLE {
                counts[d as usize + 1] += 1;
            }
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let total = counts[max + 1];
        let mut out = vec![(0, 0); total];
        for (id, &d) in self.dist.iter().enumerate() {
            if d != UNREACHABLE {
                out[counts[d as usize]] = self.pair(id);
                counts[d as usize] += 1;
            }
        }
        out
    }

    /// Least distance over pairs inside `set`, with the first pair attaining
    /// it in index order.
    pub fn closest_pair(&self, set: &StateSet) -> Option<(usize, usize, usize)> {
        let members: Vec<usize> = set.iter().collect();
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, &p) in members.iter().enumerate() {
            for &q in &members[i + 1..] {
                let d = self.dist[pair_index(p, q, self.n)];
                if d != UNREACHABLE && best.map_or(true, |(_, _, b)| (d as usize) < b) {
                    best = Some((p, q, d as usize));
                    if d == 1 {
                        return best;
                    }
                }
            }
        }
        best
    }
}

/// Statistics of a merging word `w` under iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MergeStats {
    /// Rank of `w^k` once the images stop shrinking.
    pub stabilized_rank: usize,
    /// Least `k` with `Γw^k = Γw^(k+1)`.
    pub stabilization: usize,
    /// Number of states sent by the idempotent power of `w` to the same
    /// point as the merge state `p·w`.
    pub preimage_count: usize,
}

/// Merge statistics of `w` for the pair `{p, q}`; `w` must merge the pair.
pub fn merge_stats(d: &Dfa, p: usize, q: usize, w: &Word) -> Result<MergeStats> {
    d.check_word(w)?;
    merge_stats_of(&d.mapping(w), p, q)
}

/// [`merge_stats`] for an already computed mapping.
pub fn merge_stats_of(map: &Mapping, p: usize, q: usize) -> Result<MergeStats> {
    if map.apply(p) != map.apply(q) {
        return Err(Error::WordDoesNotMerge { p, q });
    }
    let cycles = map.cycles();
    let target = cycles.settle(map.apply(p));
    let preimage_count = (0..map.n()).filter(|&s| cycles.settle(s) == target).count();
    Ok(MergeStats {
        stabilized_rank: cycles.cyclic_points(),
        stabilization: cycles.max_tail(),
        preimage_count,
    })
}

/// For a collision `r·α = t·α` with `r ≠ t`, the word read around a shortest
/// cycle through the edge `r → r·α`: it fixes `r` and, since it starts with
/// `α`, has rank below `n`. `None` when `r·α` cannot reach `r` or no other
/// state collides with `r` under `α`.
pub fn collision_cycle_word(d: &Dfa, r: usize, alpha: usize) -> Option<Word> {
    let n = d.n();
    let ra = d.next(r, alpha);
    if !(0..n).any(|t| t != r && d.next(t, alpha) == ra) {
        return None;
    }
    // BFS from r·α back to r
    let mut prev: Vec<Option<(usize, u8)>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[ra] = true;
    let mut queue = VecDeque::from([ra]);
    while let Some(s) = queue.pop_front() {
        if s == r {
            break;
        }
        for a in 0..d.q() {
            let t = d.next(s, a);
            if !seen[t] {
                seen[t] = true;
                prev[t] = Some((s, a as u8));
                queue.push_back(t);
            }
        }
    }
    if !seen[r] {
        return None;
    }
    let mut tail = Vec::new();
    let mut cur = r;
    while cur != ra {
        let (s, a) = prev[cur].expect("bfs parent");
        tail.push(a);
        cur = s;
    }
    tail.reverse();
    let mut word = Word::new();
    word.push(alpha);
    word.extend_from_slice(&tail);
    Some(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::cerny;

    #[test]
    fn pair_index_round_trip() {
        for n in 2..9 {
            let mut expect = 0;
            for p in 0..n {
                for q in p + 1..n {
                    assert_eq!(pair_index(p, q, n), expect);
                    assert_eq!(pair_at(expect, n), (p, q));
                    expect += 1;
                }
            }
        }
    }

    #[test]
    fn cerny3_table() {
        let c = cerny(3).unwrap();
        let t = PairTable::build(&c);
        assert_eq!(t.distance(0, 1), Some(1));
        assert_eq!(t.first_letter(0, 1), Some(1));
        assert_eq!(t.distance(0, 2), Some(2));
        assert_eq!(t.distance(1, 2), Some(3));
        assert_eq!(t.pair_word(&c, 0, 1).unwrap().to_string(), "b");
        assert_eq!(t.pair_word(&c, 0, 2).unwrap().to_string(), "ab");
        assert_eq!(t.pair_word(&c, 2, 1).unwrap().to_string(), "aab");
        assert_eq!(t.pair_word(&c, 1, 1).unwrap(), Word::new());
        assert_eq!(t.pairs_by_length(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(t.merge_state(0, 1), Some(1));
    }

    #[test]
    fn permutation_automaton_has_no_finite_pairs() {
        let d = Dfa::from_letter_maps(&[[1usize, 2, 0], [0, 2, 1]]).unwrap();
        let t = PairTable::build(&d);
        assert!(!t.all_finite());
        assert!(t.pairs_by_length().is_empty());
        assert_eq!(
            t.pair_word(&d, 0, 1),
            Err(Error::PairNotMergeable { p: 0, q: 1 })
        );
    }

    #[test]
    fn equal_distances_keep_index_order() {
        // every letter is constant: all pairs at distance 1
        let d = Dfa::from_letter_maps(&[[0usize, 0, 0, 0]]).unwrap();
        let t = PairTable::build(&d);
        let order = t.pairs_by_length();
        let by_index: Vec<_> = (0..t.pair_count()).map(|i| t.pair(i)).collect();
        assert_eq!(order, by_index);
    }

    #[test]
    fn cerny_merge_stats() {
        let c = cerny(3).unwrap();
        let stats = merge_stats(&c, 0, 1, &"b".parse().unwrap()).unwrap();
        assert_eq!(stats.stabilized_rank, 2);
        assert_eq!(stats.preimage_count, 2);
        assert_eq!(stats.stabilization, 1);
        assert_eq!(
            merge_stats(&c, 1, 2, &"b".parse().unwrap()),
            Err(Error::WordDoesNotMerge { p: 1, q: 2 })
        );
        // a^(n-1) b funnels everything into state 1
        let c4 = cerny(4).unwrap();
        let stats = merge_stats(&c4, 1, 2, &"aaab".parse().unwrap()).unwrap();
        assert_eq!(stats.stabilized_rank, 1);
        assert_eq!(stats.preimage_count, 4);
    }

    #[test]
    fn collision_cycle_on_cerny() {
        let c = cerny(5).unwrap();
        // 0·b = 1·b; the cycle through 0 -b-> 1 closes with aaaa
        let s = collision_cycle_word(&c, 0, 1).unwrap();
        assert_eq!(s.to_string(), "baaaa");
        assert_eq!(c.apply_word(0, &s), 0);
        assert!(c.rank(&s) < 5);
        assert_eq!(collision_cycle_word(&c, 2, 0), None);
    }
}
