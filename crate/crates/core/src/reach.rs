//! Strongly connected components of the transition graph and the
//! synchronizability decision.
//!
//! The decision runs in two stages. Components are found in linear time; if
//! there are several sink components no word can merge them, and a
//! single-state sink decides the question at once. Only when the sink
//! component has two or more states is the pair graph of that component
//! built, and every pair must be an ancestor of the merged diagonal.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Dfa, Error, Result, StateSet, Word};

/// Strongly connected components of the transition graph (edges
/// `s → s·a` for every letter).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    /// Component index of each state.
    pub component_of: Vec<usize>,
    /// Members of each component, increasing. Components are numbered in the
    /// order Tarjan's algorithm completes them, so sinks come before their
    /// ancestors.
    pub components: Vec<Vec<usize>>,
    /// Edges of the condensation, deduplicated and sorted.
    pub edges: Vec<(usize, usize)>,
    /// True for components with no outgoing condensation edge.
    pub is_sink: Vec<bool>,
}

impl SccDecomposition {
    pub fn sinks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.components.len()).filter(|&c| self.is_sink[c])
    }

    pub fn sink_count(&self) -> usize {
        self.is_sink.iter().filter(|&&s| s).count()
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.components.len() == 1
    }
}

/// Tarjan's algorithm, iterative so deep graphs do not overflow the stack.
pub fn scc(d: &Dfa) -> SccDecomposition {
    let (n, q) = (d.n(), d.q());
    const NONE: usize = usize::MAX;
    let mut index = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut component_of = vec![NONE; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0;
    // (state, next letter to explore)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != NONE {
            continue;
        }
        call.push((root, 0));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(top) = call.last_mut() {
            let v = top.0;
            if top.1 < q {
                let w = d.next(v, top.1);
                top.1 += 1;
                if index[w] == NONE {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let id = components.len();
                let mut members = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    component_of[w] = id;
                    members.push(w);
                    if w == v {
                        break;
                    }
                }
                members.sort_unstable();
                components.push(members);
            }
        }
    }

    let mut edges = Vec::new();
    for s in 0..n {
        for a in 0..q {
            let (from, to) = (component_of[s], component_of[d.next(s, a)]);
            if from != to {
                edges.push((from, to));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut is_sink = vec![true; components.len()];
    for &(from, _) in &edges {
        is_sink[from] = false;
    }
    SccDecomposition {
        component_of,
        components,
        edges,
        is_sink,
    }
}

/// Whether some word sends every state to one state.
pub fn is_synchronizing(d: &Dfa) -> bool {
    if d.n() == 1 {
        return true;
    }
    let dec = scc(d);
    let mut sinks = dec.sinks();
    let sink = match (sinks.next(), sinks.next()) {
        (Some(c), None) => c,
        _ => return false,
    };
    let members = &dec.components[sink];
    if members.len() == 1 {
        return true;
    }
    sink_pairs_merge(d, members)
}

/// Index of the unordered pair `{i, j}`, `i < j`, among `k` local states.
#[inline]
fn local_pair(i: usize, j: usize, k: usize) -> usize {
    i * k - i * (i + 1) / 2 + (j - i - 1)
}

/// Pair-graph stage: within the closed set `members`, does every pair reach
/// the diagonal? Ancestors of the diagonal are marked through preimages.
fn sink_pairs_merge(d: &Dfa, members: &[usize]) -> bool {
    let k = members.len();
    let mut local = vec![usize::MAX; d.n()];
    for (i, &s) in members.iter().enumerate() {
        local[s] = i;
    }
    // preimages[a][t] = local states sent to local state t by letter a
    let mut preimages: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); k]; d.q()];
    for (a, pre) in preimages.iter_mut().enumerate() {
        for (i, &s) in members.iter().enumerate() {
            pre[local[d.next(s, a)]].push(i);
        }
    }
    let pairs = k * (k - 1) / 2;
    let mut marked = vec![false; pairs];
    let mut count = 0;
    let mut queue = VecDeque::new();
    let mut mark = |i: usize, j: usize, queue: &mut VecDeque<(usize, usize)>| {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        let id = local_pair(i, j, k);
        if !marked[id] {
            marked[id] = true;
            count += 1;
            queue.push_back((i, j));
        }
    };
    for pre in &preimages {
        for fibre in pre {
            for (x, &i) in fibre.iter().enumerate() {
                for &j in &fibre[x + 1..] {
                    mark(i, j, &mut queue);
                }
            }
        }
    }
    while let Some((i, j)) = queue.pop_front() {
        for pre in &preimages {
            for &s in &pre[i] {
                for &t in &pre[j] {
                    if s != t {
                        mark(s, t, &mut queue);
                    }
                }
            }
        }
    }
    count == pairs
}

/// A word driving every state into the unique sink component, built by
/// repeatedly sending the smallest state still outside along a shortest path.
///
/// With `k` states outside the sink every path has length at most `k`, so the
/// word has length at most `k²`.
pub fn word_into_sink_scc(d: &Dfa) -> Result<Word> {
    let dec = scc(d);
    let sink_count = dec.sink_count();
    if sink_count != 1 {
        return Err(Error::MultipleSinkComponents(sink_count));
    }
    let sink = dec.sinks().next().expect("one sink");
    let inside: StateSet = dec.components[sink].iter().copied().collect();
    let (n, q) = (d.n(), d.q());

    // shortest letter towards the sink from every state, by reverse BFS
    let mut step = vec![u8::MAX; n];
    let mut dist = vec![usize::MAX; n];
    let mut queue: VecDeque<usize> = inside.iter().collect();
    for s in inside.iter() {
        dist[s] = 0;
    }
    let mut reverse: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
    for s in 0..n {
        for a in 0..q {
            reverse[d.next(s, a)].push((s, a as u8));
        }
    }
    while let Some(t) = queue.pop_front() {
        for &(s, a) in &reverse[t] {
            if dist[s] == usize::MAX {
                dist[s] = dist[t] + 1;
                step[s] = a;
                queue.push_back(s);
            }
        }
    }

    let mut word = Word::new();
    let mut image = StateSet::full(n);
    loop {
        let Some(s) = image.iter().find(|s| !inside.contains(*s)) else {
            break;
        };
        let mut path = Word::new();
        let mut cur = s;
        while !inside.contains(cur) {
            path.push(step[cur] as usize);
            cur = d.next(cur, step[cur] as usize);
        }
        image = d.image_of_set(&image, &path);
        word.extend(&path);
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::cerny;

    fn dfa(maps: &[&[usize]]) -> Dfa {
        Dfa::from_letter_maps(maps).unwrap()
    }

    #[test]
    fn cerny_is_one_component() {
        let dec = scc(&cerny(5).unwrap());
        assert!(dec.is_strongly_connected());
        assert_eq!(dec.components[0], vec![0, 1, 2, 3, 4]);
        assert!(dec.edges.is_empty());
    }

    #[test]
    fn constant_automaton_has_sink_zero() {
        let d = dfa(&[&[0, 0], &[0, 0]]);
        let dec = scc(&d);
        assert_eq!(dec.components.len(), 2);
        let sinks: Vec<_> = dec.sinks().map(|c| dec.components[c].clone()).collect();
        assert_eq!(sinks, vec![vec![0]]);
        assert!(is_synchronizing(&d));
    }

    #[test]
    fn two_disjoint_swaps_are_two_sinks() {
        let d = dfa(&[&[1, 0, 3, 2], &[0, 1, 2, 3]]);
        let dec = scc(&d);
        let mut comps = dec.components.clone();
        comps.sort();
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(dec.sink_count(), 2);
        assert!(!is_synchronizing(&d));
    }

    #[test]
    fn synchronizability_basics() {
        for n in 2..12 {
            assert!(is_synchronizing(&cerny(n).unwrap()));
        }
        // letters act as permutations
        assert!(!is_synchronizing(&dfa(&[&[1, 2, 0], &[1, 0, 2]])));
        assert!(is_synchronizing(&dfa(&[&[0]])));
        // C3 restricted to one letter
        let c3 = cerny(3).unwrap();
        assert!(!is_synchronizing(&c3.restrict_alphabet(&[0]).unwrap()));
        assert!(!is_synchronizing(&c3.restrict_alphabet(&[1]).unwrap()));
    }

    #[test]
    fn sink_word_is_empty_when_strongly_connected() {
        assert_eq!(word_into_sink_scc(&cerny(4).unwrap()).unwrap(), Word::new());
        // 0 -b-> 1 -b-> 0 makes this automaton strongly connected
        assert_eq!(word_into_sink_scc(&dfa(&[&[0, 0], &[1, 0]])).unwrap(), Word::new());
    }

    #[test]
    fn sink_word_single_outside_state() {
        // sink {0}; state 1 reaches it by `a`
        let d = dfa(&[&[0, 0], &[0, 1]]);
        let w = word_into_sink_scc(&d).unwrap();
        assert_eq!(w.to_string(), "a");
    }

    #[test]
    fn sink_word_rejects_two_sinks() {
        let d = dfa(&[&[0, 1, 0]]);
        assert_eq!(word_into_sink_scc(&d), Err(Error::MultipleSinkComponents(2)));
    }
}
