//! Alignment selection search.
//!
//! Both strategies optimize the same total order over one-to-one selections
//! of candidate pairs: more pairs, then fewer chunks, then lexicographically
//! smallest ref-index sequence (pairs in hypothesis order), then smallest
//! hyp-index sequence. The branch-and-bound is exhaustive; the beam keeps the
//! best `width` partial selections per hypothesis position.

use std::cmp::Ordering;

use super::MatchPair;

/// Compare two complete selections; `Less` means `a` is preferred.
fn selection_order(a: &[MatchPair], a_chunks: usize, b: &[MatchPair], b_chunks: usize) -> Ordering {
    b.len()
        .cmp(&a.len())
        .then(a_chunks.cmp(&b_chunks))
        .then_with(|| {
            a.iter()
                .map(|p| p.ref_index)
                .cmp(b.iter().map(|p| p.ref_index))
        })
        .then_with(|| {
            a.iter()
                .map(|p| p.hyp_index)
                .cmp(b.iter().map(|p| p.hyp_index))
        })
}

/// Does `pair` extend the chunk ending at `last`?
fn contiguous(last: Option<&MatchPair>, pair: &MatchPair) -> bool {
    last.is_some_and(|p| pair.hyp_index == p.hyp_index + 1 && pair.ref_index == p.ref_index + 1)
}

/// Candidates grouped by hypothesis position, each group sorted by ref index.
/// `word_matches` already emits candidates in (hyp, ref) order.
fn group_by_hyp(candidates: &[MatchPair]) -> Vec<&[MatchPair]> {
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=candidates.len() {
        if i == candidates.len() || candidates[i].hyp_index != candidates[start].hyp_index {
            groups.push(&candidates[start..i]);
            start = i;
        }
    }
    groups
}

/// Exhaustive branch-and-bound over hypothesis positions.
pub(super) fn exact_search(candidates: &[MatchPair]) -> Vec<MatchPair> {
    // Compact the candidate ref indices into bit positions (at most 30 distinct).
    let mut ref_ids: Vec<usize> = candidates.iter().map(|p| p.ref_index).collect();
    ref_ids.sort_unstable();
    ref_ids.dedup();
    let bit_of = |ref_index: usize| 1u64 << ref_ids.binary_search(&ref_index).unwrap();

    let groups = group_by_hyp(candidates);

    struct Dfs<'a> {
        groups: Vec<&'a [MatchPair]>,
        best: Vec<MatchPair>,
        best_chunks: usize,
        current: Vec<MatchPair>,
        current_chunks: usize,
    }

    impl Dfs<'_> {
        fn run(&mut self, pos: usize, used: u64, bit_of: &impl Fn(usize) -> u64) {
            let remaining = self.groups.len() - pos;
            if self.current.len() + remaining < self.best.len() {
                return; // cannot reach the best pair count
            }
            if pos == self.groups.len() {
                if selection_order(
                    &self.current,
                    self.current_chunks,
                    &self.best,
                    self.best_chunks,
                ) == Ordering::Less
                {
                    self.best = self.current.clone();
                    self.best_chunks = self.current_chunks;
                }
                return;
            }
            for pair in self.groups[pos] {
                let bit = bit_of(pair.ref_index);
                if used & bit != 0 {
                    continue;
                }
                let extends = contiguous(self.current.last(), pair);
                self.current.push(*pair);
                if !extends {
                    self.current_chunks += 1;
                }
                self.run(pos + 1, used | bit, bit_of);
                self.current.pop();
                if !extends {
                    self.current_chunks -= 1;
                }
            }
            self.run(pos + 1, used, bit_of); // leave this hypothesis word unmatched
        }
    }

    let mut dfs = Dfs {
        groups,
        best: Vec::new(),
        best_chunks: 0,
        current: Vec::new(),
        current_chunks: 0,
    };
    dfs.run(0, 0, &bit_of);
    dfs.best
}

/// Beam state: chosen pairs (in hypothesis order) plus a ref-usage bitset.
#[derive(Clone)]
struct BeamState {
    used: Vec<u64>,
    pairs: Vec<MatchPair>,
    chunks: usize,
}

impl BeamState {
    fn uses(&self, ref_index: usize) -> bool {
        self.used[ref_index / 64] & (1 << (ref_index % 64)) != 0
    }

    fn extended(&self, pair: MatchPair) -> BeamState {
        let mut next = self.clone();
        next.used[pair.ref_index / 64] |= 1 << (pair.ref_index % 64);
        if !contiguous(next.pairs.last(), &pair) {
            next.chunks += 1;
        }
        next.pairs.push(pair);
        next
    }
}

/// Left-to-right beam search over hypothesis positions.
pub(super) fn beam_search(candidates: &[MatchPair], width: usize) -> Vec<MatchPair> {
    let max_ref = candidates.iter().map(|p| p.ref_index).max().unwrap_or(0);
    let words = max_ref / 64 + 1;
    let mut states = vec![BeamState {
        used: vec![0; words],
        pairs: Vec::new(),
        chunks: 0,
    }];
    for group in group_by_hyp(candidates) {
        let mut next: Vec<BeamState> = Vec::with_capacity(states.len() * (group.len() + 1));
        for state in &states {
            next.push(state.clone());
            for pair in group {
                if !state.uses(pair.ref_index) {
                    next.push(state.extended(*pair));
                }
            }
        }
        next.sort_by(|a, b| selection_order(&a.pairs, a.chunks, &b.pairs, b.chunks));
        next.truncate(width);
        states = next;
    }
    states.into_iter().next().map_or(Vec::new(), |s| s.pairs)
}
