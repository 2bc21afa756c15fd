//! One-to-one hypothesis/reference word alignment.
//!
//! Matching runs in staged passes — exact, stem, synonym, paraphrase — and
//! the aligner then selects, among all one-to-one pairings of the candidate
//! matches, an alignment that first maximizes the number of matched words and
//! then minimizes the number of chunks (maximal runs that are contiguous and
//! identically ordered in both segments). Remaining ties are broken
//! deterministically: smallest ref-index sequence (pairs sorted by hypothesis
//! index), then smallest hyp-index sequence.
//!
//! Up to [`EXACT_SEARCH_MAX_CANDIDATES`] candidate pairs the search is an
//! exhaustive branch-and-bound; longer segments fall back to a beam search of
//! width [`BEAM_WIDTH`] over hypothesis positions, left to right.

pub mod resources;
mod search;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::text::Segment;

pub use resources::{ParaphraseTable, StemRules, SynonymLexicon};

/// Candidate sets up to this size are aligned by exhaustive branch-and-bound.
pub const EXACT_SEARCH_MAX_CANDIDATES: usize = 30;

/// Beam width used beyond the exhaustive-search bound.
pub const BEAM_WIDTH: usize = 40;

/// The kind of matcher that produced a pair, in priority order: when several
/// stages match the same pair the pair is tagged with the smallest kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatcherKind {
    Exact,
    Stem,
    Synonym,
    Paraphrase,
}

impl MatcherKind {
    pub fn name(self) -> &'static str {
        match self {
            MatcherKind::Exact => "exact",
            MatcherKind::Stem => "stem",
            MatcherKind::Synonym => "synonym",
            MatcherKind::Paraphrase => "paraphrase",
        }
    }
}

impl fmt::Display for MatcherKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatcherKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(MatcherKind::Exact),
            "stem" => Ok(MatcherKind::Stem),
            "synonym" => Ok(MatcherKind::Synonym),
            "paraphrase" => Ok(MatcherKind::Paraphrase),
            other => Err(Error::Config(format!(
                "unknown matcher stage `{other}` (expected exact, stem, synonym or paraphrase)"
            ))),
        }
    }
}

/// A matcher stage together with the resource it needs. Exact matching needs
/// none; the other stages carry their loaded resource, shared read-only.
#[derive(Debug, Clone)]
pub enum MatcherStage {
    Exact,
    Stem(Arc<StemRules>),
    Synonym(Arc<SynonymLexicon>),
    Paraphrase(Arc<ParaphraseTable>),
}

impl MatcherStage {
    pub fn kind(&self) -> MatcherKind {
        match self {
            MatcherStage::Exact => MatcherKind::Exact,
            MatcherStage::Stem(_) => MatcherKind::Stem,
            MatcherStage::Synonym(_) => MatcherKind::Synonym,
            MatcherStage::Paraphrase(_) => MatcherKind::Paraphrase,
        }
    }

    fn matches(&self, hyp_norm: &str, ref_norm: &str) -> bool {
        match self {
            MatcherStage::Exact => hyp_norm == ref_norm,
            MatcherStage::Stem(rules) => rules.stem(hyp_norm) == rules.stem(ref_norm),
            MatcherStage::Synonym(lexicon) => lexicon.shares_class(hyp_norm, ref_norm),
            MatcherStage::Paraphrase(table) => table.are_paraphrases(hyp_norm, ref_norm),
        }
    }
}

/// One matched word pair: 0-based token positions plus the stage that matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MatchPair {
    pub hyp_index: usize,
    pub ref_index: usize,
    pub stage: MatcherKind,
}

/// A one-to-one alignment; pairs are stored sorted by hypothesis index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    pairs: Vec<MatchPair>,
    hyp_len: usize,
    ref_len: usize,
}

impl Alignment {
    /// Build an alignment from arbitrary pairs, sorting by hypothesis index
    /// and rejecting out-of-bounds or duplicated indices.
    pub fn new(mut pairs: Vec<MatchPair>, hyp_len: usize, ref_len: usize) -> Result<Self> {
        pairs.sort_by_key(|p| p.hyp_index);
        for window in pairs.windows(2) {
            if window[0].hyp_index == window[1].hyp_index {
                return Err(Error::Config(format!(
                    "alignment is not one-to-one: hypothesis index {} appears twice",
                    window[0].hyp_index
                )));
            }
        }
        let mut refs: Vec<usize> = pairs.iter().map(|p| p.ref_index).collect();
        refs.sort_unstable();
        for window in refs.windows(2) {
            if window[0] == window[1] {
                return Err(Error::Config(format!(
                    "alignment is not one-to-one: reference index {} appears twice",
                    window[0]
                )));
            }
        }
        if let Some(p) = pairs
            .iter()
            .find(|p| p.hyp_index >= hyp_len || p.ref_index >= ref_len)
        {
            return Err(Error::Config(format!(
                "alignment pair ({}, {}) is out of bounds for lengths ({hyp_len}, {ref_len})",
                p.hyp_index, p.ref_index
            )));
        }
        Ok(Alignment {
            pairs,
            hyp_len,
            ref_len,
        })
    }

    fn from_sorted_unchecked(pairs: Vec<MatchPair>, hyp_len: usize, ref_len: usize) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].hyp_index < w[1].hyp_index));
        Alignment {
            pairs,
            hyp_len,
            ref_len,
        }
    }

    pub fn pairs(&self) -> &[MatchPair] {
        &self.pairs
    }

    /// Number of matched pairs.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn hyp_len(&self) -> usize {
        self.hyp_len
    }

    pub fn ref_len(&self) -> usize {
        self.ref_len
    }
}

/// Deduplicate stages and order them by matcher priority.
fn normalized_stages(stages: &[MatcherStage]) -> Result<Vec<&MatcherStage>> {
    if stages.is_empty() {
        return Err(Error::Config(
            "at least one matcher stage is required".to_string(),
        ));
    }
    let mut ordered: Vec<&MatcherStage> = stages.iter().collect();
    ordered.sort_by_key(|s| s.kind());
    ordered.dedup_by_key(|s| s.kind());
    Ok(ordered)
}

/// Every candidate pair `(i, j)` some stage matches, tagged with the
/// highest-priority matching stage. Sorted by `(hyp_index, ref_index)`.
pub fn word_matches(
    hyp: &Segment,
    reference: &Segment,
    stages: &[MatcherStage],
) -> Result<Vec<MatchPair>> {
    let stages = normalized_stages(stages)?;
    let hyp_norms: Vec<&str> = hyp.norms().collect();
    let ref_norms: Vec<&str> = reference.norms().collect();
    let mut pairs = Vec::new();
    for (i, hyp_norm) in hyp_norms.iter().enumerate() {
        for (j, ref_norm) in ref_norms.iter().enumerate() {
            if let Some(stage) = stages.iter().find(|s| s.matches(hyp_norm, ref_norm)) {
                pairs.push(MatchPair {
                    hyp_index: i,
                    ref_index: j,
                    stage: stage.kind(),
                });
            }
        }
    }
    Ok(pairs)
}

/// Align a hypothesis against its reference.
///
/// Among one-to-one selections of the candidate matches this maximizes pair
/// count, then minimizes chunk count, then applies the deterministic
/// tiebreak. Exhaustive up to [`EXACT_SEARCH_MAX_CANDIDATES`] candidates,
/// beam search beyond.
pub fn align(hyp: &Segment, reference: &Segment, stages: &[MatcherStage]) -> Result<Alignment> {
    let candidates = word_matches(hyp, reference, stages)?;
    let pairs = if candidates.len() <= EXACT_SEARCH_MAX_CANDIDATES {
        search::exact_search(&candidates)
    } else {
        search::beam_search(&candidates, BEAM_WIDTH)
    };
    Ok(Alignment::from_sorted_unchecked(
        pairs,
        hyp.len(),
        reference.len(),
    ))
}

/// Exhaustive test oracle: enumerates every one-to-one selection of the
/// candidate pairs and returns the first under the alignment objective.
///
/// Bounded to hypotheses of at most 10 tokens and 20 candidate pairs; larger
/// inputs yield an oracle-limit error.
pub fn brute_force_align(
    hyp: &Segment,
    reference: &Segment,
    stages: &[MatcherStage],
) -> Result<Alignment> {
    if hyp.len() > 10 {
        return Err(Error::OracleLimit(format!(
            "hypothesis has {} tokens (max 10)",
            hyp.len()
        )));
    }
    let candidates = word_matches(hyp, reference, stages)?;
    if candidates.len() > 20 {
        return Err(Error::OracleLimit(format!(
            "{} candidate pairs (max 20)",
            candidates.len()
        )));
    }
    let pairs = enumerate_best(&candidates);
    Ok(Alignment::from_sorted_unchecked(
        pairs,
        hyp.len(),
        reference.len(),
    ))
}

/// Plain include/skip enumeration, independent of the optimized search path.
fn enumerate_best(candidates: &[MatchPair]) -> Vec<MatchPair> {
    fn chunk_count(pairs: &[MatchPair]) -> usize {
        let mut chunks = 0;
        let mut last: Option<&MatchPair> = None;
        for pair in pairs {
            let contiguous = last.is_some_and(|p| {
                pair.hyp_index == p.hyp_index + 1 && pair.ref_index == p.ref_index + 1
            });
            if !contiguous {
                chunks += 1;
            }
            last = Some(pair);
        }
        chunks
    }

    /// True when `a` beats `b` under (max pairs, min chunks, ref seq, hyp seq).
    fn beats(a: &[MatchPair], b: &[MatchPair]) -> bool {
        if a.len() != b.len() {
            return a.len() > b.len();
        }
        let (ca, cb) = (chunk_count(a), chunk_count(b));
        if ca != cb {
            return ca < cb;
        }
        for (pa, pb) in a.iter().zip(b.iter()) {
            if pa.ref_index != pb.ref_index {
                return pa.ref_index < pb.ref_index;
            }
        }
        for (pa, pb) in a.iter().zip(b.iter()) {
            if pa.hyp_index != pb.hyp_index {
                return pa.hyp_index < pb.hyp_index;
            }
        }
        false
    }

    fn recurse(
        idx: usize,
        candidates: &[MatchPair],
        chosen: &mut Vec<MatchPair>,
        used_hyp: &mut Vec<usize>,
        used_ref: &mut Vec<usize>,
        best: &mut Vec<MatchPair>,
    ) {
        if idx == candidates.len() {
            if beats(chosen, best) {
                *best = chosen.clone();
            }
            return;
        }
        let pair = candidates[idx];
        if !used_hyp.contains(&pair.hyp_index) && !used_ref.contains(&pair.ref_index) {
            chosen.push(pair);
            used_hyp.push(pair.hyp_index);
            used_ref.push(pair.ref_index);
            recurse(idx + 1, candidates, chosen, used_hyp, used_ref, best);
            chosen.pop();
            used_hyp.pop();
            used_ref.pop();
        }
        recurse(idx + 1, candidates, chosen, used_hyp, used_ref, best);
    }

    let mut best = Vec::new();
    recurse(
        0,
        candidates,
        &mut Vec::new(),
        &mut Vec::new(),
        &mut Vec::new(),
        &mut best,
    );
    best
}
