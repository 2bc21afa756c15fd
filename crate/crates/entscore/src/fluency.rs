//! Chunk extraction and the entropy-based fluency score.
//!
//! Matched words that are contiguous and identically ordered in both
//! hypothesis and reference form a chunk. The fluency score treats the chunk
//! lengths as a distribution: with chunk lengths `l_1..l_c` summing to `L`,
//!
//! ```text
//! H = -sum_i (l_i / L) * log10(l_i / L)
//! ```
//!
//! Few long chunks give low entropy (fluent); many scattered single-word
//! matches give high entropy. The score itself is `alpha^(-H * LP)` with an
//! optional length penalty `LP = beta^|l_h / l_r - 1|`, so it lives in
//! `(0, 1]` and equals 1 exactly when the matches form at most one chunk.
//!
//! The logarithm base is 10 throughout.

use serde::Serialize;

use crate::align::Alignment;
use crate::error::{Error, Result};

/// A maximal run of matched words, contiguous and identically ordered in both
/// segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Chunk {
    pub hyp_start: usize,
    pub ref_start: usize,
    pub len: usize,
}

/// The ordered chunks of an alignment plus their entropy.
#[derive(Debug, Clone, PartialEq)]
pub struct ChunkProfile {
    chunks: Vec<Chunk>,
    total_matched: usize,
    entropy: f64,
}

impl ChunkProfile {
    /// Build a synthetic profile from chunk lengths alone (chunks are laid
    /// out with a one-token gap). Lengths must be at least 1.
    pub fn from_lengths(lengths: &[usize]) -> Self {
        assert!(
            lengths.iter().all(|&l| l >= 1),
            "chunk lengths must be >= 1"
        );
        let mut chunks = Vec::with_capacity(lengths.len());
        let mut pos = 0;
        for &len in lengths {
            chunks.push(Chunk {
                hyp_start: pos,
                ref_start: pos,
                len,
            });
            pos += len + 1;
        }
        let total_matched = lengths.iter().sum();
        let entropy = chunk_entropy(lengths, total_matched);
        ChunkProfile {
            chunks,
            total_matched,
            entropy,
        }
    }

    pub fn chunks(&self) -> &[Chunk] {
        &self.chunks
    }

    pub fn chunk_count(&self) -> usize {
        self.chunks.len()
    }

    pub fn chunk_lengths(&self) -> Vec<usize> {
        self.chunks.iter().map(|c| c.len).collect()
    }

    /// Total number of matched words (the sum of chunk lengths).
    pub fn total_matched(&self) -> usize {
        self.total_matched
    }

    /// Chunk entropy, base-10, with `H = 0` for zero or one chunk.
    pub fn entropy(&self) -> f64 {
        self.entropy
    }
}

/// `-sum p log10 p` over `p = l / total`, with `0 log 0 := 0` and an empty
/// distribution scoring 0.
fn chunk_entropy(lengths: &[usize], total: usize) -> f64 {
    if total == 0 {
        return 0.0;
    }
    -lengths
        .iter()
        .map(|&l| {
            if l == 0 {
                0.0
            } else {
                let p = l as f64 / total as f64;
                p * p.log10()
            }
        })
        .sum::<f64>()
}

/// Group an alignment's pairs into chunks and compute the profile.
///
/// Pairs `(i, j)` and `(i', j')` adjacent in hypothesis order merge into one
/// chunk exactly when `i' == i + 1` and `j' == j + 1`. An empty alignment
/// yields an empty profile with entropy 0.
pub fn extract_chunks(alignment: &Alignment) -> ChunkProfile {
    let mut chunks: Vec<Chunk> = Vec::new();
    for pair in alignment.pairs() {
        match chunks.last_mut() {
            Some(chunk)
                if pair.hyp_index == chunk.hyp_start + chunk.len
                    && pair.ref_index == chunk.ref_start + chunk.len =>
            {
                chunk.len += 1;
            }
            _ => chunks.push(Chunk {
                hyp_start: pair.hyp_index,
                ref_start: pair.ref_index,
                len: 1,
            }),
        }
    }
    let lengths: Vec<usize> = chunks.iter().map(|c| c.len).collect();
    let total_matched = alignment.len();
    debug_assert_eq!(lengths.iter().sum::<usize>(), total_matched);
    let entropy = chunk_entropy(&lengths, total_matched);
    ChunkProfile {
        chunks,
        total_matched,
        entropy,
    }
}

/// Parameters of the fluency score.
///
/// `alpha` is the base of the score exponential, in `(1, 1.5]`; `beta` is the
/// base of the length penalty, in `(1, 2)`. The length penalty is switched
/// off when the score is combined with a metric that already penalizes
/// length (BLEU).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntParams {
    pub alpha: f64,
    pub beta: f64,
    pub apply_length_penalty: bool,
}

impl EntParams {
    pub fn new(alpha: f64, beta: f64, apply_length_penalty: bool) -> Result<Self> {
        if !(alpha > 1.0 && alpha <= 1.5) {
            return Err(Error::Config(format!(
                "alpha must lie in (1, 1.5], got {alpha}"
            )));
        }
        if !(beta > 1.0 && beta < 2.0) {
            return Err(Error::Config(format!(
                "beta must lie in (1, 2), got {beta}"
            )));
        }
        Ok(EntParams {
            alpha,
            beta,
            apply_length_penalty,
        })
    }

    /// Defaults for the BLEU combination: `alpha = 1.05`, no length penalty.
    pub fn for_bleu_combination() -> Self {
        EntParams {
            alpha: 1.05,
            beta: 1.12,
            apply_length_penalty: false,
        }
    }

    /// Defaults for the METEOR combination and the standalone score:
    /// `alpha = 1.5`, `beta = 1.12`, length penalty applied.
    pub fn for_meteor_combination() -> Self {
        EntParams {
            alpha: 1.5,
            beta: 1.12,
            apply_length_penalty: true,
        }
    }
}

impl Default for EntParams {
    fn default() -> Self {
        EntParams::for_meteor_combination()
    }
}

/// Length penalty `beta^|l_h / l_r - 1|`; always at least 1, exactly 1 when
/// the lengths are equal.
pub fn length_penalty(hyp_len: usize, ref_len: usize, beta: f64) -> Result<f64> {
    if ref_len == 0 {
        return Err(Error::DegenerateReference);
    }
    if beta <= 1.0 {
        return Err(Error::Config(format!("beta must exceed 1, got {beta}")));
    }
    let ratio = hyp_len as f64 / ref_len as f64;
    Ok(beta.powf((ratio - 1.0).abs()))
}

/// The fluency score `alpha^(-H * LP)`.
///
/// `LP` is 1 when the length penalty is disabled (the reference length is
/// then not inspected). The result lies in `(0, 1]` and equals 1 exactly when
/// `H == 0`; an exponent extreme enough to underflow is clamped to the
/// smallest positive float so the score stays positive.
pub fn ent_score(
    profile: &ChunkProfile,
    hyp_len: usize,
    ref_len: usize,
    params: &EntParams,
) -> Result<f64> {
    let lp = if params.apply_length_penalty {
        length_penalty(hyp_len, ref_len, params.beta)?
    } else {
        1.0
    };
    Ok(params
        .alpha
        .powf(-(profile.entropy() * lp))
        .max(f64::MIN_POSITIVE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::align::{align, MatcherStage};
    use crate::text::tokenize;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    // Frozen base-10 entropies of the worked chunk distributions
    // (3,1), (2,2) and (2,1,1); verified against an independent calculator.
    // The (2,2) entropy is exactly log10(2).
    pub(crate) const H_31: f64 = 0.244_219_050_288_215_56;
    pub(crate) const H_22: f64 = std::f64::consts::LOG10_2;
    pub(crate) const H_211: f64 = 0.451_544_993_495_971_8;

    fn profile_for(hyp: &str) -> ChunkProfile {
        let reference = tokenize("There are books on the desk");
        let alignment = align(&tokenize(hyp), &reference, &[MatcherStage::Exact]).unwrap();
        extract_chunks(&alignment)
    }

    #[test]
    fn worked_example_chunk_profiles() {
        let p1 = profile_for("There are books in that desk");
        assert_eq!(p1.chunk_lengths(), vec![3, 1]);
        assert_eq!(p1.total_matched(), 4);
        assert_relative_eq!(p1.entropy(), H_31, epsilon = 1e-12);

        let p2 = profile_for("There are table on the book");
        assert_eq!(p2.chunk_lengths(), vec![2, 2]);
        assert_relative_eq!(p2.entropy(), H_22, epsilon = 1e-12);

        let p3 = profile_for("There are table on book the");
        assert_eq!(p3.chunk_lengths(), vec![2, 1, 1]);
        assert_relative_eq!(p3.entropy(), H_211, epsilon = 1e-12);
    }

    #[test]
    fn empty_alignment_has_zero_entropy() {
        let profile = profile_for("nothing shared here at all today");
        assert_eq!(profile.chunk_count(), 0);
        assert_eq!(profile.total_matched(), 0);
        assert_eq!(profile.entropy(), 0.0);
    }

    #[test]
    fn length_penalty_equal_lengths_is_exactly_one() {
        assert_eq!(length_penalty(6, 6, 1.12).unwrap(), 1.0);
    }

    #[test]
    fn length_penalty_double_ratio() {
        // |6/3 - 1| = 1, so LP is beta itself.
        assert_eq!(length_penalty(6, 3, 2.0).unwrap(), 2.0);
        assert_relative_eq!(length_penalty(6, 3, 1.999).unwrap(), 1.999, epsilon = 1e-12);
    }

    #[test]
    fn length_penalty_fractional_exponent() {
        // beta^|5/8 - 1| = 1.12^0.375; frozen from an independent calculator.
        assert_relative_eq!(
            length_penalty(5, 8, 1.12).unwrap(),
            1.043_414_237_690_774_4,
            epsilon = 1e-12
        );
    }

    #[test]
    fn length_penalty_empty_reference_errors() {
        assert!(matches!(
            length_penalty(5, 0, 1.12),
            Err(Error::DegenerateReference)
        ));
    }

    #[test]
    fn ent_score_worked_example() {
        let params = EntParams::new(1.05, 1.12, true).unwrap();
        let score = ent_score(&profile_for("There are books in that desk"), 6, 6, &params).unwrap();
        assert_relative_eq!(score, 0.988_155_220_745_055_2, epsilon = 1e-12);
    }

    #[test]
    fn ent_score_single_chunk_is_exactly_one() {
        let profile = ChunkProfile::from_lengths(&[5]);
        let score = ent_score(&profile, 5, 5, &EntParams::default()).unwrap();
        assert_eq!(score, 1.0);
    }

    #[test]
    fn ent_score_zero_matches_is_neutral() {
        let profile = ChunkProfile::from_lengths(&[]);
        let score = ent_score(&profile, 7, 5, &EntParams::default()).unwrap();
        assert_eq!(score, 1.0);
    }

    #[test]
    fn ent_score_orders_the_worked_example() {
        let params = EntParams::default();
        let s1 = ent_score(&profile_for("There are books in that desk"), 6, 6, &params).unwrap();
        let s2 = ent_score(&profile_for("There are table on the book"), 6, 6, &params).unwrap();
        let s3 = ent_score(&profile_for("There are table on book the"), 6, 6, &params).unwrap();
        assert!(s1 > s2 && s2 > s3, "expected {s1} > {s2} > {s3}");
    }

    #[test]
    fn ent_params_validation() {
        assert!(EntParams::new(1.0, 1.12, true).is_err());
        assert!(EntParams::new(1.6, 1.12, true).is_err());
        assert!(EntParams::new(1.5, 1.0, true).is_err());
        assert!(EntParams::new(1.5, 2.0, true).is_err());
        assert!(EntParams::new(1.5, 1.12, true).is_ok());
    }

    /// Independent entropy evaluation used by the property tests below.
    fn entropy_oracle(lengths: &[usize]) -> f64 {
        let total: usize = lengths.iter().sum();
        let mut h = 0.0;
        for &l in lengths {
            let p = l as f64 / total as f64;
            h -= p * p.log10();
        }
        h
    }

    #[test]
    fn more_unequal_lengths_give_lower_entropy() {
        for (concentrated, balanced) in [
            (vec![3, 1], vec![2, 2]),
            (vec![4, 1], vec![3, 2]),
            (vec![5, 1], vec![3, 3]),
            (vec![6, 2], vec![4, 4]),
        ] {
            let hc = ChunkProfile::from_lengths(&concentrated).entropy();
            let hb = ChunkProfile::from_lengths(&balanced).entropy();
            assert!(
                hc < hb,
                "H{concentrated:?} = {hc} should be < H{balanced:?} = {hb}"
            );
            assert_relative_eq!(hc, entropy_oracle(&concentrated), epsilon = 1e-12);
            assert_relative_eq!(hb, entropy_oracle(&balanced), epsilon = 1e-12);
        }
    }

    fn lengths_strategy() -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::vec(1usize..=6, 1..=8)
    }

    proptest! {
        #[test]
        fn chunk_lengths_sum_to_pair_count(
            hyp in proptest::collection::vec(prop_oneof!["a", "b", "c", "d"], 0..=8),
            reference in proptest::collection::vec(prop_oneof!["a", "b", "c", "d"], 0..=8),
        ) {
            let hyp = tokenize(&hyp.join(" "));
            let reference = tokenize(&reference.join(" "));
            let alignment = align(&hyp, &reference, &[MatcherStage::Exact]).unwrap();
            let profile = extract_chunks(&alignment);
            prop_assert_eq!(profile.chunk_lengths().iter().sum::<usize>(), alignment.len());
        }

        #[test]
        fn entropy_bounds_and_extremes(lengths in lengths_strategy()) {
            let profile = ChunkProfile::from_lengths(&lengths);
            let h = profile.entropy();
            let l = profile.total_matched() as f64;
            prop_assert!(h >= 0.0);
            prop_assert!(h <= l.log10() + 1e-12);
            prop_assert_eq!(profile.chunk_count() <= 1, h == 0.0);
            let all_singletons = lengths.iter().all(|&x| x == 1);
            prop_assert_eq!(all_singletons, (h - l.log10()).abs() < 1e-9);
        }

        #[test]
        fn merging_two_singleton_chunks_lowers_entropy(extra in lengths_strategy()) {
            // (1, 1, extra...) versus (2, extra...): same total, one fewer chunk.
            let mut split = vec![1usize, 1];
            split.extend(&extra);
            let mut merged = vec![2usize];
            merged.extend(&extra);
            let hs = ChunkProfile::from_lengths(&split).entropy();
            let hm = ChunkProfile::from_lengths(&merged).entropy();
            prop_assert!(hm < hs, "merged {hm} should be < split {hs}");
        }

        #[test]
        fn ent_score_in_unit_interval_and_monotone(
            lengths in lengths_strategy(),
            alpha in 1.01f64..=1.5,
            beta in 1.01f64..=1.99,
            hyp_len in 1usize..=40,
            ref_len in 1usize..=40,
        ) {
            let profile = ChunkProfile::from_lengths(&lengths);
            let params = EntParams::new(alpha, beta, true).unwrap();
            let score = ent_score(&profile, hyp_len, ref_len, &params).unwrap();
            prop_assert!(score > 0.0 && score <= 1.0);

            // The strictness checks only hold where the exponential has not
            // underflowed (extreme length mismatch can push it there).
            let representable = score > 1e-300;

            // Strictly decreasing in H for fixed LP: compare against a
            // strictly more dispersed profile over the same total.
            if representable && lengths.iter().any(|&l| l >= 2) {
                let singletons = vec![1usize; profile.total_matched()];
                let dispersed = ChunkProfile::from_lengths(&singletons);
                if dispersed.entropy() > profile.entropy() {
                    let worse = ent_score(&dispersed, hyp_len, ref_len, &params).unwrap();
                    prop_assert!(worse < score);
                }
            }

            // Strictly decreasing in LP for fixed H > 0.
            if representable && profile.entropy() > 0.0 && hyp_len != ref_len {
                let neutral = ent_score(&profile, ref_len, ref_len, &params).unwrap();
                prop_assert!(score < neutral);
            }
        }
    }
}
