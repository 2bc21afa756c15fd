//! A METEOR-style unigram metric and its fluency-weighted variant.
//!
//! The base metric is `Fmean * (1 - Pen)` where `Fmean` is the
//! recall-weighted harmonic mean of unigram precision and recall over the
//! aligner's matched words, and `Pen = x1 * (chunks / matched)^x2` penalizes
//! fragmentation by chunk *count* alone. The fluency variant replaces
//! `1 - Pen` with the chunk-entropy score `alpha^(-H * LP)`, which also sees
//! the chunk *lengths*: two hypotheses with the same number of matches and
//! chunks but different chunk-length distributions score differently.

use serde::Serialize;

use crate::align::{align, MatcherStage};
use crate::error::{Error, Result};
use crate::fluency::{ent_score, extract_chunks, length_penalty, EntParams};
use crate::text::Segment;

/// Parameters of the METEOR-style metric.
///
/// `recall_weight` is the weight of recall in the harmonic mean; `pen_x1`
/// and `pen_x2` shape the fragmentation penalty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeteorParams {
    pub recall_weight: f64,
    pub pen_x1: f64,
    pub pen_x2: f64,
}

impl MeteorParams {
    pub fn new(recall_weight: f64, pen_x1: f64, pen_x2: f64) -> Result<Self> {
        if !(recall_weight > 0.0 && recall_weight < 1.0) {
            return Err(Error::Config(format!(
                "recall weight must lie in (0, 1), got {recall_weight}"
            )));
        }
        if !(0.0..=1.0).contains(&pen_x1) {
            return Err(Error::Config(format!(
                "penalty x1 must lie in [0, 1], got {pen_x1}"
            )));
        }
        if pen_x2 <= 0.0 {
            return Err(Error::Config(format!(
                "penalty x2 must be > 0, got {pen_x2}"
            )));
        }
        Ok(MeteorParams {
            recall_weight,
            pen_x1,
            pen_x2,
        })
    }
}

impl Default for MeteorParams {
    fn default() -> Self {
        MeteorParams {
            recall_weight: 0.9,
            pen_x1: 0.5,
            pen_x2: 3.0,
        }
    }
}

/// The METEOR-style score with its audit components.
#[derive(Debug, Clone, PartialEq)]
pub struct MeteorScore {
    pub value: f64,
    pub precision: f64,
    pub recall: f64,
    pub fmean: f64,
    pub penalty: f64,
    pub matched: usize,
    pub chunk_count: usize,
}

/// The fluency-weighted variant with its audit components.
#[derive(Debug, Clone, PartialEq)]
pub struct MeteorEntScore {
    pub value: f64,
    pub precision: f64,
    pub recall: f64,
    pub fmean: f64,
    pub entropy: f64,
    pub length_penalty: f64,
    /// `alpha^(-H * LP)`.
    pub fluency_factor: f64,
    pub matched: usize,
    pub chunk_lengths: Vec<usize>,
}

/// Recall-weighted harmonic mean `P*R / (gamma*P + (1-gamma)*R)`.
fn fmean(precision: f64, recall: f64, recall_weight: f64) -> f64 {
    precision * recall / (recall_weight * precision + (1.0 - recall_weight) * recall)
}

/// The METEOR-style metric `Fmean * (1 - Pen)`.
///
/// Matched words and chunks come from the aligner with the given stages.
/// Zero matches score 0; an empty reference is a degenerate-reference error.
pub fn meteor_lite(
    hyp: &Segment,
    reference: &Segment,
    params: &MeteorParams,
    stages: &[MatcherStage],
) -> Result<MeteorScore> {
    if reference.is_empty() {
        return Err(Error::DegenerateReference);
    }
    let alignment = align(hyp, reference, stages)?;
    let profile = extract_chunks(&alignment);
    let matched = profile.total_matched();
    if matched == 0 {
        return Ok(MeteorScore {
            value: 0.0,
            precision: 0.0,
            recall: 0.0,
            fmean: 0.0,
            penalty: 0.0,
            matched: 0,
            chunk_count: 0,
        });
    }
    let precision = matched as f64 / hyp.len() as f64;
    let recall = matched as f64 / reference.len() as f64;
    let fmean = fmean(precision, recall, params.recall_weight);
    let penalty =
        params.pen_x1 * (profile.chunk_count() as f64 / matched as f64).powf(params.pen_x2);
    Ok(MeteorScore {
        value: fmean * (1.0 - penalty),
        precision,
        recall,
        fmean,
        penalty,
        matched,
        chunk_count: profile.chunk_count(),
    })
}

/// The fluency-weighted variant `Fmean * alpha^(-H * LP)`.
///
/// `ent_params.apply_length_penalty` must be true: unlike BLEU, the base
/// metric has no length penalty of its own once `1 - Pen` is replaced.
pub fn meteor_ent(
    hyp: &Segment,
    reference: &Segment,
    params: &MeteorParams,
    ent_params: &EntParams,
    stages: &[MatcherStage],
) -> Result<MeteorEntScore> {
    if !ent_params.apply_length_penalty {
        return Err(Error::Config(
            "the METEOR combination requires the fluency length penalty to be enabled".to_string(),
        ));
    }
    if reference.is_empty() {
        return Err(Error::DegenerateReference);
    }
    let alignment = align(hyp, reference, stages)?;
    let profile = extract_chunks(&alignment);
    let matched = profile.total_matched();
    let lp = length_penalty(hyp.len(), reference.len(), ent_params.beta)?;
    let fluency_factor = ent_score(&profile, hyp.len(), reference.len(), ent_params)?;
    let (precision, recall, f) = if matched == 0 {
        (0.0, 0.0, 0.0)
    } else {
        let p = matched as f64 / hyp.len() as f64;
        let r = matched as f64 / reference.len() as f64;
        (p, r, fmean(p, r, params.recall_weight))
    };
    Ok(MeteorEntScore {
        value: f * fluency_factor,
        precision,
        recall,
        fmean: f,
        entropy: profile.entropy(),
        length_penalty: lp,
        fluency_factor,
        matched,
        chunk_lengths: profile.chunk_lengths(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::tokenize;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn exact() -> Vec<MatcherStage> {
        vec![MatcherStage::Exact]
    }

    #[test]
    fn identical_segments_score_near_one() {
        let seg = tokenize("There are books on the desk");
        let score = meteor_lite(&seg, &seg, &MeteorParams::default(), &exact()).unwrap();
        assert_eq!(score.fmean, 1.0);
        assert_eq!(score.chunk_count, 1);
        // 1 - x1 * (1/6)^x2
        assert_relative_eq!(score.value, 1.0 - 0.5 / 216.0, epsilon = 1e-12);
    }

    #[test]
    fn worked_example_components() {
        // P = R = 4/6, Fmean = 2/3, Pen = 0.5 * (2/4)^3 = 0.0625.
        let reference = tokenize("There are books on the desk");
        let hyp = tokenize("There are books in that desk");
        let score = meteor_lite(&hyp, &reference, &MeteorParams::default(), &exact()).unwrap();
        assert_relative_eq!(score.precision, 4.0 / 6.0, epsilon = 1e-12);
        assert_relative_eq!(score.recall, 4.0 / 6.0, epsilon = 1e-12);
        assert_relative_eq!(score.fmean, 2.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(score.penalty, 0.0625, epsilon = 1e-12);
        assert_relative_eq!(score.value, 0.625, epsilon = 1e-12);
    }

    #[test]
    fn zero_overlap_scores_zero() {
        let score = meteor_lite(
            &tokenize("x y z"),
            &tokenize("a b c"),
            &MeteorParams::default(),
            &exact(),
        )
        .unwrap();
        assert_eq!(score.value, 0.0);
    }

    #[test]
    fn empty_reference_is_an_error() {
        let err = meteor_lite(
            &tokenize("a"),
            &tokenize(""),
            &MeteorParams::default(),
            &exact(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::DegenerateReference));
    }

    #[test]
    fn fluency_variant_identity_scores_exactly_one() {
        let seg = tokenize("There are books on the desk");
        let score = meteor_ent(
            &seg,
            &seg,
            &MeteorParams::default(),
            &EntParams::for_meteor_combination(),
            &exact(),
        )
        .unwrap();
        assert_eq!(score.value, 1.0);
        assert_eq!(score.length_penalty, 1.0);
    }

    #[test]
    fn fluency_variant_worked_example() {
        // Fmean = 2/3, H frozen, LP = 1: value = (2/3) * 1.5^(-H).
        let reference = tokenize("There are books on the desk");
        let hyp = tokenize("There are books in that desk");
        let score = meteor_ent(
            &hyp,
            &reference,
            &MeteorParams::default(),
            &EntParams::for_meteor_combination(),
            &exact(),
        )
        .unwrap();
        assert_relative_eq!(score.fmean, 2.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(score.value, 0.603_815_004_600_762_4, epsilon = 1e-12);
    }

    #[test]
    fn fluency_variant_separates_equal_chunk_counts() {
        // Same Fmean, same chunk count (2), different chunk lengths:
        // (3,1) scores higher than (2,2).
        let reference = tokenize("There are books on the desk");
        let hyp1 = tokenize("There are books in that desk");
        let hyp2 = tokenize("There are table on the book");
        let params = MeteorParams::default();
        let ent = EntParams::for_meteor_combination();
        let base1 = meteor_lite(&hyp1, &reference, &params, &exact()).unwrap();
        let base2 = meteor_lite(&hyp2, &reference, &params, &exact()).unwrap();
        assert_eq!(base1.value, base2.value);
        let s1 = meteor_ent(&hyp1, &reference, &params, &ent, &exact()).unwrap();
        let s2 = meteor_ent(&hyp2, &reference, &params, &ent, &exact()).unwrap();
        assert_eq!(s1.fmean, s2.fmean);
        assert!(s1.value > s2.value);
    }

    #[test]
    fn score_depends_only_on_fmean_entropy_and_lp() {
        // Two unrelated segment pairs with identical P, R, H and LP must
        // score identically: matched 2 of 4/4 tokens, chunks (1, 1).
        let ent = EntParams::for_meteor_combination();
        let a = meteor_ent(
            &tokenize("a x b y"),
            &tokenize("a p b q"),
            &MeteorParams::default(),
            &ent,
            &exact(),
        )
        .unwrap();
        let b = meteor_ent(
            &tokenize("u c v d"),
            &tokenize("w c z d"),
            &MeteorParams::default(),
            &ent,
            &exact(),
        )
        .unwrap();
        assert_eq!(a.fmean, b.fmean);
        assert_eq!(a.entropy, b.entropy);
        assert_eq!(a.length_penalty, b.length_penalty);
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn fluency_variant_requires_length_penalty() {
        let seg = tokenize("a");
        let err = meteor_ent(
            &seg,
            &seg,
            &MeteorParams::default(),
            &EntParams::for_bleu_combination(),
            &exact(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn param_validation() {
        assert!(MeteorParams::new(0.0, 0.5, 3.0).is_err());
        assert!(MeteorParams::new(0.9, 1.5, 3.0).is_err());
        assert!(MeteorParams::new(0.9, 0.5, 0.0).is_err());
        assert!(MeteorParams::new(0.9, 0.5, 3.0).is_ok());
    }

    fn words() -> impl Strategy<Value = Segment> {
        proptest::collection::vec(prop_oneof!["a", "b", "c", "d", "e"], 0..=10)
            .prop_map(|w| tokenize(&w.join(" ")))
    }

    proptest! {
        #[test]
        fn scores_stay_in_unit_interval(hyp in words(), reference in words()) {
            prop_assume!(!reference.is_empty());
            let base = meteor_lite(&hyp, &reference, &MeteorParams::default(), &exact()).unwrap();
            prop_assert!((0.0..=1.0).contains(&base.value));
            let flu = meteor_ent(
                &hyp,
                &reference,
                &MeteorParams::default(),
                &EntParams::for_meteor_combination(),
                &exact(),
            ).unwrap();
            prop_assert!((0.0..=1.0).contains(&flu.value));
        }
    }
}
