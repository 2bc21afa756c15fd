//! Sentence-level BLEU and its fluency-weighted combination.
//!
//! BLEU here is `BP * exp(sum_n w_n log p_n)` over clipped n-gram precisions,
//! with an add-k smoothing option on the n >= 2 counts so that single
//! sentences do not collapse to zero whenever a 4-gram is missing. The
//! combined score multiplies BLEU by the fluency factor `alpha^(-H)`; the
//! fluency length penalty stays off because BLEU already carries a brevity
//! penalty.

use std::collections::HashMap;

use serde::Serialize;

use crate::align::{align, MatcherStage};
use crate::error::{Error, Result};
use crate::fluency::{ent_score, extract_chunks, EntParams};
use crate::text::Segment;

/// Smoothing applied to n-gram counts for n >= 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Smoothing {
    None,
    AddK { k: f64 },
}

/// BLEU parameters: maximum n-gram order, per-order weights, smoothing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BleuParams {
    pub max_n: usize,
    pub weights: Vec<f64>,
    pub smoothing: Smoothing,
}

impl BleuParams {
    /// Uniform weights over orders `1..=max_n`.
    pub fn uniform(max_n: usize, smoothing: Smoothing) -> Self {
        BleuParams {
            max_n,
            weights: vec![1.0 / max_n as f64; max_n],
            smoothing,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_n == 0 {
            return Err(Error::Config("max-n must be at least 1".to_string()));
        }
        if self.weights.len() != self.max_n {
            return Err(Error::Config(format!(
                "expected {} n-gram weights, got {}",
                self.max_n,
                self.weights.len()
            )));
        }
        if self.weights.iter().any(|&w| w < 0.0) {
            return Err(Error::Config("n-gram weights must be >= 0".to_string()));
        }
        let sum: f64 = self.weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "n-gram weights must sum to 1, got {sum}"
            )));
        }
        if let Smoothing::AddK { k } = self.smoothing {
            if k <= 0.0 {
                return Err(Error::Config(format!("smoothing k must be > 0, got {k}")));
            }
        }
        Ok(())
    }
}

impl Default for BleuParams {
    fn default() -> Self {
        BleuParams::uniform(4, Smoothing::AddK { k: 1.0 })
    }
}

/// BLEU with its audit components.
#[derive(Debug, Clone, PartialEq)]
pub struct BleuScore {
    pub value: f64,
    pub precisions: Vec<f64>,
    pub brevity_penalty: f64,
}

/// The BLEU * fluency combination with its audit components.
#[derive(Debug, Clone, PartialEq)]
pub struct BleuEntScore {
    pub value: f64,
    pub bleu: BleuScore,
    pub entropy: f64,
    pub chunk_lengths: Vec<usize>,
    pub matched: usize,
    /// `alpha^(-H)`.
    pub fluency_factor: f64,
}

fn ngram_counts<'a>(norms: &'a [&'a str], n: usize) -> HashMap<&'a [&'a str], usize> {
    let mut counts = HashMap::new();
    if norms.len() >= n && n >= 1 {
        for gram in norms.windows(n) {
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// Clipped n-gram precisions for `n = 1..=max_n`.
///
/// Hypothesis n-gram counts are clipped to their reference counts. For
/// `n >= 2` with add-k smoothing, `k` is added to both the clipped-match
/// numerator and the hypothesis-count denominator; an order with no
/// hypothesis n-grams has precision 0 before smoothing.
pub fn ngram_precisions(hyp: &Segment, reference: &Segment, params: &BleuParams) -> Vec<f64> {
    let hyp_norms: Vec<&str> = hyp.norms().collect();
    let ref_norms: Vec<&str> = reference.norms().collect();
    let mut precisions = Vec::with_capacity(params.max_n);
    for n in 1..=params.max_n {
        let hyp_counts = ngram_counts(&hyp_norms, n);
        let ref_counts = ngram_counts(&ref_norms, n);
        let clipped: usize = hyp_counts
            .iter()
            .map(|(gram, &count)| count.min(ref_counts.get(gram).copied().unwrap_or(0)))
            .sum();
        // zero n-grams when the hypothesis is shorter than n
        let total = hyp_norms.len().saturating_sub(n - 1);
        let precision = match params.smoothing {
            Smoothing::AddK { k } if n >= 2 => (clipped as f64 + k) / (total as f64 + k),
            _ => {
                if total == 0 {
                    0.0
                } else {
                    clipped as f64 / total as f64
                }
            }
        };
        precisions.push(precision);
    }
    precisions
}

/// Sentence-level BLEU.
///
/// `BP = 1` when the hypothesis is longer than the reference, otherwise
/// `exp(1 - r/c)`. If any (smoothed) precision is 0 the score is 0. An empty
/// reference is a degenerate-reference error; an empty hypothesis scores 0.
pub fn bleu(hyp: &Segment, reference: &Segment, params: &BleuParams) -> Result<BleuScore> {
    params.validate()?;
    if reference.is_empty() {
        return Err(Error::DegenerateReference);
    }
    let precisions = ngram_precisions(hyp, reference, params);
    if hyp.is_empty() {
        return Ok(BleuScore {
            value: 0.0,
            precisions,
            brevity_penalty: 0.0,
        });
    }
    let c = hyp.len() as f64;
    let r = reference.len() as f64;
    let brevity_penalty = if c > r { 1.0 } else { (1.0 - r / c).exp() };
    if precisions.contains(&0.0) {
        return Ok(BleuScore {
            value: 0.0,
            precisions,
            brevity_penalty,
        });
    }
    let log_mean: f64 = params
        .weights
        .iter()
        .zip(&precisions)
        .map(|(w, p)| w * p.ln())
        .sum();
    Ok(BleuScore {
        value: brevity_penalty * log_mean.exp(),
        precisions,
        brevity_penalty,
    })
}

/// BLEU multiplied by the fluency factor `alpha^(-H)`.
///
/// `ent_params.apply_length_penalty` must be false — BLEU's brevity penalty
/// already accounts for length. `H` is the chunk entropy of the alignment
/// produced by `stages`, so the combined score never exceeds plain BLEU.
pub fn bleu_ent(
    hyp: &Segment,
    reference: &Segment,
    bleu_params: &BleuParams,
    ent_params: &EntParams,
    stages: &[MatcherStage],
) -> Result<BleuEntScore> {
    if ent_params.apply_length_penalty {
        return Err(Error::Config(
            "the BLEU combination requires the fluency length penalty to be disabled".to_string(),
        ));
    }
    let base = bleu(hyp, reference, bleu_params)?;
    let alignment = align(hyp, reference, stages)?;
    let profile = extract_chunks(&alignment);
    let fluency_factor = ent_score(&profile, hyp.len(), reference.len(), ent_params)?;
    Ok(BleuEntScore {
        value: base.value * fluency_factor,
        entropy: profile.entropy(),
        chunk_lengths: profile.chunk_lengths(),
        matched: profile.total_matched(),
        fluency_factor,
        bleu: base,
    })
}
