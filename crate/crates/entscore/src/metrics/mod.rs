//! Metric configuration, per-segment audit components, and corpus scoring.
//!
//! Every metric reports not just a score but the factors it was computed
//! from (n-gram precisions, brevity penalty, chunk lengths, entropy, length
//! penalty, Fmean, fragmentation penalty), so each number in a report can be
//! recomputed from its components.

mod bleu;
mod meteor;

use serde::Serialize;

use crate::align::{align, MatcherStage};
use crate::error::{Error, Result};
use crate::fluency::{ent_score, extract_chunks, EntParams};
use crate::text::{ParallelCorpus, Segment};

pub use bleu::{bleu, bleu_ent, ngram_precisions, BleuEntScore, BleuParams, BleuScore, Smoothing};
pub use meteor::{meteor_ent, meteor_lite, MeteorEntScore, MeteorParams, MeteorScore};

/// The standalone fluency metric with its audit components.
#[derive(Debug, Clone, PartialEq)]
pub struct EntScore {
    pub value: f64,
    pub entropy: f64,
    pub length_penalty: f64,
    pub matched: usize,
    pub chunk_lengths: Vec<usize>,
}

/// Score a segment with the standalone fluency metric `alpha^(-H * LP)`.
pub fn ent(
    hyp: &Segment,
    reference: &Segment,
    params: &EntParams,
    stages: &[MatcherStage],
) -> Result<EntScore> {
    let alignment = align(hyp, reference, stages)?;
    let profile = extract_chunks(&alignment);
    let lp = if params.apply_length_penalty {
        crate::fluency::length_penalty(hyp.len(), reference.len(), params.beta)?
    } else {
        1.0
    };
    let value = ent_score(&profile, hyp.len(), reference.len(), params)?;
    Ok(EntScore {
        value,
        entropy: profile.entropy(),
        length_penalty: lp,
        matched: profile.total_matched(),
        chunk_lengths: profile.chunk_lengths(),
    })
}

/// A fully parameterized metric choice.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum MetricConfig {
    Bleu {
        bleu: BleuParams,
    },
    BleuEnt {
        bleu: BleuParams,
        ent: EntParams,
    },
    MeteorLite {
        meteor: MeteorParams,
    },
    MeteorEnt {
        meteor: MeteorParams,
        ent: EntParams,
    },
    Ent {
        ent: EntParams,
    },
}

impl MetricConfig {
    pub fn name(&self) -> &'static str {
        match self {
            MetricConfig::Bleu { .. } => "bleu",
            MetricConfig::BleuEnt { .. } => "bleu-ent",
            MetricConfig::MeteorLite { .. } => "meteor-lite",
            MetricConfig::MeteorEnt { .. } => "meteor-ent",
            MetricConfig::Ent { .. } => "ent",
        }
    }
}

/// Audit components of one segment score. Fields not produced by a metric
/// are omitted from reports.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Components {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precisions: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brevity_penalty: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recall: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fmean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub penalty: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length_penalty: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fluency_factor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chunks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chunk_lengths: Option<Vec<usize>>,
}

/// One scored segment: index, score in [0, 1], and audit components.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentScore {
    pub index: usize,
    pub score: f64,
    pub components: Components,
}

/// Per-segment and corpus-level scores of one metric over one system.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    pub metric: String,
    pub system: String,
    pub corpus_score: f64,
    pub segments: Vec<SegmentScore>,
}

impl MetricReport {
    pub fn segment_scores(&self) -> Vec<f64> {
        self.segments.iter().map(|s| s.score).collect()
    }
}

/// What to score and how: the metric list plus the matcher stages shared by
/// every fluency-based metric in the run.
#[derive(Debug, Clone)]
pub struct ScoreConfig {
    pub metrics: Vec<MetricConfig>,
    pub stages: Vec<MatcherStage>,
}

fn score_segment(
    metric: &MetricConfig,
    hyp: &Segment,
    reference: &Segment,
    stages: &[MatcherStage],
) -> Result<(f64, Components)> {
    match metric {
        MetricConfig::Bleu { bleu: params } => {
            let s = bleu(hyp, reference, params)?;
            Ok((
                s.value,
                Components {
                    precisions: Some(s.precisions),
                    brevity_penalty: Some(s.brevity_penalty),
                    ..Components::default()
                },
            ))
        }
        MetricConfig::BleuEnt {
            bleu: bleu_params,
            ent: ent_params,
        } => {
            let s = bleu_ent(hyp, reference, bleu_params, ent_params, stages)?;
            Ok((
                s.value,
                Components {
                    precisions: Some(s.bleu.precisions),
                    brevity_penalty: Some(s.bleu.brevity_penalty),
                    entropy: Some(s.entropy),
                    fluency_factor: Some(s.fluency_factor),
                    matched: Some(s.matched),
                    chunk_lengths: Some(s.chunk_lengths),
                    ..Components::default()
                },
            ))
        }
        MetricConfig::MeteorLite { meteor: params } => {
            let s = meteor_lite(hyp, reference, params, stages)?;
            Ok((
                s.value,
                Components {
                    precision: Some(s.precision),
                    recall: Some(s.recall),
                    fmean: Some(s.fmean),
                    penalty: Some(s.penalty),
                    matched: Some(s.matched),
                    chunks: Some(s.chunk_count),
                    ..Components::default()
                },
            ))
        }
        MetricConfig::MeteorEnt {
            meteor: meteor_params,
            ent: ent_params,
        } => {
            let s = meteor_ent(hyp, reference, meteor_params, ent_params, stages)?;
            Ok((
                s.value,
                Components {
                    precision: Some(s.precision),
                    recall: Some(s.recall),
                    fmean: Some(s.fmean),
                    entropy: Some(s.entropy),
                    length_penalty: Some(s.length_penalty),
                    fluency_factor: Some(s.fluency_factor),
                    matched: Some(s.matched),
                    chunk_lengths: Some(s.chunk_lengths),
                    ..Components::default()
                },
            ))
        }
        MetricConfig::Ent { ent: params } => {
            let s = ent(hyp, reference, params, stages)?;
            Ok((
                s.value,
                Components {
                    entropy: Some(s.entropy),
                    length_penalty: Some(s.length_penalty),
                    matched: Some(s.matched),
                    chunk_lengths: Some(s.chunk_lengths),
                    ..Components::default()
                },
            ))
        }
    }
}

/// Score every configured metric over every system of the corpus.
///
/// Returns one report per (metric, system) in configuration order. The
/// corpus score is the arithmetic mean of the segment scores. Segment-level
/// errors are reported with the segment index attached.
pub fn score_corpus(corpus: &ParallelCorpus, config: &ScoreConfig) -> Result<Vec<MetricReport>> {
    if config.metrics.is_empty() {
        return Err(Error::Config(
            "at least one metric must be configured".to_string(),
        ));
    }
    let mut reports = Vec::new();
    for metric in &config.metrics {
        for system in corpus.systems() {
            let mut segments = Vec::with_capacity(corpus.len());
            for (index, (hyp, reference)) in system
                .segments()
                .iter()
                .zip(corpus.references())
                .enumerate()
            {
                let (score, components) = score_segment(metric, hyp, reference, &config.stages)
                    .map_err(|source| Error::Segment {
                        index,
                        source: Box::new(source),
                    })?;
                debug_assert!((0.0..=1.0).contains(&score));
                segments.push(SegmentScore {
                    index,
                    score,
                    components,
                });
            }
            let corpus_score = if segments.is_empty() {
                0.0
            } else {
                segments.iter().map(|s| s.score).sum::<f64>() / segments.len() as f64
            };
            reports.push(MetricReport {
                metric: metric.name().to_string(),
                system: system.id().to_string(),
                corpus_score,
                segments,
            });
        }
    }
    Ok(reports)
}
