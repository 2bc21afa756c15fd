//! Batch runs: resolve a configuration, score a corpus, optionally
//! meta-evaluate against judgments, and emit a JSON report.
//!
//! Reports are deterministic functions of the configuration and input files
//! apart from the `timestamp` field: the resolved configuration is echoed
//! into the report, scores are listed in configuration order, and every
//! score carries the components it was computed from.

use std::path::PathBuf;
use std::sync::Arc;

use serde::Serialize;

use crate::align::{MatcherKind, MatcherStage, ParaphraseTable, StemRules, SynonymLexicon};
use crate::error::{Error, Result};
use crate::metaeval::{extract_pairs, kendall_tau, load_judgments, SegmentScores, TauResult};
use crate::metrics::{score_corpus, MetricConfig, MetricReport, ScoreConfig};
use crate::text::load_corpus;

/// One hypothesis file with its system id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisSpec {
    pub id: String,
    pub path: PathBuf,
}

/// One matcher stage with the resource file it loads, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageSpec {
    pub kind: MatcherKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resource: Option<PathBuf>,
}

/// A fully resolved run configuration; echoed verbatim into the report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub reference: PathBuf,
    pub hypotheses: Vec<HypothesisSpec>,
    pub metrics: Vec<MetricConfig>,
    pub stages: Vec<StageSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub judgments: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

/// Kendall tau of one metric against the run's judgments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricTau {
    pub metric: String,
    #[serde(flatten)]
    pub result: TauResult,
}

/// The full run report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub timestamp: String,
    pub config: RunConfig,
    pub metrics: Vec<MetricReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metaeval: Option<Vec<MetricTau>>,
    /// Multi-word paraphrase entries ignored during resource loading.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        // Serialization of these plain structs cannot fail.
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

fn validate(config: &RunConfig) -> Result<()> {
    if config.metrics.is_empty() {
        return Err(Error::Config(
            "at least one metric must be configured".to_string(),
        ));
    }
    if config.hypotheses.is_empty() {
        return Err(Error::Config(
            "at least one hypothesis file must be configured".to_string(),
        ));
    }
    let mut names: Vec<&str> = config.metrics.iter().map(|m| m.name()).collect();
    names.sort_unstable();
    names.dedup();
    if names.len() != config.metrics.len() {
        return Err(Error::Config(
            "each metric may be configured at most once per run".to_string(),
        ));
    }
    Ok(())
}

/// Load the resources behind a stage list.
fn resolve_stages(specs: &[StageSpec], warnings: &mut Vec<String>) -> Result<Vec<MatcherStage>> {
    let mut stages = Vec::with_capacity(specs.len());
    for spec in specs {
        let resource = |name: &str| {
            spec.resource.as_deref().ok_or_else(|| {
                Error::Config(format!(
                    "the {} stage needs a {name} file",
                    spec.kind.name()
                ))
            })
        };
        let stage = match spec.kind {
            MatcherKind::Exact => MatcherStage::Exact,
            MatcherKind::Stem => {
                MatcherStage::Stem(Arc::new(StemRules::from_path(resource("stem rules")?)?))
            }
            MatcherKind::Synonym => MatcherStage::Synonym(Arc::new(SynonymLexicon::from_path(
                resource("synonym lexicon")?,
            )?)),
            MatcherKind::Paraphrase => {
                let table = ParaphraseTable::from_path(resource("paraphrase table")?)?;
                if table.skipped_multiword() > 0 {
                    let path = spec.resource.as_deref().map(|p| p.display().to_string());
                    warnings.push(format!(
                        "ignored {} multi-word paraphrase entries in `{}`",
                        table.skipped_multiword(),
                        path.unwrap_or_default()
                    ));
                }
                MatcherStage::Paraphrase(Arc::new(table))
            }
        };
        stages.push(stage);
    }
    Ok(stages)
}

/// Score the configured corpus and assemble a report (without meta-evaluation).
pub fn run_score(config: &RunConfig) -> Result<Report> {
    validate(config)?;
    let mut warnings = Vec::new();
    let stages = resolve_stages(&config.stages, &mut warnings)?;
    let hypotheses: Vec<(String, PathBuf)> = config
        .hypotheses
        .iter()
        .map(|h| (h.id.clone(), h.path.clone()))
        .collect();
    let corpus = load_corpus(&config.reference, &hypotheses)?;
    let score_config = ScoreConfig {
        metrics: config.metrics.clone(),
        stages,
    };
    let metrics = score_corpus(&corpus, &score_config)?;
    Ok(Report {
        timestamp: chrono::Utc::now().to_rfc3339(),
        config: config.clone(),
        metrics,
        metaeval: None,
        warnings,
    })
}

/// Compare every configured metric against the run's human judgments and
/// append the per-metric tau results to the report.
pub fn run_metaeval(config: &RunConfig, report: &mut Report) -> Result<()> {
    let path = config
        .judgments
        .as_deref()
        .ok_or_else(|| Error::Config("meta-evaluation requires a judgments file".to_string()))?;
    let judgments = load_judgments(path)?;
    let known: Vec<String> = config.hypotheses.iter().map(|h| h.id.clone()).collect();
    let pairs = extract_pairs(&judgments, &known)?;
    let mut results = Vec::with_capacity(config.metrics.len());
    for metric in &config.metrics {
        let scores = SegmentScores::for_metric(&report.metrics, metric.name());
        let result = kendall_tau(&pairs, &scores)?;
        results.push(MetricTau {
            metric: metric.name().to_string(),
            result,
        });
    }
    report.metaeval = Some(results);
    Ok(())
}
