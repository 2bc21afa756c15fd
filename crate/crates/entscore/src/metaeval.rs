//! Segment-level Kendall-tau agreement between metric scores and human
//! ranking judgments.
//!
//! Human rankings are decomposed into ordered preference pairs (better
//! system, worse system) per segment; human ties contribute no pairs. A pair
//! is concordant when the metric strictly prefers the human-preferred
//! system, discordant when it strictly prefers the other; metric ties count
//! toward the total only. Then
//!
//! ```text
//! tau = (concordant - discordant) / total
//! ```
//!
//! Judgments load from a TSV with the header `segment\tjudge\tsystem\trank`;
//! rows sharing a (segment, judge) pair form one ranking, smaller rank =
//! better.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::MetricReport;

/// One human judgment: a ranking of two or more systems for one segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingJudgment {
    segment: usize,
    judge: Option<String>,
    ranking: Vec<(String, u32)>,
}

impl RankingJudgment {
    /// Ranks are positive, smaller is better, ties allowed; a ranking needs
    /// at least two systems and no repeated system.
    pub fn new(segment: usize, judge: Option<String>, ranking: Vec<(String, u32)>) -> Result<Self> {
        if ranking.len() < 2 {
            return Err(Error::JudgmentFormat(format!(
                "segment {segment}: a ranking needs at least two systems, got {}",
                ranking.len()
            )));
        }
        if ranking.iter().any(|(_, rank)| *rank == 0) {
            return Err(Error::JudgmentFormat(format!(
                "segment {segment}: ranks must be positive integers"
            )));
        }
        for (i, (system, _)) in ranking.iter().enumerate() {
            if ranking[i + 1..].iter().any(|(other, _)| other == system) {
                return Err(Error::JudgmentFormat(format!(
                    "segment {segment}: system `{system}` ranked twice in one judgment"
                )));
            }
        }
        Ok(RankingJudgment {
            segment,
            judge,
            ranking,
        })
    }

    pub fn segment(&self) -> usize {
        self.segment
    }

    pub fn judge(&self) -> Option<&str> {
        self.judge.as_deref()
    }

    pub fn ranking(&self) -> &[(String, u32)] {
        &self.ranking
    }
}

/// An ordered human preference: `better` beat `worse` on `segment`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferencePair {
    pub segment: usize,
    pub better: String,
    pub worse: String,
}

/// Kendall tau with its pair counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauResult {
    pub tau: f64,
    pub concordant: usize,
    pub discordant: usize,
    pub total_pairs: usize,
}

/// Decompose judgments into ordered preference pairs.
///
/// Every unordered system pair with unequal ranks yields one pair; ties
/// yield none. Systems must appear in `known_systems`.
pub fn extract_pairs(
    judgments: &[RankingJudgment],
    known_systems: &[String],
) -> Result<Vec<PreferencePair>> {
    let mut pairs = Vec::new();
    for judgment in judgments {
        for (system, _) in &judgment.ranking {
            if !known_systems.contains(system) {
                return Err(Error::JudgmentFormat(format!(
                    "segment {}: judgment ranks unknown system `{system}`",
                    judgment.segment
                )));
            }
        }
        for (i, (sys_a, rank_a)) in judgment.ranking.iter().enumerate() {
            for (sys_b, rank_b) in &judgment.ranking[i + 1..] {
                if rank_a < rank_b {
                    pairs.push(PreferencePair {
                        segment: judgment.segment,
                        better: sys_a.clone(),
                        worse: sys_b.clone(),
                    });
                } else if rank_b < rank_a {
                    pairs.push(PreferencePair {
                        segment: judgment.segment,
                        better: sys_b.clone(),
                        worse: sys_a.clone(),
                    });
                }
            }
        }
    }
    Ok(pairs)
}

/// Per-segment scores of one metric, keyed by system id.
#[derive(Debug, Clone, Default)]
pub struct SegmentScores {
    by_system: HashMap<String, Vec<f64>>,
}

impl SegmentScores {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert_system(&mut self, system: impl Into<String>, scores: Vec<f64>) {
        self.by_system.insert(system.into(), scores);
    }

    /// Collect one metric's per-system score lists out of a report set.
    pub fn for_metric(reports: &[MetricReport], metric: &str) -> Self {
        let mut scores = Self::new();
        for report in reports.iter().filter(|r| r.metric == metric) {
            scores.insert_system(report.system.clone(), report.segment_scores());
        }
        scores
    }

    pub fn get(&self, segment: usize, system: &str) -> Option<f64> {
        self.by_system.get(system)?.get(segment).copied()
    }
}

/// Count concordant and discordant pairs and compute tau.
///
/// A missing (segment, system) score is a coverage error. With no pairs at
/// all, tau is 0 by convention.
pub fn kendall_tau(pairs: &[PreferencePair], scores: &SegmentScores) -> Result<TauResult> {
    let mut concordant = 0;
    let mut discordant = 0;
    for pair in pairs {
        let lookup = |system: &str| {
            scores
                .get(pair.segment, system)
                .ok_or_else(|| Error::Coverage {
                    segment: pair.segment,
                    system: system.to_string(),
                })
        };
        let better = lookup(&pair.better)?;
        let worse = lookup(&pair.worse)?;
        if better > worse {
            concordant += 1;
        } else if better < worse {
            discordant += 1;
        }
    }
    let total_pairs = pairs.len();
    let tau = if total_pairs == 0 {
        0.0
    } else {
        (concordant as f64 - discordant as f64) / total_pairs as f64
    };
    Ok(TauResult {
        tau,
        concordant,
        discordant,
        total_pairs,
    })
}

/// Load judgments from a TSV file.
///
/// The header line `segment\tjudge\tsystem\trank` is required. Rows group
/// into one [`RankingJudgment`] per (segment, judge); an empty judge field
/// means "unattributed".
pub fn load_judgments(path: &Path) -> Result<Vec<RankingJudgment>> {
    let raw = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_judgments(&raw)
}

pub fn parse_judgments(text: &str) -> Result<Vec<RankingJudgment>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header.trim_end() == "segment\tjudge\tsystem\trank" => {}
        other => {
            return Err(Error::JudgmentFormat(format!(
                "expected header `segment\\tjudge\\tsystem\\trank`, got {:?}",
                other.unwrap_or("")
            )))
        }
    }
    let mut groups: BTreeMap<(usize, String), Vec<(String, u32)>> = BTreeMap::new();
    for (lineno, line) in lines.enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::JudgmentFormat(format!(
                "line {}: expected 4 tab-separated fields, got {}",
                lineno + 2,
                fields.len()
            )));
        }
        let segment: usize = fields[0].parse().map_err(|_| {
            Error::JudgmentFormat(format!(
                "line {}: bad segment index `{}`",
                lineno + 2,
                fields[0]
            ))
        })?;
        let rank: u32 = fields[3].parse().map_err(|_| {
            Error::JudgmentFormat(format!("line {}: bad rank `{}`", lineno + 2, fields[3]))
        })?;
        groups
            .entry((segment, fields[1].to_string()))
            .or_default()
            .push((fields[2].to_string(), rank));
    }
    groups
        .into_iter()
        .map(|((segment, judge), ranking)| {
            let judge = if judge.is_empty() { None } else { Some(judge) };
            RankingJudgment::new(segment, judge, ranking)
        })
        .collect()
}
