//! Command-line front end: score hypothesis files against a reference and
//! optionally meta-evaluate the metrics against human ranking judgments.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 3 on data errors.

use std::fs;
use std::path::PathBuf;

use clap::Parser;

use entscore::align::MatcherKind;
use entscore::error::{Error, Result};
use entscore::fluency::EntParams;
use entscore::metrics::{BleuParams, MeteorParams, MetricConfig, Smoothing};
use entscore::run::{run_metaeval, run_score, HypothesisSpec, RunConfig, StageSpec};

#[derive(Parser, Debug)]
#[command(
    name = "entscore",
    version,
    about = "Score machine-translation hypotheses with entropy-based fluency, \
             BLEU and METEOR-style metrics, and compare metrics against human \
             rankings with Kendall's tau"
)]
struct Args {
    /// Reference file, one segment per line
    #[arg(long = "ref", value_name = "PATH")]
    reference: PathBuf,

    /// Hypothesis file as NAME=PATH; repeat for multiple systems
    #[arg(long = "hyp", value_name = "NAME=PATH")]
    hyp: Vec<String>,

    /// Metric to compute (bleu, bleu-ent, meteor-lite, meteor-ent, ent); repeatable
    #[arg(long = "metric", value_name = "NAME")]
    metric: Vec<String>,

    /// Comma-separated matcher stages: exact,stem,synonym,paraphrase
    #[arg(long, default_value = "exact", value_name = "LIST")]
    stages: String,

    /// Synonym lexicon file (one equivalence class per line)
    #[arg(long, value_name = "PATH")]
    synonyms: Option<PathBuf>,

    /// Paraphrase table file (lines of `source ||| target`)
    #[arg(long, value_name = "PATH")]
    paraphrases: Option<PathBuf>,

    /// Stem rules file (lines of `suffix -> replacement`)
    #[arg(long = "stem-rules", value_name = "PATH")]
    stem_rules: Option<PathBuf>,

    /// Human ranking judgments TSV; enables the Kendall-tau section
    #[arg(long, value_name = "PATH")]
    judgments: Option<PathBuf>,

    /// Fluency alpha override (defaults: 1.05 for bleu-ent, 1.5 elsewhere)
    #[arg(long, value_name = "F")]
    alpha: Option<f64>,

    /// Length-penalty beta override (default 1.12)
    #[arg(long, value_name = "F")]
    beta: Option<f64>,

    /// Report output path; stdout when omitted
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Maximum BLEU n-gram order
    #[arg(long = "max-n", default_value_t = 4, value_name = "N")]
    max_n: usize,

    /// Comma-separated BLEU n-gram weights (default: uniform over max-n)
    #[arg(long, value_name = "LIST")]
    weights: Option<String>,

    /// BLEU smoothing: none or add-k
    #[arg(long, default_value = "add-k", value_name = "KIND")]
    smoothing: String,

    /// The k of add-k smoothing
    #[arg(long = "smoothing-k", default_value_t = 1.0, value_name = "F")]
    smoothing_k: f64,

    /// Fragmentation penalty factor x1
    #[arg(long = "pen-x1", default_value_t = 0.5, value_name = "F")]
    pen_x1: f64,

    /// Fragmentation penalty exponent x2
    #[arg(long = "pen-x2", default_value_t = 3.0, value_name = "F")]
    pen_x2: f64,

    /// Recall weight of the Fmean harmonic mean
    #[arg(long = "recall-weight", default_value_t = 0.9, value_name = "F")]
    recall_weight: f64,
}

fn parse_hypothesis(spec: &str) -> Result<HypothesisSpec> {
    match spec.split_once('=') {
        Some((id, path)) if !id.is_empty() && !path.is_empty() => Ok(HypothesisSpec {
            id: id.to_string(),
            path: PathBuf::from(path),
        }),
        _ => Err(Error::Config(format!(
            "--hyp expects NAME=PATH, got `{spec}`"
        ))),
    }
}

fn bleu_params(args: &Args) -> Result<BleuParams> {
    let smoothing = match args.smoothing.as_str() {
        "none" => Smoothing::None,
        "add-k" => Smoothing::AddK {
            k: args.smoothing_k,
        },
        other => {
            return Err(Error::Config(format!(
                "unknown smoothing `{other}` (expected none or add-k)"
            )))
        }
    };
    let params = match &args.weights {
        Some(list) => {
            let weights = list
                .split(',')
                .map(|w| {
                    w.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Config(format!("bad n-gram weight `{w}`")))
                })
                .collect::<Result<Vec<f64>>>()?;
            BleuParams {
                max_n: args.max_n,
                weights,
                smoothing,
            }
        }
        None => BleuParams::uniform(args.max_n, smoothing),
    };
    params.validate()?;
    Ok(params)
}

fn metric_config(args: &Args, name: &str) -> Result<MetricConfig> {
    let meteor = MeteorParams::new(args.recall_weight, args.pen_x1, args.pen_x2)?;
    let ent_with_lp = EntParams::new(args.alpha.unwrap_or(1.5), args.beta.unwrap_or(1.12), true)?;
    match name {
        "bleu" => Ok(MetricConfig::Bleu {
            bleu: bleu_params(args)?,
        }),
        "bleu-ent" => Ok(MetricConfig::BleuEnt {
            bleu: bleu_params(args)?,
            ent: EntParams::new(args.alpha.unwrap_or(1.05), args.beta.unwrap_or(1.12), false)?,
        }),
        "meteor-lite" => Ok(MetricConfig::MeteorLite { meteor }),
        "meteor-ent" => Ok(MetricConfig::MeteorEnt {
            meteor,
            ent: ent_with_lp,
        }),
        "ent" => Ok(MetricConfig::Ent { ent: ent_with_lp }),
        other => Err(Error::Config(format!(
            "unknown metric `{other}` (expected bleu, bleu-ent, meteor-lite, meteor-ent or ent)"
        ))),
    }
}

fn build_config(args: &Args) -> Result<RunConfig> {
    let hypotheses = args
        .hyp
        .iter()
        .map(|spec| parse_hypothesis(spec))
        .collect::<Result<Vec<_>>>()?;
    let metrics = args
        .metric
        .iter()
        .map(|name| metric_config(args, name))
        .collect::<Result<Vec<_>>>()?;
    let stages = args
        .stages
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let kind: MatcherKind = s.trim().parse()?;
            let resource = match kind {
                MatcherKind::Exact => None,
                MatcherKind::Stem => args.stem_rules.clone(),
                MatcherKind::Synonym => args.synonyms.clone(),
                MatcherKind::Paraphrase => args.paraphrases.clone(),
            };
            Ok(StageSpec { kind, resource })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RunConfig {
        reference: args.reference.clone(),
        hypotheses,
        metrics,
        stages,
        judgments: args.judgments.clone(),
        output: args.out.clone(),
    })
}

fn execute(args: &Args) -> Result<()> {
    let config = build_config(args)?;
    let mut report = run_score(&config)?;
    if config.judgments.is_some() {
        run_metaeval(&config, &mut report)?;
    }
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    let json = report.to_json();
    match &config.output {
        Some(path) => fs::write(path, json + "\n").map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?,
        None => println!("{json}"),
    }
    Ok(())
}

fn main() {
    let args = Args::parse();
    if let Err(err) = execute(&args) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
