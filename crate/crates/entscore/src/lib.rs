//! entscore — machine-translation evaluation with an entropy-based fluency
//! score.
//!
//! The toolkit scores translation hypotheses against references with:
//!
//! * **ent** — a fluency score from the entropy of matched-word chunk
//!   lengths: matched words concentrated in few long chunks read fluently
//!   and score near 1, scattered matches score lower ([`fluency`]).
//! * **bleu** / **bleu-ent** — sentence-level smoothed BLEU, plain or
//!   multiplied by the fluency factor ([`metrics`]).
//! * **meteor-lite** / **meteor-ent** — a METEOR-style unigram metric with a
//!   fragmentation penalty, and the variant that replaces the penalty with
//!   the fluency score ([`metrics`]).
//!
//! Matched words come from a staged word aligner (exact, stem, synonym,
//! paraphrase) that maximizes matches and then minimizes chunk count
//! ([`align`]). A Kendall-tau harness compares any of the metrics against
//! human ranking judgments at the segment level ([`metaeval`]), and [`run`]
//! wires everything into reproducible JSON-reported batch runs — also
//! available as the `entscore` command-line tool.
//!
//! ```
//! use entscore::align::{align, MatcherStage};
//! use entscore::fluency::{ent_score, extract_chunks, EntParams};
//! use entscore::text::tokenize;
//!
//! let reference = tokenize("There are books on the desk");
//! let hypothesis = tokenize("There are books in that desk");
//!
//! let alignment = align(&hypothesis, &reference, &[MatcherStage::Exact])?;
//! let chunks = extract_chunks(&alignment);
//! assert_eq!(chunks.chunk_lengths(), vec![3, 1]);
//!
//! let score = ent_score(&chunks, 6, 6, &EntParams::default())?;
//! assert!(score > 0.9);
//! # Ok::<(), entscore::Error>(())
//! ```

pub mod align;
pub mod error;
pub mod fluency;
pub mod metaeval;
pub mod metrics;
pub mod run;
pub mod text;

#[cfg(doctest)]
mod book;

pub use error::{Error, Result};
