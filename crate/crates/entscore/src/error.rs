//! Error type shared across the toolkit.
//!
//! Errors split into two families: configuration errors (the run was set up
//! wrong) and data errors (an input file or score table is unusable). The CLI
//! maps the families to exit codes 2 and 3 via [`Error::exit_code`].

use std::path::PathBuf;

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid run or metric configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// A hypothesis file does not have one line per reference segment.
    #[error(
        "corpus shape mismatch: reference `{reference}` has {ref_lines} segments \
         but hypothesis `{hypothesis}` has {hyp_lines}"
    )]
    CorpusShape {
        reference: String,
        ref_lines: usize,
        hypothesis: String,
        hyp_lines: usize,
    },

    /// I/O failure, tagged with the offending path.
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A resource file (stem rules, synonym lexicon, paraphrase table) is malformed.
    #[error("malformed resource `{path}` at line {line}: {message}")]
    ResourceFormat {
        path: String,
        line: usize,
        message: String,
    },

    /// The brute-force alignment oracle was asked to search beyond its bounds.
    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),

    /// A length penalty or recall was requested against an empty reference.
    #[error("degenerate reference: reference segment has no tokens")]
    DegenerateReference,

    /// A judgment file or ranking is malformed.
    #[error("judgment format error: {0}")]
    JudgmentFormat(String),

    /// A judged (segment, system) pair has no metric score.
    #[error("coverage error: no score for system `{system}` at segment {segment}")]
    Coverage { segment: usize, system: String },

    /// A segment-level error, tagged with the segment index it occurred at.
    #[error("segment {index}: {source}")]
    Segment {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Process exit code for the CLI: 2 for configuration errors, 3 for data errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Segment { source, .. } => source.exit_code(),
            _ => 3,
        }
    }
}
