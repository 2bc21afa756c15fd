//! Tokenization and the shared segment/corpus types.
//!
//! Tokenization is deliberately simple and fully specified: segments are
//! split on whitespace, then any maximal run of non-alphanumeric characters
//! inside a word becomes its own token ("desk," turns into "desk" and ",").
//! Normalization is lowercase-only. Everything downstream (alignment,
//! scoring) works on these [`Segment`]s, so every metric in the toolkit sees
//! exactly the same token stream.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// A single token: the original surface form plus its normalized form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    surface: String,
    norm: String,
}

impl Token {
    /// Build a token from its surface form. The normalized form is the
    /// lowercased surface.
    ///
    /// Panics if `surface` is empty; tokens always carry at least one character.
    pub fn new(surface: &str) -> Self {
        assert!(!surface.is_empty(), "token surface must be non-empty");
        Token {
            surface: surface.to_string(),
            norm: surface.to_lowercase(),
        }
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn norm(&self) -> &str {
        &self.norm
    }
}

/// A tokenized sentence (reference or hypothesis).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Segment {
    tokens: Vec<Token>,
}

impl Segment {
    pub fn from_tokens(tokens: Vec<Token>) -> Self {
        Segment { tokens }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    /// Number of tokens.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Normalized forms, in order. Matching and n-gram extraction work on these.
    pub fn norms(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(Token::norm)
    }
}

/// Tokenize a raw line into a [`Segment`].
///
/// Rules: split on whitespace; within each whitespace-delimited word, any
/// maximal run of non-alphanumeric characters becomes its own token; the
/// normalized form is the lowercased surface. Empty input (or all-whitespace
/// input) yields a zero-length segment.
pub fn tokenize(raw: &str) -> Segment {
    let mut tokens = Vec::new();
    for word in raw.split_whitespace() {
        let mut run = String::new();
        let mut run_is_alnum = false;
        for ch in word.chars() {
            let alnum = ch.is_alphanumeric();
            if !run.is_empty() && alnum != run_is_alnum {
                tokens.push(Token::new(&run));
                run.clear();
            }
            run_is_alnum = alnum;
            run.push(ch);
        }
        if !run.is_empty() {
            tokens.push(Token::new(&run));
        }
    }
    Segment::from_tokens(tokens)
}

/// One system's hypothesis segments, keyed by the system id.
#[derive(Debug, Clone)]
pub struct SystemHypotheses {
    id: String,
    segments: Vec<Segment>,
}

impl SystemHypotheses {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }
}

/// A reference translation plus one hypothesis list per system, aligned by
/// segment index.
#[derive(Debug, Clone)]
pub struct ParallelCorpus {
    references: Vec<Segment>,
    systems: Vec<SystemHypotheses>,
}

impl ParallelCorpus {
    /// Assemble a corpus, checking that every system has one hypothesis per
    /// reference segment and that system ids are unique. `labels` names the
    /// sources in shape errors (falls back to the system id).
    pub fn new(
        references: Vec<Segment>,
        systems: Vec<(String, Vec<Segment>)>,
        reference_label: &str,
    ) -> Result<Self> {
        let mut seen = Vec::new();
        let mut built = Vec::new();
        for (id, segments) in systems {
            if seen.contains(&id) {
                return Err(Error::Config(format!("duplicate system id `{id}`")));
            }
            if segments.len() != references.len() {
                return Err(Error::CorpusShape {
                    reference: reference_label.to_string(),
                    ref_lines: references.len(),
                    hypothesis: id,
                    hyp_lines: segments.len(),
                });
            }
            seen.push(id.clone());
            built.push(SystemHypotheses { id, segments });
        }
        Ok(ParallelCorpus {
            references,
            systems: built,
        })
    }

    /// Number of segments.
    pub fn len(&self) -> usize {
        self.references.len()
    }

    pub fn is_empty(&self) -> bool {
        self.references.is_empty()
    }

    pub fn references(&self) -> &[Segment] {
        &self.references
    }

    pub fn systems(&self) -> &[SystemHypotheses] {
        &self.systems
    }

    pub fn system_ids(&self) -> Vec<&str> {
        self.systems.iter().map(|s| s.id.as_str()).collect()
    }
}

/// Read a one-segment-per-line UTF-8 file into segments.
///
/// LF and CRLF line endings are accepted. A single trailing newline does not
/// produce an extra empty segment; interior empty lines become zero-length
/// segments.
pub fn read_segments(path: &Path) -> Result<Vec<Segment>> {
    let raw = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(raw.lines().map(tokenize).collect())
}

/// Load a reference file and one hypothesis file per system into a corpus.
///
/// Line `i` of every file maps to segment index `i`. A line-count mismatch
/// between any hypothesis file and the reference file is a corpus-shape
/// error naming both files and their counts.
pub fn load_corpus(
    ref_path: &Path,
    hypotheses: &[(String, std::path::PathBuf)],
) -> Result<ParallelCorpus> {
    let references = read_segments(ref_path)?;
    let ref_label = ref_path.display().to_string();
    let mut systems = Vec::new();
    for (id, hyp_path) in hypotheses {
        let segments = read_segments(hyp_path)?;
        if segments.len() != references.len() {
            return Err(Error::CorpusShape {
                reference: ref_label.clone(),
                ref_lines: references.len(),
                hypothesis: hyp_path.display().to_string(),
                hyp_lines: segments.len(),
            });
        }
        systems.push((id.clone(), segments));
    }
    ParallelCorpus::new(references, systems, &ref_label)
}
