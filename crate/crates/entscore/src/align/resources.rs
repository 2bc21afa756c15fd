//! Matcher resources: stem rules, synonym lexicon, paraphrase table.
//!
//! All three are plain UTF-8 text files loaded once and shared read-only:
//!
//! * stem rules — lines of `suffix -> replacement`
//! * synonym lexicon — one equivalence class per line, space-separated tokens
//! * paraphrase table — lines of `source ||| target`
//!
//! Entries are normalized (lowercased) on load so lookups line up with token
//! norm forms.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

fn read_resource(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A rule-based suffix stripper.
///
/// A token's stem is the token with its longest rule-matching suffix replaced
/// (ties broken by file order). Tokens with no matching suffix, and tokens
/// whose stem would be empty, stem to themselves.
#[derive(Debug, Clone)]
pub struct StemRules {
    rules: Vec<(String, String)>,
}

impl StemRules {
    pub fn from_path(path: &Path) -> Result<Self> {
        Self::parse(&read_resource(path)?, &path.display().to_string())
    }

    pub fn parse(text: &str, label: &str) -> Result<Self> {
        let mut rules = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (suffix, replacement) = line.split_once("->").ok_or(Error::ResourceFormat {
                path: label.to_string(),
                line: lineno + 1,
                message: "expected `suffix -> replacement`".to_string(),
            })?;
            let suffix = suffix.trim().to_lowercase();
            if suffix.is_empty() {
                return Err(Error::ResourceFormat {
                    path: label.to_string(),
                    line: lineno + 1,
                    message: "empty suffix".to_string(),
                });
            }
            rules.push((suffix, replacement.trim().to_lowercase()));
        }
        Ok(StemRules { rules })
    }

    /// Stem a normalized token.
    pub fn stem(&self, norm: &str) -> String {
        let best = self
            .rules
            .iter()
            .filter(|(suffix, _)| norm.ends_with(suffix.as_str()))
            .max_by_key(|(suffix, _)| suffix.len());
        match best {
            Some((suffix, replacement)) => {
                let stem = format!("{}{}", &norm[..norm.len() - suffix.len()], replacement);
                if stem.is_empty() {
                    norm.to_string()
                } else {
                    stem
                }
            }
            None => norm.to_string(),
        }
    }
}

/// Synonym equivalence classes: two tokens are synonyms when they share at
/// least one class. Membership is symmetric by construction.
#[derive(Debug, Clone)]
pub struct SynonymLexicon {
    classes: HashMap<String, Vec<u32>>,
}

impl SynonymLexicon {
    pub fn from_path(path: &Path) -> Result<Self> {
        Ok(Self::parse(&read_resource(path)?))
    }

    pub fn parse(text: &str) -> Self {
        let mut classes: HashMap<String, Vec<u32>> = HashMap::new();
        let mut class_id = 0u32;
        for line in text.lines() {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            for token in tokens {
                let ids = classes.entry(token.to_lowercase()).or_default();
                if !ids.contains(&class_id) {
                    ids.push(class_id);
                }
            }
            class_id += 1;
        }
        SynonymLexicon { classes }
    }

    pub fn shares_class(&self, a: &str, b: &str) -> bool {
        match (self.classes.get(a), self.classes.get(b)) {
            (Some(ca), Some(cb)) => ca.iter().any(|id| cb.contains(id)),
            _ => false,
        }
    }
}

/// Single-token paraphrase pairs. Multi-word entries are parsed but ignored;
/// callers can surface [`ParaphraseTable::skipped_multiword`] as a warning.
#[derive(Debug, Clone)]
pub struct ParaphraseTable {
    map: HashMap<String, BTreeSet<String>>,
    skipped_multiword: usize,
}

impl ParaphraseTable {
    pub fn from_path(path: &Path) -> Result<Self> {
        Self::parse(&read_resource(path)?, &path.display().to_string())
    }

    pub fn parse(text: &str, label: &str) -> Result<Self> {
        let mut map: HashMap<String, BTreeSet<String>> = HashMap::new();
        let mut skipped = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (source, target) = line.split_once("|||").ok_or(Error::ResourceFormat {
                path: label.to_string(),
                line: lineno + 1,
                message: "expected `source ||| target`".to_string(),
            })?;
            let source = source.trim();
            let target = target.trim();
            if source.is_empty() || target.is_empty() {
                return Err(Error::ResourceFormat {
                    path: label.to_string(),
                    line: lineno + 1,
                    message: "paraphrase entries must be non-empty on both sides".to_string(),
                });
            }
            if source.split_whitespace().count() > 1 || target.split_whitespace().count() > 1 {
                skipped += 1;
                continue;
            }
            map.entry(source.to_lowercase())
                .or_default()
                .insert(target.to_lowercase());
        }
        Ok(ParaphraseTable {
            map,
            skipped_multiword: skipped,
        })
    }

    /// True when either direction of the pair is in the table.
    pub fn are_paraphrases(&self, a: &str, b: &str) -> bool {
        self.map.get(a).is_some_and(|set| set.contains(b))
            || self.map.get(b).is_some_and(|set| set.contains(a))
    }

    /// Number of multi-word entries that were parsed but ignored.
    pub fn skipped_multiword(&self) -> usize {
        self.skipped_multiword
    }
}
