//! Terminal rewriting, for markup known to differ consistently between two
//! corpora (quote conventions, empty-element markers and so on).
//!
//! Rules file format: one rule per line, `pattern<TAB>replacement`. Lines
//! starting with `#` and blank lines are ignored. A pattern written between
//! slashes (`/.../`) is a regular expression that must match the whole
//! terminal, and its replacement may use `$1`-style group references; any
//! other pattern matches a terminal exactly. Rules run in file order, each
//! on the output of the previous one. A terminal rewritten to the empty
//! string is removed from the corpus.

use regex::Regex;
use thiserror::Error;

use crate::corpus::{CorpusItem, NormalizedCorpus};

#[derive(Debug, Clone)]
pub enum Pattern {
    Exact(String),
    Regex(Regex),
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Pattern::Exact(a), Pattern::Exact(b)) => a == b,
            (Pattern::Regex(a), Pattern::Regex(b)) => a.as_str() == b.as_str(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    pub pattern: Pattern,
    pub replacement: String,
}

#[derive(Debug, Error)]
pub enum RewriteError {
    #[error("rules line {line}: expected `pattern<TAB>replacement`")]
    MissingTab { line: usize },
    #[error("rules line {line}: empty pattern")]
    EmptyPattern { line: usize },
    #[error("rules line {line}: {source}")]
    BadRegex {
        line: usize,
        #[source]
        source: regex::Error,
    },
}

impl RewriteRule {
    pub fn exact(pattern: impl Into<String>, replacement: impl Into<String>) -> Self {
        RewriteRule {
            pattern: Pattern::Exact(pattern.into()),
            replacement: replacement.into(),
        }
    }

    /// A whole-token regular expression rule.
    pub fn regex(pattern: &str, replacement: impl Into<String>) -> Result<Self, regex::Error> {
        Ok(RewriteRule {
            pattern: Pattern::Regex(Regex::new(&format!("^(?:{pattern})$"))?),
            replacement: replacement.into(),
        })
    }

    /// Parse a rules file.
    pub fn parse_rules(text: &str) -> Result<Vec<RewriteRule>, RewriteError> {
        let mut rules = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (pattern, replacement) = line
                .split_once('\t')
                .ok_or(RewriteError::MissingTab { line: line_no })?;
            if pattern.is_empty() {
                return Err(RewriteError::EmptyPattern { line: line_no });
            }
            let rule = match pattern
                .strip_prefix('/')
                .and_then(|p| p.strip_suffix('/'))
                .filter(|p| !p.is_empty())
            {
                Some(re) => RewriteRule::regex(re, replacement)
                    .map_err(|source| RewriteError::BadRegex { line: line_no, source })?,
                None => RewriteRule::exact(pattern, replacement),
            };
            rules.push(rule);
        }
        Ok(rules)
    }

    /// Rewrite one terminal. Returns `None` when the rule does not apply.
    pub fn apply(&self, text: &str) -> Option<String> {
        match &self.pattern {
            Pattern::Exact(p) => (p == text).then(|| self.replacement.clone()),
            Pattern::Regex(re) => re
                .is_match(text)
                .then(|| re.replace(text, self.replacement.as_str()).into_owned()),
        }
    }
}

/// Rules that drop Penn Treebank empty-element terminals such as `*`,
/// `*T*-1`, `*U*`, `*?*` and `*EXP*-2`.
///
/// The null complementizer `0` is left alone since rules see terminal text
/// only and cannot tell it from a numeral.
pub fn empty_element_rules() -> Vec<RewriteRule> {
    vec![RewriteRule::regex(r"\*(?:[A-Z?]+\*)?(?:-\d+)?", "").expect("static regex")]
}

/// Apply `rules` to every terminal of `corpus`. Terminals rewritten to
/// nothing are removed and later terminals renumbered; trees are unchanged.
pub fn apply_rewrites(corpus: &NormalizedCorpus, rules: &[RewriteRule]) -> NormalizedCorpus {
    if rules.is_empty() {
        return corpus.clone();
    }
    let mut items = Vec::with_capacity(corpus.items().len());
    let mut terminal_locations = Vec::with_capacity(corpus.terminal_count());
    let mut locations = corpus.terminal_locations().iter();
    for item in corpus.items() {
        match item {
            CorpusItem::Terminal(text) => {
                let location = *locations.next().expect("validated corpus");
                let mut current = text.clone();
                for rule in rules {
                    if let Some(next) = rule.apply(&current) {
                        current = next;
                    }
                }
                let current = current.trim();
                if !current.is_empty() {
                    items.push(CorpusItem::Terminal(current.to_string()));
                    terminal_locations.push(location);
                }
            }
            other => items.push(other.clone()),
        }
    }
    NormalizedCorpus::from_parts_unchecked(
        items,
        terminal_locations,
        corpus.tree_locations().to_vec(),
        corpus.source_id().to_string(),
    )
}
