//! The generic interchange format: whitespace-separated tokens where `{`
//! opens a tree, `}` closes it and everything else is a terminal. Terminals
//! that are literal braces are written `\{` and `\}`, a backslash as `\\`.

use crate::corpus::{CorpusItem, NormalizedCorpus, SpanLocation, TreeLocation};

use super::{decode, FormatAdapter, NormalizeError};

pub struct Generic;

impl FormatAdapter for Generic {
    fn format_name(&self) -> &'static str {
        "generic"
    }

    fn normalize(
        &self,
        source: &[u8],
        source_id: &str,
    ) -> Result<NormalizedCorpus, NormalizeError> {
        normalize_generic(source, source_id)
    }

    fn cleanup_token(&self, raw: &str) -> String {
        unescape(raw.trim())
    }
}

pub fn normalize_generic(
    source: &[u8],
    source_id: &str,
) -> Result<NormalizedCorpus, NormalizeError> {
    let text = decode(source)?;
    let mut items = Vec::new();
    let mut terminals = Vec::new();
    let mut trees: Vec<TreeLocation> = Vec::new();
    let mut open: Vec<usize> = Vec::new();

    for (start, token) in tokens(text) {
        let span = SpanLocation::new(start, start + token.len());
        match token {
            "{" => {
                open.push(trees.len());
                trees.push(TreeLocation {
                    lsd: span,
                    rsd: span,
                });
                items.push(CorpusItem::Lsd);
            }
            "}" => {
                let tree = open
                    .pop()
                    .ok_or(NormalizeError::UnexpectedClose { offset: start })?;
                trees[tree].rsd = span;
                items.push(CorpusItem::Rsd);
            }
            _ => {
                items.push(CorpusItem::Terminal(unescape(token)));
                terminals.push(span);
            }
        }
    }
    if let Some(&first) = open.first() {
        return Err(NormalizeError::UnclosedAtEof {
            offset: trees[first].lsd.byte_start,
            open: open.len(),
        });
    }
    Ok(NormalizedCorpus::new(items, terminals, trees, source_id)?)
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split(|c: char| c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(move |t| (super::offset_in(text, t), t))
}

pub(crate) fn unescape(token: &str) -> String {
    let mut out = String::with_capacity(token.len());
    let mut chars = token.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.clone().next() {
                Some(next @ ('{' | '}' | '\\')) => {
                    out.push(next);
                    chars.next();
                }
                _ => out.push('\\'),
            }
        } else {
            out.push(c);
        }
    }
    out
}

pub(crate) fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    for c in text.chars() {
        if matches!(c, '{' | '}' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

pub(crate) fn escaped_len(text: &str) -> usize {
    text.len() + text.bytes().filter(|b| matches!(b, b'{' | b'}' | b'\\')).count()
}

/// Render items in the generic format, space separated.
pub(crate) fn to_generic_string(items: &[CorpusItem]) -> String {
    let mut out = String::new();
    for (n, item) in items.iter().enumerate() {
        if n > 0 {
            out.push(' ');
        }
        match item {
            CorpusItem::Lsd => out.push('{'),
            CorpusItem::Rsd => out.push('}'),
            CorpusItem::Terminal(t) => out.push_str(&escape(t)),
        }
    }
    out
}
