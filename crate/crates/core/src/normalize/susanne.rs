//! Susanne corpus files.
//!
//! One record per line. Full Susanne lines have six TAB-separated fields
//! (reference, status, wordtag, word, lemma, parse); two-column
//! `word parse` lines are accepted as well. In the parse field the word
//! itself is written `.`; each `[Tag` before it opens a tree and each
//! `Tag]` after it closes one.

use crate::corpus::{CorpusItem, NormalizedCorpus, SpanLocation, TreeLocation};

use super::{decode, offset_in, FormatAdapter, NormalizeError};

pub struct Susanne;

impl FormatAdapter for Susanne {
    fn format_name(&self) -> &'static str {
        "susanne"
    }

    fn normalize(
        &self,
        source: &[u8],
        source_id: &str,
    ) -> Result<NormalizedCorpus, NormalizeError> {
        normalize_susanne(source, source_id)
    }

    fn cleanup_token(&self, raw: &str) -> String {
        raw.trim().to_string()
    }
}

/// Opening and closing bracket segments of one parse field, as byte ranges
/// relative to the field.
#[derive(Debug, PartialEq, Eq)]
struct ParseField {
    opens: Vec<(usize, usize)>,
    closes: Vec<(usize, usize)>,
}

fn parse_field(field: &str) -> Result<ParseField, String> {
    let dot = field
        .find('.')
        .ok_or_else(|| format!("parse field `{field}` has no word placeholder `.`"))?;
    let (before, after) = (&field[..dot], &field[dot + 1..]);

    let mut opens = Vec::new();
    if !before.is_empty() {
        if !before.starts_with('[') {
            return Err(format!("parse field `{field}`: text before first `[`"));
        }
        if before.contains(']') {
            return Err(format!("parse field `{field}`: `]` before the word"));
        }
        let mut starts: Vec<usize> = before.match_indices('[').map(|(i, _)| i).collect();
        starts.push(before.len());
        opens.extend(starts.windows(2).map(|w| (w[0], w[1])));
    }

    let mut closes = Vec::new();
    if !after.is_empty() {
        if after.contains('[') {
            return Err(format!("parse field `{field}`: `[` after the word"));
        }
        if !after.ends_with(']') {
            return Err(format!("parse field `{field}`: text after last `]`"));
        }
        let base = dot + 1;
        let mut start = 0;
        for (i, _) in after.match_indices(']') {
            closes.push((base + start, base + i + 1));
            start = i + 1;
        }
    }
    Ok(ParseField { opens, closes })
}

/// Split a line into (word, parse) fields.
fn record_fields(line: &str) -> Option<(&str, &str)> {
    let tabbed: Vec<&str> = line.split('\t').collect();
    if tabbed.len() >= 6 {
        return Some((tabbed[3].trim(), tabbed[5].trim()));
    }
    let mut ws = line.split_whitespace();
    match (ws.next(), ws.next(), ws.next()) {
        (Some(word), Some(parse), None) => Some((word, parse)),
        _ => None,
    }
}

pub fn normalize_susanne(
    source: &[u8],
    source_id: &str,
) -> Result<NormalizedCorpus, NormalizeError> {
    let text = decode(source)?;
    let mut items = Vec::new();
    let mut terminals = Vec::new();
    let mut trees: Vec<TreeLocation> = Vec::new();
    let mut open: Vec<usize> = Vec::new();

    for (line_no, raw_line) in text.split('\n').enumerate() {
        let line = raw_line.trim_end_matches('\r');
        let line_offset = offset_in(text, line);
        if line.trim().is_empty() {
            continue;
        }
        let malformed = |reason: String| NormalizeError::MalformedLine {
            line: line_no + 1,
            offset: line_offset,
            reason,
        };
        let (word, parse) = record_fields(line)
            .ok_or_else(|| malformed("expected `word parse` or six TAB-separated fields".into()))?;
        if word.is_empty() {
            return Err(malformed("empty word field".into()));
        }
        let field = parse_field(parse).map_err(malformed)?;
        let parse_offset = offset_in(text, parse);

        for (s, e) in field.opens {
            let span = SpanLocation::new(parse_offset + s, parse_offset + e);
            open.push(trees.len());
            trees.push(TreeLocation {
                lsd: span,
                rsd: span,
            });
            items.push(CorpusItem::Lsd);
        }

        let word_offset = offset_in(text, word);
        items.push(CorpusItem::Terminal(word.to_string()));
        terminals.push(SpanLocation::new(word_offset, word_offset + word.len()));

        for (s, e) in field.closes {
            let span = SpanLocation::new(parse_offset + s, parse_offset + e);
            let tree = open
                .pop()
                .ok_or(NormalizeError::UnexpectedClose { offset: span.byte_start })?;
            trees[tree].rsd = span;
            items.push(CorpusItem::Rsd);
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
