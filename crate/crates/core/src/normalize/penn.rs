//! Penn Treebank bracketed files.
//!
//! Every `(` becomes an LSD and every `)` an RSD, so a preterminal
//! `(DT The)` is a unary tree over its word. The first atom directly after
//! an opening parenthesis is the node label and is dropped; any later atom
//! is a terminal. Lines starting with `*x*` (the banner of the combined
//! `.mrg` files) are skipped. Empty groups `()` are kept as trees with an
//! empty yield.

use crate::corpus::{CorpusItem, NormalizedCorpus, SpanLocation, TreeLocation};

use super::{decode, FormatAdapter, NormalizeError};

pub struct Penn;

impl FormatAdapter for Penn {
    fn format_name(&self) -> &'static str {
        "penn"
    }

    fn normalize(
        &self,
        source: &[u8],
        source_id: &str,
    ) -> Result<NormalizedCorpus, NormalizeError> {
        normalize_penn(source, source_id)
    }

    fn cleanup_token(&self, raw: &str) -> String {
        raw.trim().to_string()
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
    line_start: bool,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text,
            pos: 0,
            line_start: true,
        }
    }

    fn skip_line(&mut self) {
        match self.text[self.pos..].find('\n') {
            Some(n) => self.pos += n,
            None => self.pos = self.text.len(),
        }
    }
}

impl<'a> Iterator for Lexer<'a> {
    type Item = (usize, Token<'a>);

    fn next(&mut self) -> Option<Self::Item> {
        let bytes = self.text.as_bytes();
        loop {
            let b = *bytes.get(self.pos)?;
            match b {
                b'\n' => {
                    self.line_start = true;
                    self.pos += 1;
                }
                b if b.is_ascii_whitespace() => self.pos += 1,
                b'*' if self.line_start && self.text[self.pos..].starts_with("*x*") => {
                    self.skip_line();
                }
                b'(' | b')' => {
                    let start = self.pos;
                    self.pos += 1;
                    self.line_start = false;
                    let tok = if b == b'(' { Token::Open } else { Token::Close };
                    return Some((start, tok));
                }
                _ => {
                    let start = self.pos;
                    let len = bytes[start..]
                        .iter()
                        .position(|&c| c.is_ascii_whitespace() || c == b'(' || c == b')')
                        .unwrap_or(bytes.len() - start);
                    self.pos += len;
                    self.line_start = false;
                    return Some((start, Token::Atom(&self.text[start..start + len])));
                }
            }
        }
    }
}

struct OpenGroup {
    tree: usize,
    expecting_label: bool,
}

pub fn normalize_penn(source: &[u8], source_id: &str) -> Result<NormalizedCorpus, NormalizeError> {
    let text = decode(source)?;
    let mut items = Vec::new();
    let mut terminals = Vec::new();
    let mut trees: Vec<TreeLocation> = Vec::new();
    let mut open: Vec<OpenGroup> = Vec::new();

    for (offset, token) in Lexer::new(text) {
        match token {
            Token::Open => {
                if let Some(parent) = open.last_mut() {
                    parent.expecting_label = false;
                }
                let span = SpanLocation::new(offset, offset + 1);
                open.push(OpenGroup {
                    tree: trees.len(),
                    expecting_label: true,
                });
                trees.push(TreeLocation {
                    lsd: span,
                    rsd: span,
                });
                items.push(CorpusItem::Lsd);
            }
            Token::Close => {
                let group = open
                    .pop()
                    .ok_or(NormalizeError::UnexpectedClose { offset })?;
                trees[group.tree].rsd = SpanLocation::new(offset, offset + 1);
                items.push(CorpusItem::Rsd);
            }
            Token::Atom(atom) => match open.last_mut() {
                Some(group) if group.expecting_label => group.expecting_label = false,
                _ => {
                    items.push(CorpusItem::Terminal(atom.to_string()));
                    terminals.push(SpanLocation::new(offset, offset + atom.len()));
                }
            },
        }
    }
    if let Some(first) = open.first() {
        return Err(NormalizeError::UnclosedAtEof {
            offset: trees[first.tree].lsd.byte_start,
            open: open.len(),
        });
    }
    Ok(NormalizedCorpus::new(items, terminals, trees, source_id)?)
}
