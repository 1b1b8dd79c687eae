//! Corpora reduced to terminals and structural delimiters.
//!
//! A [`NormalizedCorpus`] is the common currency of every later stage: the
//! item stream (terminals interleaved with left and right delimiters) plus
//! the standoff location tables that lead back to the source bytes.
//!
//! Terminal indices and subtree indices are 1-based throughout.

use std::fmt;

use thiserror::Error;

/// One element of the normalized item stream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CorpusItem {
    Terminal(String),
    /// Left structural delimiter.
    Lsd,
    /// Right structural delimiter.
    Rsd,
}

impl CorpusItem {
    pub fn terminal(text: impl Into<String>) -> Self {
        CorpusItem::Terminal(text.into())
    }

    pub fn as_terminal(&self) -> Option<&str> {
        match self {
            CorpusItem::Terminal(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, CorpusItem::Terminal(_))
    }
}

/// Half-open byte range `[start, end)` into a source file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanLocation {
    pub byte_start: usize,
    pub byte_end: usize,
}

impl SpanLocation {
    pub fn new(byte_start: usize, byte_end: usize) -> Self {
        SpanLocation {
            byte_start,
            byte_end,
        }
    }

    pub fn len(&self) -> usize {
        self.byte_end.saturating_sub(self.byte_start)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Slice `source` by this span. Returns `None` if out of bounds.
    pub fn slice<'a>(&self, source: &'a [u8]) -> Option<&'a [u8]> {
        source.get(self.byte_start..self.byte_end)
    }
}

/// Location of a subtree: the bytes of its left and its matching right
/// delimiter. Anything between them (labels, attributes) is part of the tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeLocation {
    pub lsd: SpanLocation,
    pub rsd: SpanLocation,
}

impl TreeLocation {
    /// The full byte range from the start of the left delimiter to the end
    /// of the right one.
    pub fn full(&self) -> SpanLocation {
        SpanLocation::new(self.lsd.byte_start, self.rsd.byte_end)
    }
}

/// A violated corpus invariant. Item positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("item {item}: right delimiter with no open left delimiter")]
    UnmatchedRsd { item: usize },
    #[error("{open} unclosed left delimiter(s) at end of corpus (first at item {first_item})")]
    UnclosedLsd { open: usize, first_item: usize },
    #[error("item {item}: terminal with empty text")]
    EmptyTerminal { item: usize },
    #[error("{terminals} terminals but {locations} terminal locations")]
    TerminalLocationCount { terminals: usize, locations: usize },
    #[error("{trees} left delimiters but {locations} tree locations")]
    TreeLocationCount { trees: usize, locations: usize },
    #[error("terminal {index}: empty byte span {span:?}")]
    BadTerminalSpan { index: usize, span: SpanLocation },
    #[error("tree {index}: malformed delimiter spans {location:?}")]
    BadTreeSpan { index: usize, location: TreeLocation },
}

/// A corpus as a sequence of terminals and properly nested delimiters,
/// with location tables back to its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedCorpus {
    items: Vec<CorpusItem>,
    terminal_locations: Vec<SpanLocation>,
    tree_locations: Vec<TreeLocation>,
    source_id: String,
}

impl NormalizedCorpus {
    /// Build a corpus from parts, checking every invariant.
    pub fn new(
        items: Vec<CorpusItem>,
        terminal_locations: Vec<SpanLocation>,
        tree_locations: Vec<TreeLocation>,
        source_id: impl Into<String>,
    ) -> Result<Self, Violation> {
        let corpus = NormalizedCorpus {
            items,
            terminal_locations,
            tree_locations,
            source_id: source_id.into(),
        };
        corpus.validate()?;
        Ok(corpus)
    }

    /// Build a corpus from items alone. Locations are those the items would
    /// occupy when written out in the generic interchange format.
    pub fn from_items(
        items: Vec<CorpusItem>,
        source_id: impl Into<String>,
    ) -> Result<Self, Violation> {
        let (terminal_locations, tree_locations) = generic_layout(&items)?;
        NormalizedCorpus::new(items, terminal_locations, tree_locations, source_id)
    }

    pub fn empty(source_id: impl Into<String>) -> Self {
        NormalizedCorpus {
            items: Vec::new(),
            terminal_locations: Vec::new(),
            tree_locations: Vec::new(),
            source_id: source_id.into(),
        }
    }

    pub(crate) fn from_parts_unchecked(
        items: Vec<CorpusItem>,
        terminal_locations: Vec<SpanLocation>,
        tree_locations: Vec<TreeLocation>,
        source_id: String,
    ) -> Self {
        NormalizedCorpus {
            items,
            terminal_locations,
            tree_locations,
            source_id,
        }
    }

    pub fn items(&self) -> &[CorpusItem] {
        &self.items
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn terminal_locations(&self) -> &[SpanLocation] {
        &self.terminal_locations
    }

    pub fn tree_locations(&self) -> &[TreeLocation] {
        &self.tree_locations
    }

    /// Location of terminal `index` (1-based).
    pub fn terminal_location(&self, index: usize) -> Option<SpanLocation> {
        index
            .checked_sub(1)
            .and_then(|i| self.terminal_locations.get(i))
            .copied()
    }

    /// Location of subtree `index` (1-based).
    pub fn tree_location(&self, index: usize) -> Option<TreeLocation> {
        index
            .checked_sub(1)
            .and_then(|i| self.tree_locations.get(i))
            .copied()
    }

    /// Terminal texts in order. Element `n - 1` is terminal `n`.
    pub fn terminals(&self) -> Vec<&str> {
        self.items.iter().filter_map(CorpusItem::as_terminal).collect()
    }

    pub fn terminal_count(&self) -> usize {
        self.terminal_locations.len()
    }

    pub fn tree_count(&self) -> usize {
        self.tree_locations.len()
    }

    pub fn validate(&self) -> Result<(), Violation> {
        validate_items(&self.items)?;
        let terminals = self.items.iter().filter(|i| i.is_terminal()).count();
        if terminals != self.terminal_locations.len() {
            return Err(Violation::TerminalLocationCount {
                terminals,
                locations: self.terminal_locations.len(),
            });
        }
        let trees = self
            .items
            .iter()
            .filter(|i| matches!(i, CorpusItem::Lsd))
            .count();
        if trees != self.tree_locations.len() {
            return Err(Violation::TreeLocationCount {
                trees,
                locations: self.tree_locations.len(),
            });
        }
        for (n, span) in self.terminal_locations.iter().enumerate() {
            if span.byte_start >= span.byte_end {
                return Err(Violation::BadTerminalSpan {
                    index: n + 1,
                    span: *span,
                });
            }
        }
        for (n, loc) in self.tree_locations.iter().enumerate() {
            if loc.lsd.byte_start >= loc.lsd.byte_end
                || loc.rsd.byte_start >= loc.rsd.byte_end
                || loc.lsd.byte_end > loc.rsd.byte_start
            {
                return Err(Violation::BadTreeSpan {
                    index: n + 1,
                    location: *loc,
                });
            }
        }
        Ok(())
    }
}

/// Check delimiter nesting and terminal text of a bare item sequence.
pub fn validate_items(items: &[CorpusItem]) -> Result<(), Violation> {
    let mut open: Vec<usize> = Vec::new();
    for (pos, item) in items.iter().enumerate() {
        match item {
            CorpusItem::Lsd => open.push(pos + 1),
            CorpusItem::Rsd => {
                if open.pop().is_none() {
                    return Err(Violation::UnmatchedRsd { item: pos + 1 });
                }
            }
            CorpusItem::Terminal(t) => {
                if t.is_empty() {
                    return Err(Violation::EmptyTerminal { item: pos + 1 });
                }
            }
        }
    }
    match open.first() {
        None => Ok(()),
        Some(&first_item) => Err(Violation::UnclosedLsd {
            open: open.len(),
            first_item,
        }),
    }
}

/// Byte layout of `items` as written by the generic writer: tokens joined by
/// single spaces, terminals escaped.
pub(crate) fn generic_layout(
    items: &[CorpusItem],
) -> Result<(Vec<SpanLocation>, Vec<TreeLocation>), Violation> {
    validate_items(items)?;
    let mut terminals = Vec::new();
    let mut trees: Vec<TreeLocation> = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    let mut offset = 0usize;
    for (pos, item) in items.iter().enumerate() {
        if pos > 0 {
            offset += 1;
        }
        match item {
            CorpusItem::Lsd => {
                open.push(trees.len());
                let span = SpanLocation::new(offset, offset + 1);
                trees.push(TreeLocation {
                    lsd: span,
                    rsd: span,
                });
                offset += 1;
            }
            CorpusItem::Rsd => {
                let tree = open.pop().expect("validated");
                trees[tree].rsd = SpanLocation::new(offset, offset + 1);
                offset += 1;
            }
            CorpusItem::Terminal(t) => {
                let len = crate::normalize::generic::escaped_len(t);
                terminals.push(SpanLocation::new(offset, offset + len));
                offset += len;
            }
        }
    }
    Ok((terminals, trees))
}

impl fmt::Display for NormalizedCorpus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::normalize::generic::to_generic_string(&self.items))
    }
}
