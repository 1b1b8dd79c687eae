//! Subtree numbering, yields and the yield index.
//!
//! Subtrees are numbered by the order of their left delimiters, so a tree
//! always has a lower index than everything it dominates. The yield of a
//! subtree is the span of terminal indices inside its delimiters. Two
//! distinct subtrees can only share a yield if they sit on one chain of
//! unary branches; the [`YieldIndex`] therefore maps a yield to an ordered
//! list of subtree indices.

use std::collections::HashMap;
use std::fmt;

use crate::corpus::{CorpusItem, NormalizedCorpus};

/// Inclusive span `⟨first, last⟩` of 1-based terminal indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Span {
    pub first: usize,
    pub last: usize,
}

impl Span {
    pub fn new(first: usize, last: usize) -> Self {
        debug_assert!(first <= last);
        Span { first, last }
    }

    /// Number of terminals covered.
    pub fn width(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn contains(&self, terminal: usize) -> bool {
        self.first <= terminal && terminal <= self.last
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{},{}⟩", self.first, self.last)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    /// 1-based position of the left delimiter among all left delimiters.
    pub index: usize,
    /// `None` when the delimiters enclose no terminal.
    pub yield_span: Option<Span>,
    /// 1 for a maximal tree.
    pub depth: usize,
    /// Exactly one directly dominated item (terminal or subtree).
    pub is_unary: bool,
    /// Number of directly dominated subtrees.
    pub child_trees: usize,
    pub parent: Option<usize>,
    /// Item positions (0-based) of the left and the matching right delimiter.
    pub extent: (usize, usize),
}

impl Subtree {
    pub fn is_maximal(&self) -> bool {
        self.depth == 1
    }

    /// A maximal tree that directly dominates only terminals.
    pub fn is_depth_one_maximal(&self) -> bool {
        self.is_maximal() && self.child_trees == 0
    }

    pub fn dominance(&self, other: &Subtree) -> Dominance {
        let (s, e) = self.extent;
        let (os, oe) = other.extent;
        if s < os && oe < e {
            Dominance::Dominates
        } else if os < s && e < oe {
            Dominance::DominatedBy
        } else {
            Dominance::Disjoint
        }
    }
}

/// Relation of the first subtree to the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Dominates,
    DominatedBy,
    Disjoint,
}

/// Dominance between subtrees `t` and `t2` (1-based indices into
/// `subtrees`). Panics on out-of-range indices.
pub fn dominance_relation(t: usize, t2: usize, subtrees: &[Subtree]) -> Dominance {
    subtrees[t - 1].dominance(&subtrees[t2 - 1])
}

/// One [`Subtree`] per left delimiter, in index order. The corpus must be
/// valid.
pub fn enumerate_subtrees(corpus: &NormalizedCorpus) -> Vec<Subtree> {
    struct Open {
        tree: usize,
        terminals_before: usize,
        children: usize,
    }

    let mut subtrees: Vec<Subtree> = Vec::with_capacity(corpus.tree_count());
    let mut open: Vec<Open> = Vec::new();
    let mut terminals = 0usize;

    for (pos, item) in corpus.items().iter().enumerate() {
        match item {
            CorpusItem::Lsd => {
                let parent = open.last_mut().map(|p| {
                    p.children += 1;
                    subtrees[p.tree].child_trees += 1;
                    p.tree + 1
                });
                open.push(Open {
                    tree: subtrees.len(),
                    terminals_before: terminals,
                    children: 0,
                });
                subtrees.push(Subtree {
                    index: subtrees.len() + 1,
                    yield_span: None,
                    depth: open.len(),
                    is_unary: false,
                    child_trees: 0,
                    parent,
                    extent: (pos, pos),
                });
            }
            CorpusItem::Rsd => {
                let done = open.pop().expect("corpus delimiters are balanced");
                let tree = &mut subtrees[done.tree];
                tree.extent.1 = pos;
                tree.is_unary = done.children == 1;
                if terminals > done.terminals_before {
                    tree.yield_span = Some(Span::new(done.terminals_before + 1, terminals));
                }
            }
            CorpusItem::Terminal(_) => {
                terminals += 1;
                if let Some(top) = open.last_mut() {
                    top.children += 1;
                }
            }
        }
    }
    debug_assert!(open.is_empty());
    subtrees
}

/// Yield-keyed index of subtrees. Empty-yield subtrees are not indexed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct YieldIndex {
    table: HashMap<Span, Vec<usize>>,
}

impl YieldIndex {
    pub fn get(&self, span: Span) -> Option<&[usize]> {
        self.table.get(&span).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Total number of indexed subtrees.
    pub fn subtree_count(&self) -> usize {
        self.table.values().map(Vec::len).sum()
    }

    /// All entries, ordered by span.
    pub fn entries(&self) -> Vec<(Span, &[usize])> {
        let mut entries: Vec<_> = self
            .table
            .iter()
            .map(|(span, trees)| (*span, trees.as_slice()))
            .collect();
        entries.sort_by_key(|(span, _)| *span);
        entries
    }
}

pub fn build_yield_index(subtrees: &[Subtree]) -> YieldIndex {
    let mut table: HashMap<Span, Vec<usize>> = HashMap::with_capacity(subtrees.len());
    for tree in subtrees {
        if let Some(span) = tree.yield_span {
            table.entry(span).or_default().push(tree.index);
        }
    }
    for trees in table.values_mut() {
        trees.sort_unstable();
    }
    YieldIndex { table }
}
