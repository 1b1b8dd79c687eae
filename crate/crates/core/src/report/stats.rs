//! Agreement statistics.
//!
//! Maximal trees of depth one (maximal trees directly dominating only
//! terminals) mark textual units rather than sentence-internal structure,
//! so they are excluded from the alignable population on both sides, as
//! are trees with an empty yield.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::align::Alignments;
use crate::corpus::NormalizedCorpus;
use crate::delta::DeltaMap;
use crate::subtree::Subtree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DepthRow {
    pub subtrees: usize,
    /// Subtrees at this depth appearing in any strict alignment.
    pub strictly_aligned: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CorpusStats {
    pub source: String,
    pub terminal_count: usize,
    pub matched_terminal_count: usize,
    pub subtree_count: usize,
    pub maximal_tree_count: usize,
    /// Maximal trees with a non-empty yield and no subtree children.
    pub depth_one_maximal_count: usize,
    /// Maximal trees containing at least one subtree.
    pub maximal_deeper_count: usize,
    pub empty_yield_count: usize,
    pub alignable_count: usize,
    /// Strict pairs in which both members are alignable.
    pub strictly_aligned_count: usize,
    pub depth_histogram: BTreeMap<usize, DepthRow>,
}

fn pct(count: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * count as f64 / total as f64
    }
}

impl CorpusStats {
    pub fn matched_terminal_pct(&self) -> f64 {
        pct(self.matched_terminal_count, self.terminal_count)
    }

    pub fn aligned_pct(&self) -> f64 {
        pct(self.strictly_aligned_count, self.alignable_count)
    }

    fn collect(
        corpus: &NormalizedCorpus,
        subtrees: &[Subtree],
        matched_terminals: usize,
        aligned: &[bool],
        strictly_aligned_count: usize,
    ) -> Self {
        let mut stats = CorpusStats {
            source: corpus.source_id().to_string(),
            terminal_count: corpus.terminal_count(),
            matched_terminal_count: matched_terminals,
            subtree_count: subtrees.len(),
            strictly_aligned_count,
            ..CorpusStats::default()
        };
        for tree in subtrees {
            if tree.is_maximal() {
                stats.maximal_tree_count += 1;
                if tree.child_trees > 0 {
                    stats.maximal_deeper_count += 1;
                }
            }
            if tree.yield_span.is_none() {
                stats.empty_yield_count += 1;
            } else if tree.is_depth_one_maximal() {
                stats.depth_one_maximal_count += 1;
            }
            let row = stats.depth_histogram.entry(tree.depth).or_default();
            row.subtrees += 1;
            if aligned[tree.index - 1] {
                row.strictly_aligned += 1;
            }
        }
        stats.alignable_count =
            stats.subtree_count - stats.depth_one_maximal_count - stats.empty_yield_count;
        stats
    }

    fn render(&self, side: &str, out: &mut String) {
        let mut line = |key: &str, value: String| {
            let _ = writeln!(out, "{side}.{key}: {value}");
        };
        line("source", self.source.clone());
        line("terminal_count", self.terminal_count.to_string());
        line("matched_terminal_count", self.matched_terminal_count.to_string());
        line("matched_terminal_pct", format!("{:.1}", self.matched_terminal_pct()));
        line("subtree_count", self.subtree_count.to_string());
        line("maximal_tree_count", self.maximal_tree_count.to_string());
        line("depth_one_maximal_count", self.depth_one_maximal_count.to_string());
        line("maximal_deeper_count", self.maximal_deeper_count.to_string());
        line("empty_yield_count", self.empty_yield_count.to_string());
        line("alignable_count", self.alignable_count.to_string());
        line("strictly_aligned_count", self.strictly_aligned_count.to_string());
        line("aligned_pct", format!("{:.1}", self.aligned_pct()));
        for (depth, row) in &self.depth_histogram {
            line(
                &format!("depth.{depth}"),
                format!("subtrees={} strict={}", row.subtrees, row.strictly_aligned),
            );
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Statistics {
    pub left: CorpusStats,
    pub right: CorpusStats,
    pub strict_pairs: usize,
    pub potential_alignments: usize,
    pub mismatches: usize,
}

impl Statistics {
    /// Render as `key: value` lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.left.render("left", &mut out);
        self.right.render("right", &mut out);
        let _ = writeln!(out, "strict_pairs: {}", self.strict_pairs);
        let _ = writeln!(out, "potential_alignments: {}", self.potential_alignments);
        let _ = writeln!(out, "mismatches: {}", self.mismatches);
        out
    }
}

pub fn compute_stats(
    left: (&NormalizedCorpus, &[Subtree]),
    right: (&NormalizedCorpus, &[Subtree]),
    delta: &DeltaMap,
    alignments: &Alignments,
) -> Statistics {
    let (left_corpus, left_trees) = left;
    let (right_corpus, right_trees) = right;
    let mut left_aligned = vec![false; left_trees.len()];
    let mut right_aligned = vec![false; right_trees.len()];
    let alignable = |tree: &Subtree| tree.yield_span.is_some() && !tree.is_depth_one_maximal();
    let mut both_alignable = 0;
    for pair in &alignments.strict {
        left_aligned[pair.left - 1] = true;
        right_aligned[pair.right - 1] = true;
        if alignable(&left_trees[pair.left - 1]) && alignable(&right_trees[pair.right - 1]) {
            both_alignable += 1;
        }
    }
    Statistics {
        left: CorpusStats::collect(
            left_corpus,
            left_trees,
            delta.len(),
            &left_aligned,
            both_alignable,
        ),
        right: CorpusStats::collect(
            right_corpus,
            right_trees,
            delta.len(),
            &right_aligned,
            both_alignable,
        ),
        strict_pairs: alignments.strict.len(),
        potential_alignments: alignments.potential.len(),
        mismatches: delta.mismatches().count(),
    }
}
