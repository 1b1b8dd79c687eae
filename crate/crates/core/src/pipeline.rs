//! Normalized corpora in, alignment report out.

use crate::align::{align_trees, AlignOptions};
use crate::corpus::NormalizedCorpus;
use crate::delta::{compute_delta, Comparator};
use crate::report::{compute_stats, AlignmentReport};
use crate::subtree::{build_yield_index, enumerate_subtrees};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PipelineOptions {
    pub comparator: Comparator,
    pub align: AlignOptions,
}

/// Compute δ, index both corpora, detect aligned trees and gather
/// statistics. Rewrites, if any, must already have been applied.
pub fn align_corpora(
    left: &NormalizedCorpus,
    right: &NormalizedCorpus,
    options: &PipelineOptions,
) -> AlignmentReport {
    let delta = compute_delta(&left.terminals(), &right.terminals(), options.comparator);
    let left_trees = enumerate_subtrees(left);
    let right_trees = enumerate_subtrees(right);
    let right_index = build_yield_index(&right_trees);
    let alignments = align_trees(&left_trees, &right_index, &delta, options.align);
    let stats = compute_stats(
        (left, &left_trees),
        (right, &right_trees),
        &delta,
        &alignments,
    );
    AlignmentReport::assemble(left, right, delta, alignments, stats)
}
