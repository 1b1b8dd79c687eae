//! Tree alignment between two structurally annotated corpora of the same
//! text.
//!
//! Terminals of the two corpora are paired by a minimal diff (the delta
//! map), then subtrees whose yields correspond under that map are reported
//! as aligned. Output is standoff annotation: tables of indices and byte
//! offsets into the untouched source files, plus agreement statistics.
//!
//! ```
//! use treealign_core::normalize::normalize_generic;
//! use treealign_core::pipeline::{align_corpora, PipelineOptions};
//!
//! let left = normalize_generic(b"{ { the cat } sat }", "left").unwrap();
//! let right = normalize_generic(b"{ { The cat } { sat } }", "right").unwrap();
//! let report = align_corpora(&left, &right, &PipelineOptions::default());
//! assert_eq!(report.alignments.strict.len(), 2);
//! ```

pub mod align;
pub mod corpus;
pub mod delta;
mod diff;
pub mod normalize;
pub mod pipeline;
pub mod report;
pub mod subtree;

pub use align::{
    align_trees, map_yield, AlignOptions, Alignments, PotentialAlignment, StrictAlignment,
    Unalignable, UnalignableReason,
};
pub use corpus::{CorpusItem, NormalizedCorpus, SpanLocation, TreeLocation, Violation};
pub use delta::{compute_delta, minimal_matches, token_eq, Comparator, DeltaMap, DeltaPair};
pub use normalize::{apply_rewrites, FormatAdapter, NormalizeError, RewriteRule, SourceFormat};
pub use pipeline::{align_corpora, PipelineOptions};
pub use report::{
    compute_stats, write_generic, write_report, AlignmentReport, ReportError, ReportTables,
    Statistics,
};
pub use subtree::{
    build_yield_index, dominance_relation, enumerate_subtrees, Dominance, Span, Subtree,
    YieldIndex,
};
