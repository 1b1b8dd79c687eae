//! Detection of aligned subtrees.
//!
//! Left subtrees are grouped by yield (a group is one unary chain, or a
//! single tree). Each group's yield is carried through δ and looked up in
//! the right corpus's [`YieldIndex`]. Chains of equal length are paired
//! off in increasing index order as strict alignments; chains of unequal
//! length become one potential alignment.

use std::fmt;

use crate::delta::DeltaMap;
use crate::subtree::{build_yield_index, Span, Subtree, YieldIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictAlignment {
    pub left: usize,
    pub right: usize,
}

/// Two unary chains over corresponding yields whose lengths differ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PotentialAlignment {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnalignableReason {
    /// A yield endpoint has no counterpart under δ.
    EndpointUnmapped,
    /// No right subtree has the mapped yield.
    NoRightEntry,
    /// Endpoints correspond but a terminal inside the span is unmatched.
    InteriorMismatch,
}

impl UnalignableReason {
    pub fn code(self) -> &'static str {
        match self {
            UnalignableReason::EndpointUnmapped => "endpoint-unmapped",
            UnalignableReason::NoRightEntry => "no-right-entry",
            UnalignableReason::InteriorMismatch => "interior-mismatch",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        [
            UnalignableReason::EndpointUnmapped,
            UnalignableReason::NoRightEntry,
            UnalignableReason::InteriorMismatch,
        ]
        .into_iter()
        .find(|r| r.code() == code)
    }
}

impl fmt::Display for UnalignableReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unalignable {
    pub tree: usize,
    pub reason: UnalignableReason,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AlignOptions {
    /// Compare yield endpoints only, without requiring every terminal in
    /// both spans to be matched.
    pub endpoints_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alignments {
    pub strict: Vec<StrictAlignment>,
    pub potential: Vec<PotentialAlignment>,
    pub unalignable: Vec<Unalignable>,
}

/// `⟨δ(i), δ(j)⟩`, or `None` when either endpoint is outside δ's domain.
pub fn map_yield(span: Span, delta: &DeltaMap) -> Option<Span> {
    Some(Span::new(delta.image(span.first)?, delta.image(span.last)?))
}

/// Dense lookups over δ for repeated span queries.
struct DeltaLookup {
    image: Vec<Option<usize>>,
    // domain_prefix[i] = number of left terminals <= i in δ's domain
    domain_prefix: Vec<usize>,
}

impl DeltaLookup {
    fn new(delta: &DeltaMap) -> Self {
        let n = delta.left_len();
        let mut image = vec![None; n + 1];
        for p in delta.pairs() {
            image[p.left] = Some(p.right);
        }
        let mut domain_prefix = vec![0; n + 1];
        for i in 1..=n {
            domain_prefix[i] = domain_prefix[i - 1] + usize::from(image[i].is_some());
        }
        DeltaLookup {
            image,
            domain_prefix,
        }
    }

    fn map(&self, span: Span) -> Option<Span> {
        let first = (*self.image.get(span.first)?)?;
        let last = (*self.image.get(span.last)?)?;
        Some(Span::new(first, last))
    }

    /// Every terminal of `left` is in δ's domain and every terminal of its
    /// image span is in δ's range.
    fn covers(&self, left: Span, right: Span) -> bool {
        let mapped = self.domain_prefix[left.last] - self.domain_prefix[left.first - 1];
        mapped == left.width() && mapped == right.width()
    }
}

pub fn align_trees(
    left_subtrees: &[Subtree],
    right_index: &YieldIndex,
    delta: &DeltaMap,
    options: AlignOptions,
) -> Alignments {
    let lookup = DeltaLookup::new(delta);
    let left_index = build_yield_index(left_subtrees);
    let mut out = Alignments::default();

    for tree in left_subtrees {
        let Some(span) = tree.yield_span else { continue };
        let chain = left_index.get(span).expect("indexed");
        if chain[0] != tree.index {
            continue;
        }
        let reject = |out: &mut Alignments, reason| {
            out.unalignable
                .extend(chain.iter().map(|&tree| Unalignable { tree, reason }));
        };
        let Some(mapped) = lookup.map(span) else {
            reject(&mut out, UnalignableReason::EndpointUnmapped);
            continue;
        };
        let Some(right_chain) = right_index.get(mapped) else {
            reject(&mut out, UnalignableReason::NoRightEntry);
            continue;
        };
        if !options.endpoints_only && !lookup.covers(span, mapped) {
            reject(&mut out, UnalignableReason::InteriorMismatch);
            continue;
        }
        if chain.len() == right_chain.len() {
            out.strict.extend(
                chain
                    .iter()
                    .zip(right_chain)
                    .map(|(&left, &right)| StrictAlignment { left, right }),
            );
        } else {
            out.potential.push(PotentialAlignment {
                left: chain.to_vec(),
                right: right_chain.to_vec(),
            });
        }
    }
    out.strict.sort_unstable();
    out.unalignable.sort_unstable();
    out
}
