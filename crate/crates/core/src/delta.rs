//! Alignment of terminal elements.
//!
//! The delta map pairs left terminal indices with right ones. It is built
//! from a longest common subsequence of the two terminal sequences (under a
//! [`Comparator`]) plus single-token mismatches that sit between two exact
//! matches on both sides.

use std::borrow::Cow;
use std::collections::HashMap;

use crate::diff::lcs_pairs;

/// Token equivalence used when diffing terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Comparator {
    pub ignore_case: bool,
    /// Drop all whitespace, internal and surrounding, before comparing.
    pub ignore_space: bool,
}

impl Default for Comparator {
    fn default() -> Self {
        Comparator {
            ignore_case: true,
            ignore_space: true,
        }
    }
}

impl Comparator {
    pub const EXACT: Comparator = Comparator {
        ignore_case: false,
        ignore_space: false,
    };

    /// Canonical form of `token`: two tokens are equal iff their keys are.
    pub fn key<'a>(&self, token: &'a str) -> Cow<'a, str> {
        let mut key = Cow::Borrowed(token);
        if self.ignore_space && key.chars().any(char::is_whitespace) {
            key = Cow::Owned(key.chars().filter(|c| !c.is_whitespace()).collect());
        }
        if self.ignore_case && key.chars().any(|c| c.to_lowercase().ne(std::iter::once(c))) {
            key = Cow::Owned(key.to_lowercase());
        }
        key
    }
}

pub fn token_eq(a: &str, b: &str, cmp: Comparator) -> bool {
    cmp.key(a) == cmp.key(b)
}

/// Map both sequences onto shared integer symbols, equal iff `token_eq`.
fn intern<S: AsRef<str>>(left: &[S], right: &[S], cmp: Comparator) -> (Vec<u32>, Vec<u32>) {
    let mut table: HashMap<String, u32> = HashMap::new();
    let mut symbols = |seq: &[S]| -> Vec<u32> {
        seq.iter()
            .map(|t| {
                let key = cmp.key(t.as_ref());
                if let Some(&sym) = table.get(key.as_ref()) {
                    return sym;
                }
                let sym = table.len() as u32;
                table.insert(key.into_owned(), sym);
                sym
            })
            .collect()
    };
    let l = symbols(left);
    let r = symbols(right);
    (l, r)
}

/// A longest common subsequence of `left` and `right` under `cmp`, as
/// 1-based `(i, j)` pairs, ascending.
pub fn minimal_matches<S: AsRef<str>>(
    left: &[S],
    right: &[S],
    cmp: Comparator,
) -> Vec<(usize, usize)> {
    let (l, r) = intern(left, right, cmp);
    lcs_pairs(&l, &r)
        .into_iter()
        .map(|(i, j)| (i + 1, j + 1))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaPair {
    pub left: usize,
    pub right: usize,
    /// False for a pair admitted by the single-mismatch rule.
    pub exact: bool,
}

/// Monotone, bijective, partial map from left to right terminal indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeltaMap {
    pairs: Vec<DeltaPair>,
    left_len: usize,
    right_len: usize,
}

impl DeltaMap {
    /// Build a map from explicit pairs, checking bounds, monotonicity and
    /// the placement of mismatch pairs. Token equality is not checked.
    pub fn from_pairs(
        mut pairs: Vec<DeltaPair>,
        left_len: usize,
        right_len: usize,
    ) -> Result<Self, String> {
        pairs.sort();
        let map = DeltaMap {
            pairs,
            left_len,
            right_len,
        };
        map.check_structure()?;
        Ok(map)
    }

    /// The identity map over `n` terminals, all exact.
    pub fn identity(n: usize) -> Self {
        DeltaMap {
            pairs: (1..=n)
                .map(|i| DeltaPair {
                    left: i,
                    right: i,
                    exact: true,
                })
                .collect(),
            left_len: n,
            right_len: n,
        }
    }

    pub fn pairs(&self) -> &[DeltaPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn left_len(&self) -> usize {
        self.left_len
    }

    pub fn right_len(&self) -> usize {
        self.right_len
    }

    pub fn exact_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.exact).count()
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &DeltaPair> {
        self.pairs.iter().filter(|p| !p.exact)
    }

    /// δ(i), if defined.
    pub fn image(&self, left: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&left, |p| p.left)
            .ok()
            .map(|n| self.pairs[n].right)
    }

    /// δ⁻¹(j), if defined.
    pub fn preimage(&self, right: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&right, |p| p.right)
            .ok()
            .map(|n| self.pairs[n].left)
    }

    /// The map with left and right exchanged.
    pub fn inverse(&self) -> DeltaMap {
        DeltaMap {
            pairs: self
                .pairs
                .iter()
                .map(|p| DeltaPair {
                    left: p.right,
                    right: p.left,
                    exact: p.exact,
                })
                .collect(),
            left_len: self.right_len,
            right_len: self.left_len,
        }
    }

    fn check_structure(&self) -> Result<(), String> {
        for p in &self.pairs {
            if p.left == 0 || p.left > self.left_len || p.right == 0 || p.right > self.right_len {
                return Err(format!("pair ({}, {}) out of range", p.left, p.right));
            }
        }
        for w in self.pairs.windows(2) {
            if !(w[0].left < w[1].left && w[0].right < w[1].right) {
                return Err(format!(
                    "pairs ({}, {}) and ({}, {}) are not strictly monotone",
                    w[0].left, w[0].right, w[1].left, w[1].right
                ));
            }
        }
        for (n, p) in self.pairs.iter().enumerate() {
            if p.exact {
                continue;
            }
            let interior = 1 < p.left
                && p.left < self.left_len
                && 1 < p.right
                && p.right < self.right_len;
            let flanked = n > 0
                && n + 1 < self.pairs.len()
                && self.pairs[n - 1]
                    == DeltaPair {
                        left: p.left - 1,
                        right: p.right - 1,
                        exact: true,
                    }
                && self.pairs[n + 1]
                    == DeltaPair {
                        left: p.left + 1,
                        right: p.right + 1,
                        exact: true,
                    };
            if !(interior && flanked) {
                return Err(format!(
                    "mismatch pair ({}, {}) is not an interior position flanked by exact pairs",
                    p.left, p.right
                ));
            }
        }
        Ok(())
    }

    /// Check every map invariant against the terminal sequences it was
    /// computed from.
    pub fn check_invariants<S: AsRef<str>>(
        &self,
        left: &[S],
        right: &[S],
        cmp: Comparator,
    ) -> Result<(), String> {
        if left.len() != self.left_len || right.len() != self.right_len {
            return Err("sequence lengths differ from the map's".into());
        }
        self.check_structure()?;
        for p in &self.pairs {
            let eq = token_eq(left[p.left - 1].as_ref(), right[p.right - 1].as_ref(), cmp);
            if eq != p.exact {
                return Err(format!(
                    "pair ({}, {}) flagged exact={} but token_eq={}",
                    p.left, p.right, p.exact, eq
                ));
            }
        }
        Ok(())
    }
}

/// Compute δ between two terminal sequences.
pub fn compute_delta<S: AsRef<str>>(left: &[S], right: &[S], cmp: Comparator) -> DeltaMap {
    let exact = minimal_matches(left, right, cmp);
    let mut pairs = Vec::with_capacity(exact.len() + exact.len() / 16);
    for (n, &(i, j)) in exact.iter().enumerate() {
        if n > 0 {
            let (pi, pj) = exact[n - 1];
            // Exactly one unmatched terminal on each side between two exact
            // matches. Interior bounds follow from the flanking pairs.
            if i == pi + 2 && j == pj + 2 {
                pairs.push(DeltaPair {
                    left: pi + 1,
                    right: pj + 1,
                    exact: false,
                });
            }
        }
        pairs.push(DeltaPair {
            left: i,
            right: j,
            exact: true,
        });
    }
    DeltaMap {
        pairs,
        left_len: left.len(),
        right_len: right.len(),
    }
}
