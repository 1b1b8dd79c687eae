//! Standoff output: TSV tables, the summary and generic-format dumps.
//!
//! Files written by [`write_report`]:
//!
//! | file              | columns                                                   |
//! |-------------------|-----------------------------------------------------------|
//! | `delta.tsv`       | `left_idx right_idx exact`                                |
//! | `mismatches.tsv`  | `left_idx left_text right_idx right_text`                 |
//! | `strict.tsv`      | `left_tree_idx right_tree_idx`                            |
//! | `potential.tsv`   | `left_tree_idx_list right_tree_idx_list` (comma-joined)   |
//! | `unalignable.tsv` | `left_tree_idx reason`                                    |
//! | `locations.tsv`   | `side kind idx start end [rsd_start rsd_end]`             |
//! | `summary.txt`     | statistics as `key: value` lines                          |
//!
//! All indices are 1-based. Text fields escape backslash, TAB, CR and LF
//! as `\\`, `\t`, `\r` and `\n`.

mod stats;

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::align::{Alignments, PotentialAlignment, StrictAlignment, Unalignable, UnalignableReason};
use crate::corpus::{CorpusItem, NormalizedCorpus, SpanLocation, TreeLocation};
use crate::delta::{DeltaMap, DeltaPair};
use crate::normalize::generic::to_generic_string;

pub use stats::{compute_stats, CorpusStats, DepthRow, Statistics};

pub const DELTA_FILE: &str = "delta.tsv";
pub const MISMATCHES_FILE: &str = "mismatches.tsv";
pub const STRICT_FILE: &str = "strict.tsv";
pub const POTENTIAL_FILE: &str = "potential.tsv";
pub const UNALIGNABLE_FILE: &str = "unalignable.tsv";
pub const LOCATIONS_FILE: &str = "locations.tsv";
pub const SUMMARY_FILE: &str = "summary.txt";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("terminal {index} contains whitespace and cannot be written in generic format")]
    Unrepresentable { index: usize },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> ReportError + '_ {
    move |source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn code(self) -> &'static str {
        match self {
            Side::Left => "l",
            Side::Right => "r",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MismatchRow {
    pub left: usize,
    pub left_text: String,
    pub right: usize,
    pub right_text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Located {
    Terminal(SpanLocation),
    Tree(TreeLocation),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocationRow {
    pub side: Side,
    pub index: usize,
    pub location: Located,
}

/// The tables of a report, exactly as they appear on disk.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReportTables {
    pub delta: Vec<DeltaPair>,
    pub mismatches: Vec<MismatchRow>,
    pub strict: Vec<StrictAlignment>,
    pub potential: Vec<PotentialAlignment>,
    pub unalignable: Vec<Unalignable>,
    pub locations: Vec<LocationRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentReport {
    pub delta: DeltaMap,
    pub alignments: Alignments,
    pub tables: ReportTables,
    pub stats: Statistics,
}

impl AlignmentReport {
    pub fn assemble(
        left: &NormalizedCorpus,
        right: &NormalizedCorpus,
        delta: DeltaMap,
        alignments: Alignments,
        stats: Statistics,
    ) -> Self {
        let left_terms = left.terminals();
        let right_terms = right.terminals();
        let mismatches = delta
            .mismatches()
            .map(|p| MismatchRow {
                left: p.left,
                left_text: left_terms[p.left - 1].to_string(),
                right: p.right,
                right_text: right_terms[p.right - 1].to_string(),
            })
            .collect();

        let mut left_trees: Vec<usize> = alignments
            .strict
            .iter()
            .map(|s| s.left)
            .chain(alignments.potential.iter().flat_map(|p| p.left.iter().copied()))
            .chain(alignments.unalignable.iter().map(|u| u.tree))
            .collect();
        let mut right_trees: Vec<usize> = alignments
            .strict
            .iter()
            .map(|s| s.right)
            .chain(alignments.potential.iter().flat_map(|p| p.right.iter().copied()))
            .collect();
        left_trees.sort_unstable();
        left_trees.dedup();
        right_trees.sort_unstable();
        right_trees.dedup();

        let mut locations = Vec::new();
        let mut locate = |side: Side, corpus: &NormalizedCorpus, terms: &mut dyn Iterator<Item = usize>, trees: &[usize]| {
            for index in terms {
                let loc = corpus.terminal_location(index).expect("terminal in range");
                locations.push(LocationRow {
                    side,
                    index,
                    location: Located::Terminal(loc),
                });
            }
            for &index in trees {
                let loc = corpus.tree_location(index).expect("tree in range");
                locations.push(LocationRow {
                    side,
                    index,
                    location: Located::Tree(loc),
                });
            }
        };
        locate(Side::Left, left, &mut delta.pairs().iter().map(|p| p.left), &left_trees);
        locate(Side::Right, right, &mut delta.pairs().iter().map(|p| p.right), &right_trees);

        let tables = ReportTables {
            delta: delta.pairs().to_vec(),
            mismatches,
            strict: alignments.strict.clone(),
            potential: alignments.potential.clone(),
            unalignable: alignments.unalignable.clone(),
            locations,
        };
        AlignmentReport {
            delta,
            alignments,
            tables,
            stats,
        }
    }
}

fn escape_field(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

fn unescape_field(field: &str) -> Result<String, String> {
    let mut out = String::with_capacity(field.len());
    let mut chars = field.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            other => return Err(format!("bad escape `\\{}`", other.map(String::from).unwrap_or_default())),
        }
    }
    Ok(out)
}

fn join_indices(indices: &[usize]) -> String {
    indices
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl ReportTables {
    fn render_delta(&self) -> String {
        let mut out = String::from("left_idx\tright_idx\texact\n");
        for p in &self.delta {
            out.push_str(&format!("{}\t{}\t{}\n", p.left, p.right, u8::from(p.exact)));
        }
        out
    }

    fn render_mismatches(&self) -> String {
        let mut out = String::from("left_idx\tleft_text\tright_idx\tright_text\n");
        for m in &self.mismatches {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                m.left,
                escape_field(&m.left_text),
                m.right,
                escape_field(&m.right_text)
            ));
        }
        out
    }

    fn render_strict(&self) -> String {
        let mut out = String::from("left_tree_idx\tright_tree_idx\n");
        for s in &self.strict {
            out.push_str(&format!("{}\t{}\n", s.left, s.right));
        }
        out
    }

    fn render_potential(&self) -> String {
        let mut out = String::from("left_tree_idx_list\tright_tree_idx_list\n");
        for p in &self.potential {
            out.push_str(&format!("{}\t{}\n", join_indices(&p.left), join_indices(&p.right)));
        }
        out
    }

    fn render_unalignable(&self) -> String {
        let mut out = String::from("left_tree_idx\treason\n");
        for u in &self.unalignable {
            out.push_str(&format!("{}\t{}\n", u.tree, u.reason));
        }
        out
    }

    fn render_locations(&self) -> String {
        let mut out = String::from("side\tkind\tidx\tstart\tend\trsd_start\trsd_end\n");
        for row in &self.locations {
            match row.location {
                Located::Terminal(span) => out.push_str(&format!(
                    "{}\tterm\t{}\t{}\t{}\n",
                    row.side.code(),
                    row.index,
                    span.byte_start,
                    span.byte_end
                )),
                Located::Tree(tree) => out.push_str(&format!(
                    "{}\ttree\t{}\t{}\t{}\t{}\t{}\n",
                    row.side.code(),
                    row.index,
                    tree.lsd.byte_start,
                    tree.lsd.byte_end,
                    tree.rsd.byte_start,
                    tree.rsd.byte_end
                )),
            }
        }
        out
    }

    /// File name and contents of each table.
    pub fn render(&self) -> Vec<(&'static str, String)> {
        vec![
            (DELTA_FILE, self.render_delta()),
            (MISMATCHES_FILE, self.render_mismatches()),
            (STRICT_FILE, self.render_strict()),
            (POTENTIAL_FILE, self.render_potential()),
            (UNALIGNABLE_FILE, self.render_unalignable()),
            (LOCATIONS_FILE, self.render_locations()),
        ]
    }

    /// Parse the tables written by [`write_report`] from `dir`.
    pub fn read(dir: &Path) -> Result<Self, ReportError> {
        let mut tables = ReportTables::default();
        for_rows(dir, DELTA_FILE, 3, |f| {
            let exact = match f[2] {
                "0" => false,
                "1" => true,
                other => return Err(format!("exact flag `{other}`")),
            };
            tables.delta.push(DeltaPair {
                left: num(f[0])?,
                right: num(f[1])?,
                exact,
            });
            Ok(())
        })?;
        for_rows(dir, MISMATCHES_FILE, 4, |f| {
            tables.mismatches.push(MismatchRow {
                left: num(f[0])?,
                left_text: unescape_field(f[1])?,
                right: num(f[2])?,
                right_text: unescape_field(f[3])?,
            });
            Ok(())
        })?;
        for_rows(dir, STRICT_FILE, 2, |f| {
            tables.strict.push(StrictAlignment {
                left: num(f[0])?,
                right: num(f[1])?,
            });
            Ok(())
        })?;
        for_rows(dir, POTENTIAL_FILE, 2, |f| {
            tables.potential.push(PotentialAlignment {
                left: num_list(f[0])?,
                right: num_list(f[1])?,
            });
            Ok(())
        })?;
        for_rows(dir, UNALIGNABLE_FILE, 2, |f| {
            let reason = UnalignableReason::from_code(f[1])
                .ok_or_else(|| format!("unknown reason `{}`", f[1]))?;
            tables.unalignable.push(Unalignable {
                tree: num(f[0])?,
                reason,
            });
            Ok(())
        })?;
        for_rows(dir, LOCATIONS_FILE, 0, |f| {
            let side = match f.first().copied() {
                Some("l") => Side::Left,
                Some("r") => Side::Right,
                other => return Err(format!("bad side {other:?}")),
            };
            let location = match (f.get(1).copied(), f.len()) {
                (Some("term"), 5) => Located::Terminal(SpanLocation::new(num(f[3])?, num(f[4])?)),
                (Some("tree"), 7) => Located::Tree(TreeLocation {
                    lsd: SpanLocation::new(num(f[3])?, num(f[4])?),
                    rsd: SpanLocation::new(num(f[5])?, num(f[6])?),
                }),
                _ => return Err("expected `term` with 5 fields or `tree` with 7".into()),
            };
            tables.locations.push(LocationRow {
                side,
                index: num(f[2])?,
                location,
            });
            Ok(())
        })?;
        Ok(tables)
    }
}

fn num(field: &str) -> Result<usize, String> {
    field
        .parse()
        .map_err(|_| format!("expected an index, found `{field}`"))
}

fn num_list(field: &str) -> Result<Vec<usize>, String> {
    field.split(',').map(num).collect()
}

/// Run `row` over the data lines of `dir/name`, skipping the header. A
/// nonzero `width` is the required field count.
fn for_rows(
    dir: &Path,
    name: &str,
    width: usize,
    mut row: impl FnMut(&[&str]) -> Result<(), String>,
) -> Result<(), ReportError> {
    let path = dir.join(name);
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    for (n, line) in text.lines().enumerate().skip(1) {
        let fields: Vec<&str> = line.split('\t').collect();
        let result = if width != 0 && fields.len() != width {
            Err(format!("expected {width} fields, found {}", fields.len()))
        } else {
            row(&fields)
        };
        result.map_err(|message| ReportError::Parse {
            path: path.clone(),
            line: n + 1,
            message,
        })?;
    }
    Ok(())
}

/// Write every table and the summary into `out_dir`, creating it if
/// needed. Returns the paths written.
pub fn write_report(report: &AlignmentReport, out_dir: &Path) -> Result<Vec<PathBuf>, ReportError> {
    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let mut files = report.tables.render();
    files.push((SUMMARY_FILE, report.stats.render()));
    let mut written = Vec::with_capacity(files.len());
    for (name, contents) in files {
        let path = out_dir.join(name);
        fs::write(&path, contents).map_err(io_err(&path))?;
        written.push(path);
    }
    Ok(written)
}

/// Serialize `corpus` in the generic interchange format.
pub fn generic_string(corpus: &NormalizedCorpus) -> Result<String, ReportError> {
    let mut terminal = 0;
    for item in corpus.items() {
        if let CorpusItem::Terminal(text) = item {
            terminal += 1;
            if text.chars().any(char::is_whitespace) {
                return Err(ReportError::Unrepresentable { index: terminal });
            }
        }
    }
    let mut text = to_generic_string(corpus.items());
    text.push('\n');
    Ok(text)
}

pub fn write_generic(corpus: &NormalizedCorpus, out: &Path) -> Result<(), ReportError> {
    let text = generic_string(corpus)?;
    fs::write(out, text).map_err(io_err(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::normalize_generic;
    use proptest::prelude::*;

    #[test]
    fn field_escaping() {
        for s in ["plain", "a\tb", "back\\slash", "new\nline\r", "\\t"] {
            assert_eq!(unescape_field(&escape_field(s)).unwrap(), s);
        }
        assert!(unescape_field("bad\\q").is_err());
    }

    #[test]
    fn generic_writer_examples() {
        let c = NormalizedCorpus::from_items(
            vec![CorpusItem::Lsd, CorpusItem::terminal("a"), CorpusItem::Rsd],
            "x",
        )
        .unwrap();
        assert_eq!(generic_string(&c).unwrap(), "{ a }\n");
        let c = NormalizedCorpus::from_items(vec![CorpusItem::terminal("{")], "x").unwrap();
        assert_eq!(generic_string(&c).unwrap(), "\\{\n");
        let c = NormalizedCorpus::from_items(vec![CorpusItem::terminal("a b")], "x").unwrap();
        assert!(matches!(
            generic_string(&c),
            Err(ReportError::Unrepresentable { index: 1 })
        ));
    }

    fn items() -> impl Strategy<Value = Vec<CorpusItem>> {
        let token = prop_oneof![
            Just(CorpusItem::Lsd),
            Just(CorpusItem::Rsd),
            "[a-z{}\\\\]{1,3}".prop_map(CorpusItem::Terminal),
        ];
        proptest::collection::vec(token, 0..24).prop_map(|raw| {
            // Drop unmatched closers and close what remains open.
            let mut depth = 0usize;
            let mut out = Vec::new();
            for item in raw {
                match item {
                    CorpusItem::Lsd => depth += 1,
                    CorpusItem::Rsd if depth == 0 => continue,
                    CorpusItem::Rsd => depth -= 1,
                    _ => {}
                }
                out.push(item);
            }
            out.extend(std::iter::repeat_n(CorpusItem::Rsd, depth));
            out
        })
    }

    proptest! {
        #[test]
        fn generic_round_trip(items in items()) {
            let corpus = NormalizedCorpus::from_items(items.clone(), "p").unwrap();
            let text = generic_string(&corpus).unwrap();
            let back = normalize_generic(text.as_bytes(), "p").unwrap();
            prop_assert_eq!(back.items(), items.as_slice());
            prop_assert_eq!(back, corpus);
        }
    }
}
