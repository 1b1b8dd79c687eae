//! Driver behind the `treealign` binary: load two corpora, align them and
//! write the report, for one pair or a manifest of pairs.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;
use treealign_core::normalize::rewrite::{empty_element_rules, RewriteError};
use treealign_core::report::ReportError;
use treealign_core::{
    align_corpora, apply_rewrites, write_report, AlignOptions, AlignmentReport, Comparator,
    NormalizeError, NormalizedCorpus, PipelineOptions, RewriteRule, SourceFormat,
};

/// Usage error.
pub const EXIT_USAGE: i32 = 1;
/// Input could not be parsed or failed validation.
pub const EXIT_INPUT: i32 = 2;
/// Reading or writing a file failed.
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: NormalizeError,
    },
    #[error("{path}: {source}")]
    Rules {
        path: PathBuf,
        #[source]
        source: RewriteError,
    },
    #[error("{path}:{line}: {message}")]
    Manifest {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Report(#[from] ReportError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Report(ReportError::Io { .. }) => EXIT_IO,
            CliError::Input { .. }
            | CliError::Rules { .. }
            | CliError::Manifest { .. }
            | CliError::Report(_) => EXIT_INPUT,
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Settings shared by every pair of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub left_format: SourceFormat,
    pub right_format: SourceFormat,
    pub comparator: Comparator,
    pub endpoints_only: bool,
    pub rewrite_left: Option<PathBuf>,
    pub rewrite_right: Option<PathBuf>,
    /// Drop Penn-style empty-element terminals (`*T*-1`, `*U*`, …).
    pub drop_empty_elements: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            left_format: SourceFormat::Generic,
            right_format: SourceFormat::Generic,
            comparator: Comparator::default(),
            endpoints_only: false,
            rewrite_left: None,
            rewrite_right: None,
            drop_empty_elements: false,
        }
    }
}

impl Settings {
    fn pipeline(&self) -> PipelineOptions {
        PipelineOptions {
            comparator: self.comparator,
            align: AlignOptions {
                endpoints_only: self.endpoints_only,
            },
        }
    }

    /// Rewrite rules for each side, read once per run.
    pub fn load_rules(&self) -> Result<(Vec<RewriteRule>, Vec<RewriteRule>), CliError> {
        let side = |file: &Option<PathBuf>| -> Result<Vec<RewriteRule>, CliError> {
            let mut rules = match file {
                Some(path) => {
                    let bytes = read(path)?;
                    let text = String::from_utf8_lossy(&bytes);
                    RewriteRule::parse_rules(&text).map_err(|source| CliError::Rules {
                        path: path.clone(),
                        source,
                    })?
                }
                None => Vec::new(),
            };
            if self.drop_empty_elements {
                rules.extend(empty_element_rules());
            }
            Ok(rules)
        };
        Ok((side(&self.rewrite_left)?, side(&self.rewrite_right)?))
    }
}

/// One left/right file pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pair {
    pub left: PathBuf,
    pub right: PathBuf,
}

impl Pair {
    /// Report directory name for the `ordinal`-th (1-based) pair.
    pub fn dir_name(&self, ordinal: usize) -> String {
        let base = |p: &Path| {
            p.file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| "input".to_string())
        };
        format!("{ordinal:04}_{}__{}", base(&self.left), base(&self.right))
    }
}

pub fn load_corpus(
    path: &Path,
    format: SourceFormat,
    rules: &[RewriteRule],
) -> Result<NormalizedCorpus, CliError> {
    let bytes = read(path)?;
    let corpus = format
        .normalize(&bytes, &path.to_string_lossy())
        .map_err(|source| CliError::Input {
            path: path.to_path_buf(),
            source,
        })?;
    Ok(apply_rewrites(&corpus, rules))
}

/// Align one pair and, if `out_dir` is given, write its report there.
pub fn run_pair(
    pair: &Pair,
    settings: &Settings,
    rules: &(Vec<RewriteRule>, Vec<RewriteRule>),
    out_dir: Option<&Path>,
) -> Result<AlignmentReport, CliError> {
    let left = load_corpus(&pair.left, settings.left_format, &rules.0)?;
    let right = load_corpus(&pair.right, settings.right_format, &rules.1)?;
    let report = align_corpora(&left, &right, &settings.pipeline());
    if let Some(dir) = out_dir {
        write_report(&report, dir)?;
    }
    Ok(report)
}

/// Parse a manifest of `left<TAB>right` lines. Relative paths are taken
/// relative to the manifest's directory; blank lines and `#` comments are
/// skipped.
pub fn read_manifest(path: &Path) -> Result<Vec<Pair>, CliError> {
    let bytes = read(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Manifest {
        path: path.to_path_buf(),
        line: bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1,
        message: format!("invalid UTF-8 at byte {}", e.valid_up_to()),
    })?;
    let base = path.parent().unwrap_or(Path::new(""));
    let mut pairs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 || fields.iter().any(|f| f.trim().is_empty()) {
            return Err(CliError::Manifest {
                path: path.to_path_buf(),
                line: n + 1,
                message: "expected `left_path<TAB>right_path`".to_string(),
            });
        }
        pairs.push(Pair {
            left: base.join(fields[0].trim()),
            right: base.join(fields[1].trim()),
        });
    }
    Ok(pairs)
}

/// Outcome of one manifest entry.
pub struct PairOutcome {
    pub name: String,
    pub result: Result<AlignmentReport, CliError>,
}

/// Run every pair on a pool of at most `jobs` threads. Each report goes to
/// `out_dir/<name>` unless `out_dir` is `None`. Outcomes come back in
/// manifest order.
pub fn run_manifest(
    pairs: &[Pair],
    settings: &Settings,
    out_dir: Option<&Path>,
    jobs: usize,
) -> Result<Vec<PairOutcome>, CliError> {
    let rules = settings.load_rules()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} worker threads: {e}")))?;
    Ok(pool.install(|| {
        pairs
            .par_iter()
            .enumerate()
            .map(|(n, pair)| {
                let name = pair.dir_name(n + 1);
                let dir = out_dir.map(|d| d.join(&name));
                let result = run_pair(pair, settings, &rules, dir.as_deref());
                PairOutcome { name, result }
            })
            .collect()
    }))
}
