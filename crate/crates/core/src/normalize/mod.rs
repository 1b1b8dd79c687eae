//! Front ends that turn source corpus files into [`NormalizedCorpus`] values.
//!
//! Each adapter drops everything except terminals and structural
//! delimiters, maps the format's own brackets onto LSD/RSD, and records
//! byte offsets for every terminal and every delimiter pair so results can
//! be reported as standoff annotation against the untouched source.

pub mod generic;
pub mod penn;
pub mod rewrite;
pub mod susanne;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::corpus::{NormalizedCorpus, Violation};

pub use generic::{normalize_generic, Generic};
pub use penn::{normalize_penn, Penn};
pub use rewrite::{apply_rewrites, Pattern, RewriteError, RewriteRule};
pub use susanne::{normalize_susanne, Susanne};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("invalid UTF-8 at byte {offset}")]
    InvalidUtf8 { offset: usize },
    #[error("byte {offset}: closing delimiter with no open group")]
    UnexpectedClose { offset: usize },
    #[error("byte {offset}: group opened here is never closed ({open} unclosed at end of input)")]
    UnclosedAtEof { offset: usize, open: usize },
    #[error("line {line} (byte {offset}): {reason}")]
    MalformedLine {
        line: usize,
        offset: usize,
        reason: String,
    },
    #[error("normalized corpus is invalid: {0}")]
    Invalid(#[from] Violation),
}

impl NormalizeError {
    /// Byte offset into the source the error refers to, if any.
    pub fn offset(&self) -> Option<usize> {
        match self {
            NormalizeError::InvalidUtf8 { offset }
            | NormalizeError::UnexpectedClose { offset }
            | NormalizeError::UnclosedAtEof { offset, .. }
            | NormalizeError::MalformedLine { offset, .. } => Some(*offset),
            NormalizeError::Invalid(_) => None,
        }
    }
}

/// A reader from source bytes to a [`NormalizedCorpus`].
pub trait FormatAdapter {
    fn format_name(&self) -> &'static str;

    fn normalize(&self, source: &[u8], source_id: &str)
        -> Result<NormalizedCorpus, NormalizeError>;

    /// Turns the raw bytes at a terminal's location into the terminal text.
    fn cleanup_token(&self, raw: &str) -> String;
}

/// The source formats understood by the command-line driver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourceFormat {
    Penn,
    Susanne,
    Generic,
}

impl SourceFormat {
    pub const ALL: [SourceFormat; 3] =
        [SourceFormat::Penn, SourceFormat::Susanne, SourceFormat::Generic];

    pub fn adapter(self) -> &'static dyn FormatAdapter {
        match self {
            SourceFormat::Penn => &Penn,
            SourceFormat::Susanne => &Susanne,
            SourceFormat::Generic => &Generic,
        }
    }

    pub fn name(self) -> &'static str {
        self.adapter().format_name()
    }

    pub fn normalize(
        self,
        source: &[u8],
        source_id: &str,
    ) -> Result<NormalizedCorpus, NormalizeError> {
        self.adapter().normalize(source, source_id)
    }
}

impl fmt::Display for SourceFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SourceFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SourceFormat::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown format `{s}` (expected penn, susanne or generic)"))
    }
}

pub(crate) fn decode(source: &[u8]) -> Result<&str, NormalizeError> {
    std::str::from_utf8(source).map_err(|e| NormalizeError::InvalidUtf8 {
        offset: e.valid_up_to(),
    })
}

/// Byte offset of `inner` within `outer`. `inner` must be a subslice.
pub(crate) fn offset_in(outer: &str, inner: &str) -> usize {
    inner.as_ptr() as usize - outer.as_ptr() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_names_round_trip() {
        for f in SourceFormat::ALL {
            assert_eq!(f.name().parse::<SourceFormat>().unwrap(), f);
        }
        assert!("sgml".parse::<SourceFormat>().is_err());
    }

    #[test]
    fn invalid_utf8_reports_offset() {
        let err = SourceFormat::Generic
            .normalize(b"ab \xff", "x")
            .unwrap_err();
        assert_eq!(err.offset(), Some(3));
    }
}
