//! Offline sequence identification against a local OEIS "stripped" dump.
//!
//! The stripped format is one sequence per line, `A000045 ,0,1,1,2,3,5,...`,
//! with `#`-prefixed comment lines. Lookups are exact contiguous-subsequence
//! matches over the stored integers; no sign or offset normalization is
//! applied. No network access: callers supply the dump path explicitly or
//! through the `RIORDAN_OEIS_PATH` environment variable (handled by the CLI).

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use num::bigint::BigInt;
use num::One;

use crate::rational::Rat;

/// Errors from loading a sequence database.
#[derive(Debug)]
pub enum IdentifyError {
    Io { path: PathBuf, source: std::io::Error },
    /// The file parsed but held zero valid sequence lines.
    EmptyDb { path: PathBuf },
}

impl fmt::Display for IdentifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentifyError::Io { path, source } => {
                write!(f, "cannot read sequence db {}: {source}", path.display())
            }
            IdentifyError::EmptyDb { path } => {
                write!(f, "sequence db {} contains no valid entries", path.display())
            }
        }
    }
}

impl std::error::Error for IdentifyError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            IdentifyError::Io { source, .. } => Some(source),
            IdentifyError::EmptyDb { .. } => None,
        }
    }
}

/// An in-memory OEIS stripped dump: A-number to terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceDb {
    entries: BTreeMap<u32, Vec<BigInt>>,
    source_path: PathBuf,
    malformed_lines: usize,
}

/// One lookup hit: the matching A-number and the offset of the query
/// prefix inside the stored terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    pub a_number: u32,
    pub offset: usize,
}

impl Match {
    /// Render as the customary zero-padded id, e.g. `A000045`.
    pub fn id(&self) -> String {
        format!("A{:06}", self.a_number)
    }
}

/// Outcome of a lookup, including why it may be vacuous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identification {
    pub matches: Vec<Match>,
    /// Set when the query held non-integer values, which match nothing.
    pub non_integral: bool,
}

fn parse_line(line: &str) -> Option<(u32, Vec<BigInt>)> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return None;
    }
    let (id, rest) = line.split_once(' ')?;
    let number: u32 = id.strip_prefix('A')?.parse().ok()?;
    let mut terms = Vec::new();
    for piece in rest.trim().split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        terms.push(piece.parse().ok()?);
    }
    if terms.is_empty() {
        return None;
    }
    Some((number, terms))
}

impl SequenceDb {
    /// Load a stripped-format dump. Malformed lines are counted, not fatal;
    /// a file with zero usable lines is an error.
    pub fn load(path: &Path) -> Result<SequenceDb, IdentifyError> {
        let file = std::fs::File::open(path)
            .map_err(|source| IdentifyError::Io { path: path.to_path_buf(), source })?;
        SequenceDb::from_reader(BufReader::new(file), path)
    }

    /// Parse stripped-format lines from any reader; `label` stands in for
    /// the source path in errors and metadata.
    pub fn from_reader<R: BufRead>(reader: R, label: &Path) -> Result<SequenceDb, IdentifyError> {
        let mut entries = BTreeMap::new();
        let mut malformed = 0usize;
        for line in reader.lines() {
            let line = line
                .map_err(|source| IdentifyError::Io { path: label.to_path_buf(), source })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            match parse_line(trimmed) {
                Some((number, terms)) => {
                    entries.insert(number, terms);
                }
                None => malformed += 1,
            }
        }
        if entries.is_empty() {
            return Err(IdentifyError::EmptyDb { path: label.to_path_buf() });
        }
        Ok(SequenceDb { entries, source_path: label.to_path_buf(), malformed_lines: malformed })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lines skipped during load because they did not parse.
    pub fn malformed_lines(&self) -> usize {
        self.malformed_lines
    }

    pub fn source_path(&self) -> &Path {
        &self.source_path
    }

    pub fn terms(&self, a_number: u32) -> Option<&[BigInt]> {
        self.entries.get(&a_number).map(|v| v.as_slice())
    }

    /// Find every entry containing the first `min_match` query values as a
    /// contiguous run. Queries with non-integer values match nothing and
    /// set the `non_integral` note; queries shorter than `min_match` also
    /// match nothing. Results are ordered by A-number.
    pub fn identify(&self, query: &[Rat], min_match: usize) -> Identification {
        if query.iter().any(|r| !r.denom().is_one()) {
            return Identification { matches: Vec::new(), non_integral: true };
        }
        let needle: Vec<BigInt> =
            query.iter().take(min_match).map(|r| r.numer().clone()).collect();
        if needle.len() < min_match {
            return Identification { matches: Vec::new(), non_integral: false };
        }
        let mut matches = Vec::new();
        for (&a_number, terms) in &self.entries {
            if let Some(offset) =
                terms.windows(needle.len()).position(|window| window == needle.as_slice())
            {
                matches.push(Match { a_number, offset });
            }
        }
        Identification { matches, non_integral: false }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational;
    use std::io::Write as _;

    fn write_fixture(lines: &[&str]) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        for line in lines {
            writeln!(file, "{line}").unwrap();
        }
        file.flush().unwrap();
        file
    }

    const FIXTURE: &[&str] = &[
        "# OEIS-style stripped fixture",
        "A000045 ,0,1,1,2,3,5,8,13,21,34,55,89,",
        "A000108 ,1,1,2,5,14,42,132,429,1430,4862,",
        "A001850 ,1,3,13,63,321,1683,8989,48639,265729,",
    ];

    fn rats(values: &[i64]) -> Vec<Rat> {
        values.iter().map(|&v| rational::int(v)).collect()
    }

    #[test]
    fn loads_fixture_and_skips_comments() {
        let file = write_fixture(FIXTURE);
        let db = SequenceDb::load(file.path()).unwrap();
        assert_eq!(db.len(), 3);
        assert_eq!(db.malformed_lines(), 0);
        assert_eq!(db.terms(108).unwrap()[4], BigInt::from(14));
    }

    #[test]
    fn malformed_lines_are_counted_not_fatal() {
        let mut lines = FIXTURE.to_vec();
        lines.push("B000001 ,1,2,3,");
        lines.push("A000002 one,two");
        let file = write_fixture(&lines);
        let db = SequenceDb::load(file.path()).unwrap();
        assert_eq!(db.len(), 3);
        assert_eq!(db.malformed_lines(), 2);
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = SequenceDb::load(Path::new("/nonexistent/stripped")).unwrap_err();
        assert!(matches!(err, IdentifyError::Io { .. }));
    }

    #[test]
    fn comment_only_file_is_empty_db() {
        let file = write_fixture(&["# nothing", "# here"]);
        assert!(matches!(
            SequenceDb::load(file.path()).unwrap_err(),
            IdentifyError::EmptyDb { .. }
        ));
    }

    #[test]
    fn identifies_central_delannoy_prefix() {
        let file = write_fixture(FIXTURE);
        let db = SequenceDb::load(file.path()).unwrap();
        let result = db.identify(&rats(&[1, 3, 13, 63, 321, 1683]), 6);
        assert_eq!(result.matches, vec![Match { a_number: 1850, offset: 0 }]);
        assert_eq!(result.matches[0].id(), "A001850");
        assert!(!result.non_integral);
    }

    #[test]
    fn match_offset_inside_the_entry() {
        let file = write_fixture(FIXTURE);
        let db = SequenceDb::load(file.path()).unwrap();
        let result = db.identify(&rats(&[2, 3, 5, 8, 13, 21]), 6);
        assert_eq!(result.matches, vec![Match { a_number: 45, offset: 3 }]);
    }

    #[test]
    fn zero_query_matches_nothing_here() {
        let file = write_fixture(FIXTURE);
        let db = SequenceDb::load(file.path()).unwrap();
        let result = db.identify(&rats(&[0, 0, 0, 0, 0, 0]), 6);
        assert!(result.matches.is_empty());
        assert!(!result.non_integral);
    }

    #[test]
    fn rational_query_sets_the_note() {
        let file = write_fixture(FIXTURE);
        let db = SequenceDb::load(file.path()).unwrap();
        let query = vec![rational::rat(1, 2); 6];
        let result = db.identify(&query, 6);
        assert!(result.matches.is_empty());
        assert!(result.non_integral);
    }

    #[test]
    fn short_query_matches_nothing() {
        let file = write_fixture(FIXTURE);
        let db = SequenceDb::load(file.path()).unwrap();
        let result = db.identify(&rats(&[1, 1, 2]), 6);
        assert!(result.matches.is_empty());
        assert!(!result.non_integral);
    }

    #[test]
    fn loading_twice_yields_equal_dbs() {
        let file = write_fixture(FIXTURE);
        let a = SequenceDb::load(file.path()).unwrap();
        let b = SequenceDb::load(file.path()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn multiple_matches_come_in_a_number_order() {
        let file = write_fixture(&[
            "A000300 ,7,1,2,3,4,5,6,9,",
            "A000200 ,1,2,3,4,5,6,8,",
            "A000100 ,0,1,2,3,4,5,6,7,",
        ]);
        let db = SequenceDb::load(file.path()).unwrap();
        let result = db.identify(&rats(&[1, 2, 3, 4, 5, 6]), 6);
        let ids: Vec<String> = result.matches.iter().map(|m| m.id()).collect();
        assert_eq!(ids, vec!["A000100", "A000200", "A000300"]);
        assert_eq!(result.matches[0].offset, 1);
        assert_eq!(result.matches[1].offset, 0);
        assert_eq!(result.matches[2].offset, 1);
    }
}
