//! The ".3g" text interchange format.
//!
//! First non-comment line is `n m`; each of the following `m` lines holds
//! three space-separated 0-based vertex ids. Lines starting with `#` are
//! comments. Canonical output sorts vertices within each triple and the
//! triples lexicographically, and ends with a newline.

use std::collections::HashSet;

use thiserror::Error;

use crate::system::{sorted_triple, SystemError, Triple, TripleSystem};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {0}: malformed header (expected \"n m\")")]
    BadHeader(usize),
    #[error("missing header line")]
    MissingHeader,
    #[error("line {0}: expected three vertex ids")]
    BadTriple(usize),
    #[error("line {0}: vertex {1} out of range (n = {2})")]
    VertexOutOfRange(usize, u64, u32),
    #[error("line {0}: non-distinct vertices in triple")]
    NonDistinct(usize),
    #[error("line {0}: duplicate triple")]
    DuplicateTriple(usize),
    #[error("header announced {0} triples but found {1}")]
    CountMismatch(usize, usize),
}

fn parse_fields(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

/// Parses the text format into a system.
pub fn read_system(text: &str) -> Result<TripleSystem, FormatError> {
    let mut header: Option<(u32, usize)> = None;
    let mut triples: Vec<(usize, Triple)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields = parse_fields(line);
        match header {
            None => {
                if fields.len() != 2 {
                    return Err(FormatError::BadHeader(lineno));
                }
                let n: u32 = fields[0].parse().map_err(|_| FormatError::BadHeader(lineno))?;
                let m: usize = fields[1].parse().map_err(|_| FormatError::BadHeader(lineno))?;
                header = Some((n, m));
            }
            Some((n, _)) => {
                if fields.len() != 3 {
                    return Err(FormatError::BadTriple(lineno));
                }
                let mut t = [0u32; 3];
                for (slot, f) in t.iter_mut().zip(&fields) {
                    let v: u64 = f.parse().map_err(|_| FormatError::BadTriple(lineno))?;
                    if v >= n as u64 {
                        return Err(FormatError::VertexOutOfRange(lineno, v, n));
                    }
                    *slot = v as u32;
                }
                triples.push((lineno, t));
            }
        }
    }

    let (n, m) = header.ok_or(FormatError::MissingHeader)?;
    if triples.len() != m {
        return Err(FormatError::CountMismatch(m, triples.len()));
    }

    // Validate with line numbers; duplicates are reported at the later of
    // the two lines involved.
    let mut seen: HashSet<Triple> = HashSet::with_capacity(triples.len());
    for &(lineno, t) in &triples {
        let t = sorted_triple(t);
        if t[0] == t[1] || t[1] == t[2] {
            return Err(FormatError::NonDistinct(lineno));
        }
        if !seen.insert(t) {
            return Err(FormatError::DuplicateTriple(lineno));
        }
    }
    match TripleSystem::new(n, triples.into_iter().map(|(_, t)| t)) {
        Ok(g) => Ok(g),
        // range and distinctness were checked per line above
        Err(SystemError::NonDistinct(_) | SystemError::OutOfRange(..)) => unreachable!(),
        Err(SystemError::Duplicate(_)) => unreachable!(),
    }
}

/// Serializes a system in canonical form (bit-exact golden format).
pub fn write_system(g: &TripleSystem) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.n(), g.edge_count()));
    for t in g.edges() {
        out.push_str(&format!("{} {} {}\n", t[0], t[1], t[2]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_minimal_system() {
        let g = read_system("3 1\n0 1 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[[0, 1, 2]]);
    }

    #[test]
    fn reads_shared_pair_system() {
        let g = read_system("4 2\n0 2 3\n1 2 3\n").unwrap();
        assert_eq!(g.edges(), &[[0, 2, 3], [1, 2, 3]]);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let g = read_system("# a comment\n\n4 1\n# another\n0 1 3\n").unwrap();
        assert_eq!(g.edges(), &[[0, 1, 3]]);
    }

    #[test]
    fn error_non_distinct() {
        assert_eq!(read_system("3 1\n0 0 1\n"), Err(FormatError::NonDistinct(2)));
    }

    #[test]
    fn error_out_of_range() {
        assert_eq!(
            read_system("3 1\n0 1 5\n"),
            Err(FormatError::VertexOutOfRange(2, 5, 3))
        );
    }

    #[test]
    fn error_duplicate() {
        assert_eq!(
            read_system("4 2\n0 1 2\n2 1 0\n"),
            Err(FormatError::DuplicateTriple(3))
        );
    }

    #[test]
    fn error_header() {
        assert_eq!(read_system("3\n"), Err(FormatError::BadHeader(1)));
        assert_eq!(read_system(""), Err(FormatError::MissingHeader));
        assert_eq!(read_system("4 2\n0 1 2\n"), Err(FormatError::CountMismatch(2, 1)));
    }

    #[test]
    fn canonical_roundtrip() {
        let g = read_system("5 2\n4 3 0\n0 1 2\n").unwrap();
        let text = write_system(&g);
        assert_eq!(text, "5 2\n0 1 2\n0 3 4\n");
        assert_eq!(read_system(&text).unwrap(), g);
        // idempotent
        assert_eq!(write_system(&read_system(&text).unwrap()), text);
    }
}
