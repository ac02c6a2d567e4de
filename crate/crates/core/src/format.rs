//! The `.hg` text format.
//!
//! ```text
//! # optional comment lines
//! n m
//! v v ...   (m lines, one edge each)
//! ```
//!
//! Serialization writes LF line endings, single spaces and no comments, so
//! `parse(serialize(h)) == h` and `serialize(parse(t)) == t` for normalized `t`.

use std::fmt::Write;

use crate::error::HypergraphError;
use crate::Hypergraph;

pub fn parse(text: &str) -> Result<Hypergraph, HypergraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(HypergraphError::MalformedHeader { line: 1 })?;
    let header = integers(header_line, header)?;
    let [n, m] = header[..] else {
        return Err(HypergraphError::MalformedHeader { line: header_line });
    };

    let mut edges = Vec::with_capacity(m);
    for (line_no, line) in lines {
        edges.push(integers(line_no, line)?);
    }
    if edges.len() != m {
        return Err(HypergraphError::CountMismatch { declared: m, found: edges.len() });
    }
    Hypergraph::new(n, edges)
}

fn integers(line: usize, text: &str) -> Result<Vec<usize>, HypergraphError> {
    text.split_whitespace()
        .map(|token| {
            token
                .parse::<usize>()
                .map_err(|_| HypergraphError::NonInteger { line, token: token.to_string() })
        })
        .collect()
}

pub fn serialize(h: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", h.vertex_count(), h.edge_count()).unwrap();
    for edge in h.edges() {
        let mut first = true;
        for v in edge {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_minimal_file() {
        let h = parse("2 1\n0 1\n").unwrap();
        assert_eq!(h, Hypergraph::new(2, [[0, 1]]).unwrap());
    }

    #[test]
    fn round_trips_normalized_text() {
        let text = "5 3\n0 1\n1 2 3\n0 2 4\n";
        assert_eq!(serialize(&parse(text).unwrap()), text);
    }

    #[test]
    fn skips_comments() {
        let h = parse("# fano-ish\n3 1\n# edge\n0 1 2\n").unwrap();
        assert_eq!(h.edge(0), &[0, 1, 2]);
    }

    #[test]
    fn singleton_edge_line() {
        assert!(matches!(parse("2 1\n0\n"), Err(HypergraphError::EdgeTooSmall { .. })));
    }

    #[test]
    fn header_errors() {
        assert!(matches!(parse(""), Err(HypergraphError::MalformedHeader { .. })));
        assert!(matches!(parse("3\n"), Err(HypergraphError::MalformedHeader { line: 1 })));
        assert!(matches!(parse("3 x\n"), Err(HypergraphError::NonInteger { line: 1, .. })));
        assert!(matches!(parse("3 -1\n"), Err(HypergraphError::NonInteger { .. })));
    }

    #[test]
    fn count_mismatch() {
        assert_eq!(
            parse("3 2\n0 1\n").unwrap_err(),
            HypergraphError::CountMismatch { declared: 2, found: 1 }
        );
        assert!(matches!(parse("3 1\n0 1\n1 2\n"), Err(HypergraphError::CountMismatch { .. })));
    }

    fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
        (2usize..12).prop_flat_map(|n| {
            let edge = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 2..=n);
            proptest::collection::vec(edge, 0..10)
                .prop_map(move |edges| Hypergraph::new(n, edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_serialize(h in arb_hypergraph()) {
            let text = serialize(&h);
            let back = parse(&text).unwrap();
            prop_assert_eq!(serialize(&back), text);
            prop_assert_eq!(back, h);
        }
    }
}
