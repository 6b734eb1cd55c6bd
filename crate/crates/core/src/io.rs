//! Reading and writing graphs in the DIMACS-like and edge-list text formats.
//!
//! DIMACS: `p edge <n> <m>` header, `e <u> <v>` lines with 1-based ids, `c`
//! comment lines. Edge list: `<n> <m>` header, `<u> <v>` lines with 0-based
//! ids, `#` comment lines. Both formats carry optional vertex labels in
//! comment lines (`c label <id> <name>` / `# label <id> <name>`), using the
//! format's own id base, so other readers skip them as comments.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dimacs,
    EdgeList,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "dimacs" | "col" => Ok(Format::Dimacs),
            "edgelist" | "edge-list" | "el" => Ok(Format::EdgeList),
            other => Err(format!("unknown graph format `{other}` (expected dimacs or edgelist)")),
        }
    }
}

impl Format {
    /// Guesses the format from the first non-blank, non-comment line.
    pub fn detect(text: &str) -> Format {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with('c'));
        match first {
            Some(l) if l.starts_with('p') => Format::Dimacs,
            _ => Format::EdgeList,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing header line")]
    MissingHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        message: message.into(),
    }
}

fn parse_number(token: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let token = token.ok_or_else(|| malformed(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| malformed(line, format!("invalid {what} `{token}`")))
}

fn expect_end<'a>(mut tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<(), ParseError> {
    match tokens.next() {
        Some(extra) => Err(malformed(line, format!("unexpected token `{extra}`"))),
        None => Ok(()),
    }
}

struct Builder {
    n: Option<usize>,
    base: usize,
    edges: Vec<(Vertex, Vertex)>,
    labels: BTreeMap<Vertex, String>,
}

impl Builder {
    fn new(base: usize) -> Self {
        Builder {
            n: None,
            base,
            edges: Vec::new(),
            labels: BTreeMap::new(),
        }
    }

    fn vertex(&self, raw: usize, line: usize) -> Result<Vertex, ParseError> {
        let n = self.n.ok_or(ParseError::MissingHeader)?;
        if raw < self.base || raw - self.base >= n {
            return Err(ParseError::VertexOutOfRange { line, vertex: raw, n });
        }
        Ok(raw - self.base)
    }

    fn edge<'a>(&mut self, mut tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<(), ParseError> {
        let u = parse_number(tokens.next(), line, "vertex")?;
        let v = parse_number(tokens.next(), line, "vertex")?;
        expect_end(tokens, line)?;
        let (u, v) = (self.vertex(u, line)?, self.vertex(v, line)?);
        if u == v {
            return Err(ParseError::SelfLoop {
                line,
                vertex: u + self.base,
            });
        }
        self.edges.push((u, v));
        Ok(())
    }

    /// Handles the tokens after the comment marker. Only `label <id> <name>`
    /// is meaningful; anything else is an ordinary comment.
    fn comment<'a>(&mut self, mut tokens: impl Iterator<Item = &'a str>, line: usize) -> Result<(), ParseError> {
        if tokens.next() != Some("label") {
            return Ok(());
        }
        let raw = parse_number(tokens.next(), line, "label vertex")?;
        let name = tokens.next().ok_or_else(|| malformed(line, "missing label name"))?;
        expect_end(tokens, line)?;
        let v = self.vertex(raw, line)?;
        self.labels.insert(v, name.to_owned());
        Ok(())
    }

    fn finish(self) -> Result<Graph, ParseError> {
        let n = self.n.ok_or(ParseError::MissingHeader)?;
        Ok(Graph::from_edges(n, self.edges)?.with_labels(self.labels)?)
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::Dimacs => parse_dimacs(text),
        Format::EdgeList => parse_edge_list(text),
    }
}

fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut builder = Builder::new(1);
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None => {}
            Some("c") => builder.comment(tokens, line)?,
            Some("p") => {
                if builder.n.is_some() {
                    return Err(malformed(line, "duplicate problem line"));
                }
                match tokens.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(malformed(
                            line,
                            format!("expected `p edge`, found `p {}`", other.unwrap_or("")),
                        ))
                    }
                }
                let n = parse_number(tokens.next(), line, "vertex count")?;
                parse_number(tokens.next(), line, "edge count")?;
                expect_end(tokens, line)?;
                builder.n = Some(n);
            }
            Some("e") => {
                if builder.n.is_none() {
                    return Err(ParseError::MissingHeader);
                }
                builder.edge(tokens, line)?;
            }
            Some(other) => return Err(malformed(line, format!("unknown line type `{other}`"))),
        }
    }
    builder.finish()
}

fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut builder = Builder::new(0);
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            builder.comment(rest.split_whitespace(), line)?;
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        if builder.n.is_none() {
            let n = parse_number(tokens.next(), line, "vertex count")?;
            parse_number(tokens.next(), line, "edge count")?;
            expect_end(tokens, line)?;
            builder.n = Some(n);
        } else {
            builder.edge(tokens, line)?;
        }
    }
    builder.finish()
}

/// Serializes with sorted edges; labels follow the header.
pub fn serialize_graph(graph: &Graph, format: Format) -> String {
    let mut out = String::new();
    let (comment, edge_prefix, base) = match format {
        Format::Dimacs => {
            writeln!(out, "p edge {} {}", graph.n(), graph.m()).unwrap();
            ("c", "e ", 1)
        }
        Format::EdgeList => {
            writeln!(out, "{} {}", graph.n(), graph.m()).unwrap();
            ("#", "", 0)
        }
    };
    for (v, label) in graph.labels() {
        writeln!(out, "{comment} label {} {label}", v + base).unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(out, "{edge_prefix}{} {}", u + base, v + base).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_triangle() {
        let g = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n", Format::Dimacs).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn dimacs_single_edge() {
        let g = parse_graph("c a comment\np edge 2 1\ne 1 2\n", Format::Dimacs).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn dimacs_self_loop_reports_line() {
        let err = parse_graph("p edge 2 1\ne 1 1\n", Format::Dimacs).unwrap_err();
        assert_eq!(err, ParseError::SelfLoop { line: 2, vertex: 1 });
    }

    #[test]
    fn dimacs_out_of_range() {
        let err = parse_graph("p edge 2 1\ne 1 3\n", Format::Dimacs).unwrap_err();
        assert!(matches!(
            err,
            ParseError::VertexOutOfRange {
                line: 2,
                vertex: 3,
                n: 2
            }
        ));
        let err = parse_graph("p edge 2 1\ne 0 1\n", Format::Dimacs).unwrap_err();
        assert!(matches!(err, ParseError::VertexOutOfRange { vertex: 0, .. }));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            parse_graph("p edge x 1\n", Format::Dimacs),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("p graph 2 1\n", Format::Dimacs),
            Err(ParseError::Malformed { .. })
        ));
        assert_eq!(parse_graph("e 1 2\n", Format::Dimacs), Err(ParseError::MissingHeader));
        assert_eq!(parse_graph("", Format::EdgeList), Err(ParseError::MissingHeader));
        assert!(matches!(
            parse_graph("3 1\n0 1 2\n", Format::EdgeList),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0\n", Format::EdgeList),
            Err(ParseError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn edge_list_duplicates_collapse() {
        let g = parse_graph("# comment\n3 3\n0 1\n1 0\n1 2\n", Format::EdgeList).unwrap();
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn edge_list_self_loop() {
        let err = parse_graph("3 1\n2 2\n", Format::EdgeList).unwrap_err();
        assert_eq!(err, ParseError::SelfLoop { line: 2, vertex: 2 });
    }

    #[test]
    fn labels_round_trip_in_both_formats() {
        let text = "5 5\n# label 0 a\n# label 1 b\n# label 2 t1\n0 1\n1 2\n2 3\n2 4\n3 4\n";
        let g = parse_graph(text, Format::EdgeList).unwrap();
        assert_eq!(g.label(2), Some("t1"));
        assert_eq!(serialize_graph(&g, Format::EdgeList), text);
        let dimacs = serialize_graph(&g, Format::Dimacs);
        assert!(dimacs.contains("c label 3 t1"));
        assert_eq!(parse_graph(&dimacs, Format::Dimacs).unwrap(), g);
    }

    #[test]
    fn detect_format() {
        assert_eq!(Format::detect("c hi\np edge 2 1\ne 1 2\n"), Format::Dimacs);
        assert_eq!(Format::detect("# hi\n2 1\n0 1\n"), Format::EdgeList);
    }
}
