//! Plain-text graph files.
//!
//! ```text
//! n m L
//! u v      (m lines, u < v)
//! v v      (L lines, loops; target graphs only)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Pair-labelings use
//! one line `v h0 h1` per source vertex.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, TargetGraph};

struct Parsed {
    n: usize,
    edges: Vec<(usize, usize)>,
    loops: Vec<usize>,
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields(line_no: usize, line: &str, expected: usize) -> Result<Vec<usize>> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != expected {
        return Err(Error::Parse {
            line: line_no,
            message: format!("expected {expected} integers, found {:?}", line),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("not a nonnegative integer: {f:?}"),
            })
        })
        .collect()
}

fn parse(text: &str, allow_loops: bool) -> Result<Parsed> {
    let mut lines = significant_lines(text);
    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header \"n m L\"".into(),
    })?;
    let h = parse_fields(header_line, header, 3)?;
    let (n, m, l) = (h[0], h[1], h[2]);
    if l > 0 && !allow_loops {
        return Err(Error::Parse {
            line: header_line,
            message: "loops are only allowed in target graph files".into(),
        });
    }
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    let mut loops = Vec::with_capacity(l);
    for k in 0..m + l {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: header_line,
            message: format!("header declares {} entries, found {k}", m + l),
        })?;
        let f = parse_fields(line_no, line, 2)?;
        let (u, v) = (f[0], f[1]);
        if u >= n || v >= n {
            return Err(Error::Parse {
                line: line_no,
                message: format!("vertex out of range (n = {n})"),
            });
        }
        if k < m {
            if u >= v {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("edge lines need u < v, got {u} {v}"),
                });
            }
            edges.push((u, v));
        } else {
            if u != v {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("loop lines need v v, got {u} {v}"),
                });
            }
            loops.push(u);
        }
        if !seen.insert((u, v)) {
            return Err(Error::Parse {
                line: line_no,
                message: format!("duplicate entry {u} {v}"),
            });
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            message: "trailing content after declared edges".into(),
        });
    }
    Ok(Parsed { n, edges, loops })
}

fn attach_line<T>(r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::InvalidParameter(message) => Error::Parse { line: 1, message },
        other => other,
    })
}

pub fn parse_simple_graph(text: &str) -> Result<SimpleGraph> {
    let p = parse(text, false)?;
    attach_line(SimpleGraph::from_edges(p.n, &p.edges))
}

pub fn parse_target_graph(text: &str) -> Result<TargetGraph> {
    let p = parse(text, true)?;
    let mut all = p.edges;
    all.extend(p.loops.iter().map(|&v| (v, v)));
    attach_line(TargetGraph::from_edges(p.n, &all))
}

pub fn simple_graph_to_text(g: &SimpleGraph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {} 0\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn target_graph_to_text(h: &TargetGraph) -> String {
    let edges = h.non_loop_edges();
    let loops = h.loops();
    let mut out = format!("{} {} {}\n", h.n(), edges.len(), loops.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    for v in loops {
        out.push_str(&format!("{v} {v}\n"));
    }
    out
}

/// Parse `v h0 h1` lines into labels indexed by `v`; every vertex in
/// `0..n` must appear exactly once.
pub fn parse_pair_labels(text: &str, n: usize) -> Result<Vec<(usize, usize)>> {
    let mut labels = BTreeMap::new();
    let mut last_line = 1;
    for (line_no, line) in significant_lines(text) {
        last_line = line_no;
        let f = parse_fields(line_no, line, 3)?;
        if f[0] >= n {
            return Err(Error::Parse {
                line: line_no,
                message: format!("vertex {} out of range (n = {n})", f[0]),
            });
        }
        if labels.insert(f[0], (f[1], f[2])).is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("vertex {} labelled twice", f[0]),
            });
        }
    }
    if labels.len() != n {
        return Err(Error::Parse {
            line: last_line,
            message: format!("expected labels for {n} vertices, found {}", labels.len()),
        });
    }
    Ok(labels.into_values().collect())
}

pub fn pair_labels_to_text(labels: &[(usize, usize)]) -> String {
    labels
        .iter()
        .enumerate()
        .map(|(v, (a, b))| format!("{v} {a} {b}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_target() {
        let text = "2 1 1\n0 1\n0 0\n";
        let h = parse_target_graph(text).unwrap();
        assert!(h.has_loop(0) && h.has_edge(0, 1) && !h.has_loop(1));
        assert_eq!(target_graph_to_text(&h), text);
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let g = parse_simple_graph("# triangle\n3 3 0\n\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(simple_graph_to_text(&g), "3 3 0\n0 1\n0 2\n1 2\n");
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("", 1),
            ("3 1 0\n0 3\n", 2),
            ("3 2 0\n0 1\n0 1\n", 3),
            ("3 1 0\n1 0\n", 2),
            ("2 0 1\n0 0\n", 1),
            ("3 2 0\n0 1\n", 1),
            ("3 1 0\n0 1\n1 2\n", 3),
            ("3 1 0\n0 x\n", 2),
        ];
        for (text, line) in cases {
            match parse_simple_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
        assert!(matches!(
            parse_target_graph("2 0 1\n0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn pair_labels() {
        let labels = parse_pair_labels("1 2 0\n0 1 1\n", 2).unwrap();
        assert_eq!(labels, vec![(1, 1), (2, 0)]);
        assert_eq!(pair_labels_to_text(&labels), "0 1 1\n1 2 0\n");
        assert!(parse_pair_labels("0 1 1\n", 2).is_err());
        assert!(parse_pair_labels("0 1 1\n0 1 1\n", 1).is_err());
    }
}
