//! Reader and writer for the Repetita text format.
//!
//! ```text
//! NODES 2
//! label x y
//! a 0.0 0.0
//! b 1.0 0.0
//!
//! EDGES 2
//! label src dest weight bw delay
//! edge_0 0 1 1 1000 10
//! edge_1 1 0 1 1000 10
//! ```
//!
//! Demand files use `DEMANDS <d>` followed by the header `label src dest bw`.
//! Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use super::{Arc, Demand, Node, Topology, TrafficMatrix};
use crate::error::{parse_err, Error, Result};

/// Non-blank, non-comment lines with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace().collect()))
        }
    })
}

fn section_count<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    keyword: &str,
    last_line: usize,
) -> Result<(usize, usize)> {
    let (line, fields) = lines
        .next()
        .ok_or_else(|| parse_err(last_line, format!("missing {keyword} section")))?;
    if fields.len() != 2 || fields[0] != keyword {
        return Err(parse_err(
            line,
            format!("malformed header: expected \"{keyword} <count>\""),
        ));
    }
    let count = fields[1]
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("malformed header: bad count {:?}", fields[1])))?;
    Ok((line, count))
}

fn column_header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    expected: &[&str],
    last_line: usize,
) -> Result<usize> {
    let (line, fields) = lines
        .next()
        .ok_or_else(|| parse_err(last_line, "malformed header: missing column header"))?;
    if fields.len() != expected.len() || fields[0] != "label" {
        return Err(parse_err(
            line,
            format!("malformed header: expected \"{}\"", expected.join(" ")),
        ));
    }
    Ok(line)
}

fn field<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what} {token:?}")))
}

/// Parses a graph file and checks strong connectivity.
pub fn parse_topology(text: &str) -> Result<Topology> {
    let mut lines = content_lines(text).peekable();
    let (header_line, n) = section_count(&mut lines, "NODES", 1)?;
    let mut last = column_header(&mut lines, &["label", "x", "y"], header_line)?;

    let mut nodes = Vec::with_capacity(n);
    while nodes.len() < n {
        match lines.peek() {
            Some((_, fields)) if fields[0] == "EDGES" => break,
            None => break,
            _ => {}
        }
        let (line, fields) = lines.next().expect("peeked");
        if fields.len() != 3 {
            return Err(parse_err(
                line,
                format!("wrong field count: expected 3, got {}", fields.len()),
            ));
        }
        nodes.push(Node {
            index: nodes.len(),
            label: fields[0].to_string(),
            x: field(line, fields[1], "x coordinate")?,
            y: field(line, fields[2], "y coordinate")?,
        });
        last = line;
    }
    if nodes.len() != n {
        return Err(parse_err(
            last,
            format!("node count mismatch: header says {n}, found {}", nodes.len()),
        ));
    }

    let (header_line, m) = section_count(&mut lines, "EDGES", last)?;
    let mut last = column_header(
        &mut lines,
        &["label", "src", "dest", "weight", "bw", "delay"],
        header_line,
    )?;
    let mut arcs = Vec::with_capacity(m);
    for (line, fields) in lines.by_ref() {
        if arcs.len() == m {
            return Err(parse_err(
                line,
                format!("arc count mismatch: header says {m}, found more"),
            ));
        }
        if fields.len() != 6 {
            return Err(parse_err(
                line,
                format!("wrong field count: expected 6, got {}", fields.len()),
            ));
        }
        let src: usize = field(line, fields[1], "source node")?;
        let dst: usize = field(line, fields[2], "destination node")?;
        for node in [src, dst] {
            if node >= n {
                return Err(parse_err(
                    line,
                    format!("dangling node reference {node} (graph has {n} nodes)"),
                ));
            }
        }
        if src == dst {
            return Err(parse_err(line, format!("self loop at node {src}")));
        }
        let weight: i64 = field(line, fields[3], "weight")?;
        if weight <= 0 {
            return Err(parse_err(line, format!("non-positive weight {weight}")));
        }
        let capacity: f64 = field(line, fields[4], "capacity")?;
        if !(capacity > 0.0 && capacity.is_finite()) {
            return Err(parse_err(line, format!("non-positive capacity {capacity}")));
        }
        let delay: f64 = field(line, fields[5], "delay")?;
        arcs.push(Arc {
            index: arcs.len(),
            label: fields[0].to_string(),
            src,
            dst,
            weight: weight as u64,
            capacity,
            delay,
        });
        last = line;
    }
    if arcs.len() != m {
        return Err(parse_err(
            last,
            format!("arc count mismatch: header says {m}, found {}", arcs.len()),
        ));
    }

    let topo = Topology::new(nodes, arcs)?;
    topo.check_strongly_connected()?;
    Ok(topo)
}

fn resolve_node(topo: &Topology, line: usize, token: &str) -> Result<usize> {
    if let Ok(index) = token.parse::<usize>() {
        if index < topo.node_count() {
            return Ok(index);
        }
    }
    topo.nodes()
        .iter()
        .position(|node| node.label == token)
        .ok_or_else(|| parse_err(line, format!("unknown node {token:?}")))
}

/// Parses a demand file against an already parsed topology. Demand ids follow
/// file order.
pub fn parse_demands(text: &str, topo: &Topology) -> Result<TrafficMatrix> {
    let mut lines = content_lines(text);
    let (header_line, d) = section_count(&mut lines, "DEMANDS", 1)?;
    let mut last = column_header(&mut lines, &["label", "src", "dest", "bw"], header_line)?;
    let mut seen = std::collections::HashMap::new();
    let mut demands = Vec::with_capacity(d);
    for (line, fields) in lines {
        if demands.len() == d {
            return Err(parse_err(
                line,
                format!("demand count mismatch: header says {d}, found more"),
            ));
        }
        if fields.len() != 4 {
            return Err(parse_err(
                line,
                format!("wrong field count: expected 4, got {}", fields.len()),
            ));
        }
        let src = resolve_node(topo, line, fields[1])?;
        let dst = resolve_node(topo, line, fields[2])?;
        if src == dst {
            return Err(parse_err(line, format!("demand from node {src} to itself")));
        }
        let volume: f64 = field(line, fields[3], "volume")?;
        if !(volume > 0.0 && volume.is_finite()) {
            return Err(parse_err(line, format!("non-positive volume {volume}")));
        }
        if let Some(first) = seen.insert((src, dst), line) {
            return Err(parse_err(
                line,
                format!("duplicate demand ({src}, {dst}), first given on line {first}"),
            ));
        }
        demands.push(Demand {
            id: demands.len(),
            src,
            dst,
            volume,
            label: fields[0].to_string(),
        });
        last = line;
    }
    if demands.len() != d {
        return Err(parse_err(
            last,
            format!("demand count mismatch: header says {d}, found {}", demands.len()),
        ));
    }
    TrafficMatrix::new(demands).map_err(|e| match e {
        Error::InvalidInstance(msg) => parse_err(last, msg),
        other => other,
    })
}

pub fn write_topology(topo: &Topology) -> String {
    let mut out = String::new();
    writeln!(out, "NODES {}", topo.node_count()).unwrap();
    writeln!(out, "label x y").unwrap();
    for node in topo.nodes() {
        writeln!(out, "{} {} {}", node.label, node.x, node.y).unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "EDGES {}", topo.arc_count()).unwrap();
    writeln!(out, "label src dest weight bw delay").unwrap();
    for arc in topo.arcs() {
        writeln!(
            out,
            "{} {} {} {} {} {}",
            arc.label, arc.src, arc.dst, arc.weight, arc.capacity, arc.delay
        )
        .unwrap();
    }
    out
}

pub fn write_demands(tm: &TrafficMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "DEMANDS {}", tm.len()).unwrap();
    writeln!(out, "label src dest bw").unwrap();
    for d in tm.demands() {
        writeln!(out, "{} {} {} {}", d.label, d.src, d.dst, d.volume).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const DIAMOND: &str = "\
NODES 4
label x y
n0 0 0
n1 1 1
n2 1 -1
n3 2 0

EDGES 8
label src dest weight bw delay
e0 0 1 1 1000 1
e1 1 0 1 1000 1
e2 0 2 1 1000 1
e3 2 0 1 1000 1
e4 1 3 1 1000 1
e5 3 1 1 1000 1
e6 2 3 1 1000 1
e7 3 2 1 1000 1
";

    fn message(err: Error) -> String {
        err.to_string()
    }

    #[test]
    fn parses_diamond() {
        let t = parse_topology(DIAMOND).unwrap();
        assert_eq!(t.node_count(), 4);
        assert_eq!(t.arc_count(), 8);
        assert_eq!(t.nodes()[3].label, "n3");
        assert_eq!(t.arc(4).src, 1);
        assert_eq!(t.arc(4).dst, 3);
        assert_eq!(t.arc(4).capacity, 1000.0);
    }

    #[test]
    fn arc_count_mismatch() {
        let text = DIAMOND.replace("e7 3 2 1 1000 1\n", "");
        let err = message(parse_topology(&text).unwrap_err());
        assert!(err.contains("arc count mismatch"), "{err}");
        let text = format!("{DIAMOND}e8 3 2 1 1000 1\n");
        assert!(message(parse_topology(&text).unwrap_err()).contains("arc count mismatch"));
    }

    #[test]
    fn unused_node_is_not_strongly_connected() {
        let text = DIAMOND
            .replace("NODES 4", "NODES 5")
            .replace("n3 2 0\n", "n3 2 0\nn4 3 0\n");
        let err = message(parse_topology(&text).unwrap_err());
        assert!(err.contains("graph not strongly connected"), "{err}");
    }

    #[test]
    fn reports_line_numbers() {
        let text = DIAMOND.replace("e2 0 2 1 1000 1", "e2 0 9 1 1000 1");
        match parse_topology(&text).unwrap_err() {
            Error::Parse { line, message } => {
                assert_eq!(line, 12);
                assert!(message.contains("dangling"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let text = DIAMOND.replace("e2 0 2 1 1000 1", "e2 0 2 0 1000 1");
        assert!(message(parse_topology(&text).unwrap_err()).contains("non-positive weight"));
        let text = DIAMOND.replace("e2 0 2 1 1000 1", "e2 0 2 1 -5 1");
        assert!(message(parse_topology(&text).unwrap_err()).contains("non-positive capacity"));
        let text = DIAMOND.replace("e2 0 2 1 1000 1", "e2 0 2 1 1000");
        assert!(message(parse_topology(&text).unwrap_err()).contains("wrong field count"));
        let text = DIAMOND.replace("NODES 4", "NODES four");
        assert!(message(parse_topology(&text).unwrap_err()).contains("malformed header"));
    }

    #[test]
    fn comments_are_skipped() {
        let text = format!("# generated\n{}", DIAMOND.replace("EDGES 8", "# links\nEDGES 8"));
        assert_eq!(parse_topology(&text).unwrap().arc_count(), 8);
    }

    #[test]
    fn demand_file() {
        let t = parse_topology(DIAMOND).unwrap();
        let tm = parse_demands("DEMANDS 1\nlabel src dest bw\nd0 0 3 10.0\n", &t).unwrap();
        assert_eq!(tm.len(), 1);
        let d = &tm.demands()[0];
        assert_eq!((d.id, d.src, d.dst, d.volume), (0, 0, 3, 10.0));

        let dup = "DEMANDS 2\nlabel src dest bw\nd0 0 3 1\nd1 0 3 2\n";
        assert!(message(parse_demands(dup, &t).unwrap_err()).contains("duplicate"));
        let unknown = "DEMANDS 1\nlabel src dest bw\nd0 0 9 1\n";
        assert!(message(parse_demands(unknown, &t).unwrap_err()).contains("unknown node"));
        let zero = "DEMANDS 1\nlabel src dest bw\nd0 0 3 0\n";
        assert!(message(parse_demands(zero, &t).unwrap_err()).contains("non-positive volume"));
        let by_label = "DEMANDS 1\nlabel src dest bw\nd0 n1 n2 4\n";
        let tm = parse_demands(by_label, &t).unwrap();
        assert_eq!((tm.demands()[0].src, tm.demands()[0].dst), (1, 2));
    }

    #[test]
    fn writer_round_trips() {
        let t = parse_topology(DIAMOND).unwrap();
        assert_eq!(parse_topology(&write_topology(&t)).unwrap(), t);
        let tm = parse_demands("DEMANDS 2\nlabel src dest bw\nd0 0 3 10.5\nd1 3 0 1e-3\n", &t).unwrap();
        assert_eq!(parse_demands(&write_demands(&tm), &t).unwrap(), tm);
    }
}
