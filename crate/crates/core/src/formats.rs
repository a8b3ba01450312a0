//! Plain-text file formats. Points and vertices are 1-based on disk.
//!
//! - group: `degree: n`, then one permutation per line in cycle notation;
//! - graph: `vertices: n`, optional `label <i> <text>`, then `edge <u> <v>` lines;
//! - design: `points: n`, then `block <name>: p1 p2 ...` lines;
//! - chain: `arc <u> <v> <element of N>` lines;
//! - twist: one line per generator of `G` listing the images of the generators of `N`.
//!
//! Blank lines and `#` comments are ignored everywhere. Block systems use
//! [`BlockSystem::to_text`] and [`BlockSystem::parse`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::designs::IncidenceStructure;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{parse_generator_list, GroupSpec, GroupTable, Permutation};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn syntax(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::SyntaxError(format!("line {line}: {msg}"))
}

fn header(lines: &mut dyn Iterator<Item = (usize, &str)>, key: &str) -> Result<usize> {
    let (n, line) = lines
        .next()
        .ok_or_else(|| Error::SyntaxError(format!("missing `{key}:` header")))?;
    let value = line
        .strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix(':'))
        .ok_or_else(|| syntax(n, format!("expected `{key}: <n>`")))?;
    value.trim().parse().map_err(|_| syntax(n, format!("bad {key} count")))
}

fn one_based(n: usize, token: &str, limit: usize) -> Result<usize> {
    let v: usize = token
        .parse()
        .map_err(|_| syntax(n, format!("`{token}` is not a number")))?;
    if v == 0 || v > limit {
        return Err(syntax(n, format!("index {v} outside 1..={limit}")));
    }
    Ok(v - 1)
}

pub fn parse_group(text: &str) -> Result<GroupSpec> {
    let mut lines = content_lines(text);
    let degree = header(&mut lines, "degree")?;
    let gens = lines
        .map(|(n, l)| Permutation::parse_cycles(l, degree).map_err(|e| syntax(n, e)))
        .collect::<Result<Vec<_>>>()?;
    GroupSpec::new(degree, gens)
}

pub fn group_to_text(degree: usize, generators: &[Permutation]) -> String {
    let mut s = format!("degree: {degree}\n");
    for g in generators {
        let _ = writeln!(s, "{}", g.to_cycle_string());
    }
    s
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "vertices")?;
    let mut labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let mut parts = line.splitn(3, char::is_whitespace);
        match parts.next() {
            Some("label") => {
                let v = one_based(ln, parts.next().unwrap_or(""), n)?;
                labels[v] = parts.next().unwrap_or("").trim().to_string();
            }
            Some("edge") => {
                let rest: Vec<&str> = parts.flat_map(|p| p.split_whitespace()).collect();
                if rest.len() != 2 {
                    return Err(syntax(ln, "expected `edge <u> <v>`"));
                }
                edges.push((one_based(ln, rest[0], n)?, one_based(ln, rest[1], n)?));
            }
            _ => return Err(syntax(ln, format!("unknown line `{line}`"))),
        }
    }
    let mut g = Graph::from_edges(n, &edges)?;
    g.set_labels(labels);
    Ok(g)
}

pub fn graph_to_text(graph: &Graph) -> String {
    let mut s = format!("vertices: {}\n", graph.vertex_count());
    for v in 0..graph.vertex_count() {
        if graph.label(v) != (v + 1).to_string() {
            let _ = writeln!(s, "label {} {}", v + 1, graph.label(v));
        }
    }
    for (u, v) in graph.edges() {
        let _ = writeln!(s, "edge {} {}", u + 1, v + 1);
    }
    s
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn graph_to_dot(graph: &Graph, name: &str) -> String {
    let mut s = format!("graph \"{}\" {{\n", dot_escape(name));
    for v in 0..graph.vertex_count() {
        let _ = writeln!(s, "  {} [label=\"{}\"];", v + 1, dot_escape(graph.label(v)));
    }
    for (u, v) in graph.edges() {
        let _ = writeln!(s, "  {} -- {};", u + 1, v + 1);
    }
    s.push_str("}\n");
    s
}

pub fn parse_design(text: &str) -> Result<IncidenceStructure> {
    let mut lines = content_lines(text);
    let v = header(&mut lines, "points")?;
    let mut names = Vec::new();
    let mut flags = Vec::new();
    for (ln, line) in lines {
        let rest = line
            .strip_prefix("block")
            .ok_or_else(|| syntax(ln, "expected `block <name>: points`"))?;
        let (name, pts) = rest.split_once(':').ok_or_else(|| syntax(ln, "missing `:`"))?;
        let b = names.len();
        names.push(name.trim().to_string());
        for t in pts.split_whitespace() {
            flags.push((one_based(ln, t, v)?, b));
        }
    }
    IncidenceStructure::new((1..=v).map(|i| i.to_string()).collect(), names, flags)
}

pub fn design_to_text(inc: &IncidenceStructure) -> String {
    let mut s = format!("points: {}\n", inc.point_count());
    for b in 0..inc.block_count() {
        let pts: Vec<String> = inc.trace(b).iter().map(|p| (p + 1).to_string()).collect();
        let _ = writeln!(s, "block {}: {}", inc.block_labels[b], pts.join(" "));
    }
    s
}

/// Values of a partial chain, as element indices of `n`.
pub fn parse_chain(text: &str, graph: &Graph, n: &GroupTable) -> Result<BTreeMap<(usize, usize), usize>> {
    let mut out = BTreeMap::new();
    for (ln, line) in content_lines(text) {
        let rest = line
            .strip_prefix("arc")
            .ok_or_else(|| syntax(ln, "expected `arc <u> <v> <element>`"))?;
        let mut parts = rest.trim_start().splitn(3, char::is_whitespace);
        let u = one_based(ln, parts.next().unwrap_or(""), graph.vertex_count())?;
        let v = one_based(ln, parts.next().unwrap_or("").trim(), graph.vertex_count())?;
        let elem =
            Permutation::parse_cycles(parts.next().unwrap_or("").trim(), n.degree()).map_err(|e| syntax(ln, e))?;
        let idx = n
            .index_of(&elem)
            .ok_or_else(|| syntax(ln, format!("{elem} is not in N")))?;
        if out.insert((u, v), idx).is_some_and(|old| old != idx) {
            return Err(syntax(ln, "arc given two values"));
        }
    }
    Ok(out)
}

pub fn chain_to_text(values: &BTreeMap<(usize, usize), usize>, n: &GroupTable) -> String {
    let mut s = String::new();
    for (&(u, v), &x) in values {
        let _ = writeln!(s, "arc {} {} {}", u + 1, v + 1, n.element(x).to_cycle_string());
    }
    s
}

/// One line per generator of `G`; each line lists images of `N`'s generators.
pub fn parse_twist(text: &str, n_degree: usize) -> Result<Vec<Vec<Permutation>>> {
    content_lines(text)
        .map(|(ln, l)| {
            let l = l.split_once(':').map_or(l, |(_, r)| r);
            parse_generator_list(l, n_degree).map_err(|e| syntax(ln, e))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{k4, petersen, z2};

    #[test]
    fn group_round_trip() {
        let spec = parse_group("# S4\ndegree: 4\n(1 2)\n\n(1 2 3 4)  # 4-cycle\n").unwrap();
        assert_eq!(spec.degree, 4);
        let text = group_to_text(spec.degree, &spec.generators);
        assert_eq!(text, "degree: 4\n(1 2)\n(1 2 3 4)\n");
        assert!(parse_group("(1 2)\n").is_err());
        assert!(matches!(parse_group("degree: 3\n(1 4)\n"), Err(Error::SyntaxError(_))));
    }

    #[test]
    fn graph_round_trip() {
        let g = petersen();
        let back = parse_graph(&graph_to_text(&g)).unwrap();
        assert_eq!(back.edges(), g.edges());
        let labelled = parse_graph("vertices: 2\nlabel 1 H\nlabel 2 H(1 2)\nedge 1 2\n").unwrap();
        assert_eq!(labelled.label(1), "H(1 2)");
        assert!(graph_to_text(&labelled).contains("label 2 H(1 2)"));
        assert!(parse_graph("vertices: 2\nedge 1 3\n").is_err());
        assert!(parse_graph("vertices: 2\nloop 1\n").is_err());
    }

    #[test]
    fn dot_has_every_edge() {
        let dot = graph_to_dot(&k4(), "K4");
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert!(dot.starts_with("graph \"K4\" {"));
    }

    #[test]
    fn design_round_trip() {
        let inc = IncidenceStructure::from_blocks(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let text = design_to_text(&inc);
        assert_eq!(text, "points: 3\nblock b1: 1 2\nblock b2: 2 3\nblock b3: 1 3\n");
        assert_eq!(parse_design(&text).unwrap().flags(), inc.flags());
    }

    #[test]
    fn chain_and_twist() {
        let text = "arc 1 2 (1 2)\narc 2 1 (1 2)\n";
        let values = parse_chain(text, &k4(), &z2()).unwrap();
        assert_eq!(values.len(), 2);
        assert_eq!(chain_to_text(&values, &z2()), text);
        assert!(parse_chain("arc 1 5 ()\n", &k4(), &z2()).is_err());
        let tw = parse_twist("g1: (1 3 2)\n", 3).unwrap();
        assert_eq!(tw.len(), 1);
        assert_eq!(tw[0][0].to_cycle_string(), "(1 3 2)");
    }
}
