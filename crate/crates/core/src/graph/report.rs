use std::collections::HashSet;

use super::Graph;
use crate::error::{Error, Result};
use crate::perm::{orbit, GroupTable, Permutation};

/// Largest `s` probed when measuring s-arc transitivity.
pub const DEFAULT_S_ARC_LIMIT: usize = 5;

/// Transitivity properties of a group action on a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityReport {
    pub acts_as_automorphisms: bool,
    pub vertex_transitive: bool,
    pub arc_transitive: bool,
    pub locally_transitive: bool,
    /// Largest `s` such that the action is transitive on `t`-arcs for every `t ≤ s`.
    /// Zero when the action is not vertex-transitive (or only vertex-transitive).
    pub s_arc_transitive_up_to: usize,
    pub action_kernel_size: usize,
    pub vertex_orbit_count: usize,
    pub arc_orbit_count: usize,
    /// A generator index and arc it fails to preserve, when not an automorphism action.
    pub counterexample: Option<(usize, (usize, usize))>,
}

impl TransitivityReport {
    /// Vertex-transitive and locally transitive automorphism action.
    pub fn is_symmetric(&self) -> bool {
        self.acts_as_automorphisms && self.vertex_transitive && self.locally_transitive
    }
}

pub fn verify_action(graph: &Graph, group: &GroupTable) -> Result<TransitivityReport> {
    verify_action_with_limit(graph, group, DEFAULT_S_ARC_LIMIT)
}

pub fn verify_action_with_limit(graph: &Graph, group: &GroupTable, s_limit: usize) -> Result<TransitivityReport> {
    let n = graph.vertex_count();
    if group.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: group.degree(),
        });
    }
    let mut counterexample = None;
    'gens: for (gi, g) in group.generators().iter().enumerate() {
        for (u, v) in graph.arcs() {
            if !graph.has_arc(g.apply(u), g.apply(v)) {
                counterexample = Some((gi, (u, v)));
                break 'gens;
            }
        }
    }
    let acts = counterexample.is_none();

    let mut seen = vec![false; n];
    let mut vertex_orbit_count = 0;
    for v in 0..n {
        if !seen[v] {
            vertex_orbit_count += 1;
            for w in orbit(group, v) {
                seen[w] = true;
            }
        }
    }
    let vertex_transitive = vertex_orbit_count <= 1;

    let arcs = graph.arcs();
    let mut arc_seen: HashSet<(usize, usize)> = HashSet::new();
    let mut arc_orbit_count = 0;
    for &a in &arcs {
        if arc_seen.contains(&a) {
            continue;
        }
        arc_orbit_count += 1;
        for b in orbit_of(group.generators(), vec![a.0, a.1]) {
            arc_seen.insert((b[0], b[1]));
        }
    }
    let arc_transitive = acts && arc_orbit_count <= 1;

    let mut locally_transitive = acts;
    if acts {
        for v in 0..n {
            let nbrs = graph.neighbors(v);
            if nbrs.is_empty() {
                continue;
            }
            let reach: HashSet<usize> = group
                .elements()
                .iter()
                .filter(|g| g.apply(v) == v)
                .map(|g| g.apply(nbrs[0]))
                .collect();
            if reach.len() != nbrs.len() {
                locally_transitive = false;
                break;
            }
        }
    }

    let action_kernel_size = group.elements().iter().filter(|g| g.is_identity()).count();

    let mut s_up_to = 0;
    if acts && vertex_transitive && n > 0 {
        for s in 1..=s_limit {
            let Some(first) = first_s_arc(graph, s) else {
                break;
            };
            let count = count_s_arcs(graph, s);
            if orbit_of(group.generators(), first).len() == count {
                s_up_to = s;
            } else {
                break;
            }
        }
    }

    Ok(TransitivityReport {
        acts_as_automorphisms: acts,
        vertex_transitive,
        arc_transitive,
        locally_transitive,
        s_arc_transitive_up_to: s_up_to,
        action_kernel_size,
        vertex_orbit_count,
        arc_orbit_count,
        counterexample,
    })
}

/// Orbit of a vertex sequence under the group generated by `gens`.
pub(crate) fn orbit_of(gens: &[Permutation], start: Vec<usize>) -> HashSet<Vec<usize>> {
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y: Vec<usize> = x.iter().map(|&p| g.apply(p)).collect();
            if !seen.contains(&y) {
                seen.insert(y.clone());
                stack.push(y);
            }
        }
    }
    seen
}

/// All s-arcs `(v_0, .., v_s)`: consecutive vertices adjacent and `v_{i-1} ≠ v_{i+1}`.
pub fn enumerate_s_arcs(graph: &Graph, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(s + 1);
    for v in 0..graph.vertex_count() {
        path.push(v);
        extend(graph, s, &mut path, &mut out);
        path.pop();
    }
    out
}

fn extend(graph: &Graph, s: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if path.len() == s + 1 {
        out.push(path.clone());
        return;
    }
    let last = path[path.len() - 1];
    let back = if path.len() >= 2 {
        Some(path[path.len() - 2])
    } else {
        None
    };
    for &w in graph.neighbors(last) {
        if Some(w) == back {
            continue;
        }
        path.push(w);
        extend(graph, s, path, out);
        path.pop();
    }
}

fn count_s_arcs(graph: &Graph, s: usize) -> usize {
    // number of non-backtracking walks: dynamic programming over arcs
    if s == 0 {
        return graph.vertex_count();
    }
    let arcs = graph.arcs();
    let index: std::collections::HashMap<(usize, usize), usize> =
        arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut counts = vec![1usize; arcs.len()];
    for _ in 1..s {
        let mut next = vec![0usize; arcs.len()];
        for (i, &(u, v)) in arcs.iter().enumerate() {
            // walks ending with arc (u, v) extend to (v, w), w != u
            for &w in graph.neighbors(v) {
                if w != u {
                    next[index[&(v, w)]] += counts[i];
                }
            }
        }
        counts = next;
    }
    counts.iter().sum()
}

fn first_s_arc(graph: &Graph, s: usize) -> Option<Vec<usize>> {
    fn go(graph: &Graph, s: usize, path: &mut Vec<usize>) -> bool {
        if path.len() == s + 1 {
            return true;
        }
        let last = path[path.len() - 1];
        let back = if path.len() >= 2 {
            Some(path[path.len() - 2])
        } else {
            None
        };
        for &w in graph.neighbors(last) {
            if Some(w) == back {
                continue;
            }
            path.push(w);
            if go(graph, s, path) {
                return true;
            }
            path.pop();
        }
        false
    }
    for v in 0..graph.vertex_count() {
        let mut path = vec![v];
        if go(graph, s, &mut path) {
            return Some(path);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> GroupTable {
        GroupTable::from_cycles(4, &["(1 2)", "(1 2 3 4)"]).unwrap()
    }

    #[test]
    fn k4_under_s4() {
        let r = verify_action(&Graph::complete(4), &s4()).unwrap();
        assert!(r.acts_as_automorphisms && r.vertex_transitive && r.arc_transitive && r.locally_transitive);
        assert!(r.s_arc_transitive_up_to >= 2);
        assert_eq!(r.s_arc_transitive_up_to, 2);
        assert_eq!(r.action_kernel_size, 1);
        assert!(r.is_symmetric());
    }

    #[test]
    fn c6_under_rotations() {
        let z6 = GroupTable::from_cycles(6, &["(1 2 3 4 5 6)"]).unwrap();
        let r = verify_action(&Graph::cycle(6), &z6).unwrap();
        assert!(r.vertex_transitive);
        assert!(!r.arc_transitive);
        assert_eq!(r.arc_orbit_count, 2);
        assert!(!r.locally_transitive);
    }

    #[test]
    fn edgeless_graph() {
        let s3 = GroupTable::from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap();
        let r = verify_action(&Graph::new(3), &s3).unwrap();
        assert!(r.vertex_transitive && r.locally_transitive);
        assert_eq!(r.arc_orbit_count, 0);
    }

    #[test]
    fn non_automorphism_reports_counterexample() {
        let g = GroupTable::from_cycles(4, &["(1 3)"]).unwrap();
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = verify_action(&path, &g).unwrap();
        assert!(!r.acts_as_automorphisms);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn degree_mismatch() {
        assert!(matches!(
            verify_action(&Graph::complete(5), &s4()),
            Err(Error::DegreeMismatch { expected: 5, found: 4 })
        ));
    }

    #[test]
    fn s_arc_counts() {
        let k4 = Graph::complete(4);
        assert_eq!(enumerate_s_arcs(&k4, 1).len(), 12);
        assert_eq!(enumerate_s_arcs(&k4, 3).len(), 4 * 3 * 2 * 2);
        let edge = Graph::complete(2);
        assert_eq!(enumerate_s_arcs(&edge, 2).len(), 0);
        for s in 0..5 {
            assert_eq!(enumerate_s_arcs(&k4, s).len(), count_s_arcs(&k4, s));
        }
    }
}
