//! Simple loopless graphs, action certification, s-arcs and isomorphism.

mod iso;
mod report;

pub use iso::{are_isomorphic, is_isomorphism};
pub use report::{enumerate_s_arcs, verify_action, verify_action_with_limit, TransitivityReport, DEFAULT_S_ARC_LIMIT};

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A simple loopless undirected graph on labelled vertices `0..n`.
///
/// Adjacency is stored as sorted neighbour lists; the arc set is
/// `{(u, v) : v ∈ Γ(u)}` and is symmetric by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph with default labels `1..=n`.
    pub fn new(n: usize) -> Self {
        Graph {
            labels: (1..=n).map(|i| i.to_string()).collect(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        let n = labels.len();
        Graph {
            labels,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from an arc set, which must be symmetric and loopless.
    pub fn from_arcs(labels: Vec<String>, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = labels.len();
        let mut sets = vec![BTreeSet::new(); n];
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!("arc ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("loop at vertex {u}")));
            }
            sets[u].insert(v);
        }
        for u in 0..n {
            for &v in &sets[u] {
                if !sets[v].contains(&u) {
                    return Err(Error::InvalidInput(format!("arc ({u}, {v}) has no reverse")));
                }
            }
        }
        Ok(Graph {
            labels,
            adj: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::InvalidInput(format!("edge ({}, {}) out of range", u + 1, v + 1)));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("loop at vertex {}", u + 1)));
        }
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
        }
        if let Err(pos) = self.adj[v].binary_search(&u) {
            self.adj[v].insert(pos, u);
        }
        Ok(())
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n).unwrap();
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.adj.len());
        self.labels = labels;
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.arc_count());
        for (u, ns) in self.adj.iter().enumerate() {
            for &v in ns {
                out.push((u, v));
            }
        }
        out
    }

    /// Edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.arcs().into_iter().filter(|(u, v)| u < v).collect()
    }

    /// Common valency, if the graph is regular.
    pub fn valency(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|ns| ns.len() == d).then_some(d)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Whether `p` maps arcs to arcs.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.vertex_count() && self.arcs().iter().all(|&(u, v)| self.has_arc(p.apply(u), p.apply(v)))
    }

    /// Subgraph induced on `vertices` (kept in the given order).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let arcs = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let pos = &pos;
            self.adj[v]
                .iter()
                .filter(move |&&w| pos[w] != usize::MAX)
                .map(move |&w| (i, pos[w]))
        });
        Graph::from_arcs(labels, arcs.collect::<Vec<_>>()).expect("induced subgraph of a simple graph")
    }

    /// Disjoint union; vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.vertex_count();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let arcs = self
            .arcs()
            .into_iter()
            .chain(other.arcs().into_iter().map(|(u, v)| (u + off, v + off)));
        Graph::from_arcs(labels, arcs.collect::<Vec<_>>()).unwrap()
    }
}

/// A directed subgraph `(W, B)` of a host graph; arcs need not be symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedSubgraph {
    vertices: BTreeSet<usize>,
    arcs: BTreeSet<(usize, usize)>,
}

impl DirectedSubgraph {
    pub fn new(
        host: &Graph,
        vertices: impl IntoIterator<Item = usize>,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let vertices: BTreeSet<usize> = vertices.into_iter().collect();
        let arcs: BTreeSet<(usize, usize)> = arcs.into_iter().collect();
        if let Some(&v) = vertices.iter().find(|&&v| v >= host.vertex_count()) {
            return Err(Error::NotSubgraph(v, v));
        }
        for &(u, v) in &arcs {
            if !vertices.contains(&u) || !vertices.contains(&v) || !host.has_arc(u, v) {
                return Err(Error::NotSubgraph(u, v));
            }
        }
        Ok(DirectedSubgraph { vertices, arcs })
    }

    /// Directed subgraph spanned by a list of arcs.
    pub fn from_arcs(host: &Graph, arcs: &[(usize, usize)]) -> Result<Self> {
        let vertices: Vec<usize> = arcs.iter().flat_map(|&(u, v)| [u, v]).collect();
        DirectedSubgraph::new(host, vertices, arcs.iter().copied())
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    pub fn image(&self, p: &Permutation) -> DirectedSubgraph {
        DirectedSubgraph {
            vertices: self.vertices.iter().map(|&v| p.apply(v)).collect(),
            arcs: self.arcs.iter().map(|&(u, v)| (p.apply(u), p.apply(v))).collect(),
        }
    }
}
