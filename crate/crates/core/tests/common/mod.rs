#![allow(dead_code)]

use std::sync::OnceLock;

use sgk_core::constructions::{biggs_cover, NChain, SemidirectGroup};
use sgk_core::fixtures::*;
use sgk_core::graph::{are_isomorphic, is_isomorphism};
use sgk_core::{Graph, GroupTable};

/// Transitive fixture groups.
pub fn groups() -> &'static [(&'static str, GroupTable)] {
    static G: OnceLock<Vec<(&'static str, GroupTable)>> = OnceLock::new();
    G.get_or_init(|| {
        vec![
            ("s4", s4()),
            ("s5", s5()),
            ("d4", d4()),
            ("d6", d6()),
            ("z6", z6()),
            ("octahedron", octahedron_aut()),
            ("s5-pairs", s5_on_pairs().0),
        ]
    })
}

/// Symmetric fixture graphs with a group acting on them.
pub fn symmetric_pairs() -> &'static [(&'static str, Graph, GroupTable)] {
    static P: OnceLock<Vec<(&'static str, Graph, GroupTable)>> = OnceLock::new();
    P.get_or_init(|| {
        vec![
            ("k4", k4(), s4()),
            ("c6", c6(), d6()),
            ("petersen", petersen_on_pairs(), s5_on_pairs().0),
            cube(),
            ("octahedron", octahedron(), octahedron_aut()),
        ]
    })
}

/// The cube as the Biggs cover of `K4` over `Z2 x S4` with the constant non-identity chain.
fn cube() -> (&'static str, Graph, GroupTable) {
    let n = z2();
    let t = (0..n.order()).find(|&i| !n.element(i).is_identity()).unwrap();
    let sd = SemidirectGroup::direct(n, s4());
    let cover = biggs_cover(&k4(), &s4(), &sd, &NChain::constant(&k4(), t)).unwrap();
    assert!(are_isomorphic(&cover.graph, &q3()).is_some());
    ("q3", cover.graph, cover.action)
}

fn heap_permutations(k: usize, a: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k <= 1 {
        return visit(a);
    }
    for i in 0..k {
        if heap_permutations(k - 1, a, visit) {
            return true;
        }
        let j = if k.is_multiple_of(2) { i } else { 0 };
        a.swap(j, k - 1);
    }
    false
}

/// Isomorphism by trying every bijection.
pub fn brute_force_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut a: Vec<usize> = (0..g1.vertex_count()).collect();
    let n = a.len();
    heap_permutations(n, &mut a, &mut |p| is_isomorphism(g1, g2, p))
}

/// Graph on `n` vertices whose edges are chosen by `bits` in lexicographic pair order.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits.get(k).copied().unwrap_or(false) {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.vertex_count(), &edges).unwrap()
}
