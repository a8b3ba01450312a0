use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{verify_action, DirectedSubgraph, Graph, TransitivityReport};
use crate::perm::{GroupTable, Permutation};

/// `Sub(Γ, Υ, a)`: the orbit of `Υ` with `Υ^g` joined to `Υ^{ag}`.
#[derive(Debug, Clone)]
pub struct SubgraphGraph {
    pub graph: Graph,
    /// Vertex `i` is `orbit[i]`; vertex 0 is `Υ` itself.
    pub orbit: Vec<DirectedSubgraph>,
    pub action: GroupTable,
    pub report: TransitivityReport,
    /// `|G_Υ|`, equal to the vertex stabilizer of the action.
    pub stabilizer_order: usize,
}

pub fn subgraph_graph(
    graph: &Graph,
    group: &GroupTable,
    sub: &DirectedSubgraph,
    a: &Permutation,
) -> Result<SubgraphGraph> {
    if !group.contains(a) {
        return Err(Error::InvalidInput(format!("{a} is not in the group")));
    }
    if a.is_identity() || !a.then(a).is_identity() {
        return Err(Error::NotInvolution(a.to_string()));
    }
    // re-validate against this host, since the subgraph may come from another graph
    let sub = DirectedSubgraph::new(graph, sub.vertices().iter().copied(), sub.arcs().iter().copied())?;
    if sub.image(a) == sub {
        return Err(Error::SubgraphFixedByInvolution);
    }
    let mut index: BTreeMap<DirectedSubgraph, usize> = BTreeMap::new();
    let mut orbit = vec![sub.clone()];
    index.insert(sub.clone(), 0);
    let mut i = 0;
    while i < orbit.len() {
        for g in group.generators() {
            let image = orbit[i].image(g);
            if !index.contains_key(&image) {
                index.insert(image.clone(), orbit.len());
                orbit.push(image);
            }
        }
        i += 1;
    }
    let sub_a = sub.image(a);
    let edges: Vec<(usize, usize)> = group
        .elements()
        .iter()
        .map(|g| (index[&sub.image(g)], index[&sub_a.image(g)]))
        .collect();
    let labels = (0..orbit.len()).map(|i| format!("U{}", i + 1)).collect();
    let result = Graph::from_arcs(labels, edges)?;
    let gens: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| Permutation::from_images(orbit.iter().map(|s| index[&s.image(g)]).collect()))
        .collect::<Result<_>>()?;
    let action = GroupTable::generate(orbit.len(), gens)?;
    let report = verify_action(&result, &action)?;
    let stabilizer_order = group.elements().iter().filter(|g| sub.image(g) == sub).count();
    Ok(SubgraphGraph {
        graph: result,
        orbit,
        action,
        report,
        stabilizer_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{k4, q3, s4};
    use crate::graph::are_isomorphic;

    fn p(s: &str) -> Permutation {
        Permutation::parse_cycles(s, 4).unwrap()
    }

    /// The directed triangle on 1-based vertices 2, 3, 4 with `a = (1 2)` fixing the arc (3, 4).
    #[test]
    fn cube_from_tetrahedron() {
        let tri = DirectedSubgraph::from_arcs(&k4(), &[(1, 2), (2, 3), (3, 1)]).unwrap();
        let s = subgraph_graph(&k4(), &s4(), &tri, &p("(1 2)")).unwrap();
        assert_eq!(s.graph.vertex_count(), 8);
        assert!(are_isomorphic(&s.graph, &q3()).is_some());
        assert!(s.report.is_symmetric());
        assert_eq!(s.stabilizer_order, 3);
    }

    /// The triangle through the two points `a` swaps gives a matching instead.
    #[test]
    fn triangle_through_swapped_points() {
        let tri = DirectedSubgraph::from_arcs(&k4(), &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let s = subgraph_graph(&k4(), &s4(), &tri, &p("(1 2)")).unwrap();
        assert_eq!(s.graph.vertex_count(), 8);
        assert_eq!(s.graph.valency(), Some(1));
    }

    #[test]
    fn single_arc_pairs_with_reverse() {
        let arc = DirectedSubgraph::from_arcs(&k4(), &[(0, 1)]).unwrap();
        let s = subgraph_graph(&k4(), &s4(), &arc, &p("(1 2)")).unwrap();
        assert_eq!(s.graph.vertex_count(), 12);
        assert_eq!(s.graph.valency(), Some(1));
        for (u, v) in s.graph.edges() {
            let a = s.orbit[u].arcs().iter().next().unwrap();
            let b = s.orbit[v].arcs().iter().next().unwrap();
            assert_eq!((a.0, a.1), (b.1, b.0));
        }
    }

    #[test]
    fn guards() {
        let arc = DirectedSubgraph::from_arcs(&k4(), &[(0, 1)]).unwrap();
        assert!(matches!(
            subgraph_graph(&k4(), &s4(), &arc, &p("(1 2 3)")),
            Err(Error::NotInvolution(_))
        ));
        let edge = DirectedSubgraph::from_arcs(&k4(), &[(0, 1), (1, 0)]).unwrap();
        assert!(matches!(
            subgraph_graph(&k4(), &s4(), &edge, &p("(1 2)")),
            Err(Error::SubgraphFixedByInvolution)
        ));
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let far = DirectedSubgraph::from_arcs(&k4(), &[(0, 3)]).unwrap();
        assert!(matches!(
            subgraph_graph(&path, &s4(), &far, &p("(1 2)")),
            Err(Error::NotSubgraph(0, 3))
        ));
    }
}
