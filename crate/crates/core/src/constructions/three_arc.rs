use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{enumerate_s_arcs, is_isomorphism, verify_action, Graph, TransitivityReport};
use crate::perm::{permutation_equivalent, GroupTable, Permutation, PointAction};
use crate::quotients::{certify_quotient, is_nontrivial, quotient_unchecked, QuotientCertificate};
use crate::subgroups::{setwise_stabilizer, BlockSystem};

pub type ThreeArc = [usize; 4];

/// An orbit `Δ` of the group on 3-arcs, with its pair `Δ°` of reversed 3-arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeArcOrbit {
    pub arcs: BTreeSet<ThreeArc>,
    pub self_paired: bool,
    /// Index of `Δ°` in the orbit list.
    pub paired_with: usize,
}

fn reverse(t: &ThreeArc) -> ThreeArc {
    [t[3], t[2], t[1], t[0]]
}

/// Orbits on 3-arcs, ordered by least member.
pub fn three_arc_orbits(graph: &Graph, group: &GroupTable) -> Result<Vec<ThreeArcOrbit>> {
    if !verify_action(graph, group)?.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let all: BTreeSet<ThreeArc> = enumerate_s_arcs(graph, 3)
        .into_iter()
        .map(|w| [w[0], w[1], w[2], w[3]])
        .collect();
    let mut seen = BTreeSet::new();
    let mut sets = Vec::new();
    for t in &all {
        if seen.contains(t) {
            continue;
        }
        let orbit: BTreeSet<ThreeArc> = group.elements().iter().map(|g| t.map(|v| g.apply(v))).collect();
        seen.extend(orbit.iter().copied());
        sets.push(orbit);
    }
    let owner: BTreeMap<ThreeArc, usize> = sets
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().map(move |&t| (t, i)))
        .collect();
    Ok(sets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let paired_with = owner[&reverse(s.iter().next().unwrap())];
            ThreeArcOrbit {
                arcs: s.clone(),
                self_paired: paired_with == i,
                paired_with,
            }
        })
        .collect())
}

/// `Ξ(Σ, Δ)` on the arcs of `Σ` together with its certification.
#[derive(Debug, Clone)]
pub struct ThreeArcGraph {
    pub graph: Graph,
    /// Vertex `i` is the arc `arcs[i]` of `Σ`.
    pub arcs: Vec<(usize, usize)>,
    /// The group acting on the arcs of `Σ`.
    pub action: GroupTable,
    pub report: TransitivityReport,
    /// The partition `{B(σ)}`, `B(σ)` being the arcs with tail `σ`.
    pub partition: BlockSystem,
    pub certificate: QuotientCertificate,
    /// `B(σ) ↦ σ` is an isomorphism from the quotient onto `Σ`.
    pub quotient_isomorphic: bool,
    /// Some `(σ, τ)` is adjacent to `(τ, σ)`.
    pub reverse_adjacent: bool,
}

/// `(σ, τ) ~ (σ', τ')` iff `(τ, σ, σ', τ') ∈ Δ`.
pub fn three_arc_graph(graph: &Graph, group: &GroupTable, orbit: &BTreeSet<ThreeArc>) -> Result<ThreeArcGraph> {
    if orbit.is_empty() {
        return Err(Error::InvalidInput("empty set of 3-arcs".into()));
    }
    for t in orbit {
        let valid = (0..3).all(|i| graph.has_arc(t[i], t[i + 1])) && t[0] != t[2] && t[1] != t[3];
        if !valid {
            return Err(Error::InvalidInput(format!("{t:?} is not a 3-arc")));
        }
    }
    if group
        .generators()
        .iter()
        .any(|g| orbit.iter().any(|t| !orbit.contains(&t.map(|v| g.apply(v)))))
    {
        return Err(Error::InvalidInput(
            "the 3-arc set is not invariant under the group".into(),
        ));
    }
    if orbit.iter().any(|t| !orbit.contains(&reverse(t))) {
        return Err(Error::NotSelfPaired);
    }
    let arcs = graph.arcs();
    let index: BTreeMap<(usize, usize), usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let labels = arcs
        .iter()
        .map(|&(s, t)| format!("({},{})", graph.label(s), graph.label(t)))
        .collect();
    let edges: Vec<(usize, usize)> = orbit
        .iter()
        .map(|t| (index[&(t[1], t[0])], index[&(t[2], t[3])]))
        .collect();
    let xi = Graph::from_arcs(labels, edges)?;
    let reverse_adjacent = arcs.iter().any(|&(s, t)| xi.has_arc(index[&(s, t)], index[&(t, s)]));

    let gens: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| Permutation::from_images(arcs.iter().map(|&(s, t)| index[&(g.apply(s), g.apply(t))]).collect()))
        .collect::<Result<_>>()?;
    let action = GroupTable::generate(arcs.len(), gens)?;
    let report = verify_action(&xi, &action)?;

    let mut tails: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &(s, _)) in arcs.iter().enumerate() {
        tails.entry(s).or_default().push(i);
    }
    let partition = BlockSystem::new(arcs.len(), tails.into_values().collect())?;
    let certificate = certify_quotient(&xi, &action, &partition, true)?;
    let block_to_vertex: Vec<usize> = partition.blocks().iter().map(|b| arcs[b[0]].0).collect();
    let quotient_isomorphic = certificate.quotient.vertex_count() == graph.vertex_count()
        && is_isomorphism(&certificate.quotient, graph, &block_to_vertex);
    Ok(ThreeArcGraph {
        graph: xi,
        arcs,
        action,
        report,
        partition,
        certificate,
        quotient_isomorphic,
        reverse_adjacent,
    })
}

/// A labelling `ρ: B → Γ_𝓑(B)` of the base block (the block containing vertex 0)
/// that commutes with the action of the setwise stabilizer `G_B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeLabelling {
    pub block: usize,
    /// `(vertex of B, neighbouring block)` pairs.
    pub map: Vec<(usize, usize)>,
}

/// Looks for the bijection of the permutational-equivalence condition on the base block.
pub fn check_condition_pe(graph: &Graph, group: &GroupTable, partition: &BlockSystem) -> Result<Option<PeLabelling>> {
    if !partition.is_invariant(group) {
        return Err(Error::NotInvariant);
    }
    if !is_nontrivial(graph, partition) {
        return Err(Error::TrivialQuotient);
    }
    let quotient = quotient_unchecked(graph, partition);
    let b = partition.block_of(0);
    let points: Vec<usize> = partition.block(b).to_vec();
    let nbrs: Vec<usize> = quotient.neighbors(b).to_vec();
    if points.len() != nbrs.len() {
        return Ok(None);
    }
    let stab = setwise_stabilizer(group, &points.iter().copied().collect());
    let on_points = PointAction::from_fn(&stab, points.len(), |g| {
        points
            .iter()
            .map(|&p| points.binary_search(&g.apply(p)).unwrap())
            .collect()
    });
    let on_nbrs = PointAction::from_fn(&stab, nbrs.len(), |g| {
        let bp = partition.block_permutation(g).unwrap();
        nbrs.iter()
            .map(|&c| nbrs.binary_search(&bp.apply(c)).unwrap())
            .collect()
    });
    if !on_nbrs.is_transitive() {
        return Ok(None);
    }
    Ok(
        permutation_equivalent(&stab, &on_points, &on_nbrs)?.map(|eta| PeLabelling {
            block: b,
            map: points.iter().zip(eta).map(|(&p, j)| (p, nbrs[j])).collect(),
        }),
    )
}

/// Extends a base-block labelling to every vertex: `α^g ↦ (B^g, ρ(α)^g)`.
pub fn full_labelling(group: &GroupTable, partition: &BlockSystem, pe: &PeLabelling) -> Result<Vec<(usize, usize)>> {
    let mut out = vec![None; partition.domain_size()];
    for g in group.elements() {
        let bp = partition.block_permutation(g).ok_or(Error::NotInvariant)?;
        for &(p, c) in &pe.map {
            let alpha = g.apply(p);
            let label = (partition.block_of(alpha), bp.apply(c));
            match out[alpha] {
                Some(l) if l != label => {
                    return Err(Error::SpecInvariantViolated("labelling is not equivariant".into()))
                }
                _ => out[alpha] = Some(label),
            }
        }
    }
    out.into_iter().map(|l| l.ok_or(Error::NotTransitive)).collect()
}

/// For every arc `(v_BC, v_DE)` checks that `(C, B, D, E)` is a 3-arc of the quotient.
/// `labelling[v]` is the quotient arc `(B, C)` carried by `v`, as block indices.
pub fn check_three_arc_necessity(graph: &Graph, partition: &BlockSystem, labelling: &[(usize, usize)]) -> Result<bool> {
    let valency = graph.degree_sequence().into_iter().min().unwrap_or(0);
    if valency < 2 {
        return Err(Error::ValencyTooSmall(valency));
    }
    if labelling.len() != graph.vertex_count() {
        return Err(Error::DegreeMismatch {
            expected: graph.vertex_count(),
            found: labelling.len(),
        });
    }
    let quotient = quotient_unchecked(graph, partition);
    for (v, &(b, c)) in labelling.iter().enumerate() {
        if partition.block_of(v) != b || !quotient.has_arc(b, c) {
            return Err(Error::InvalidInput(format!(
                "vertex {} is not labelled by an arc from its own block",
                v + 1
            )));
        }
    }
    Ok(graph.arcs().into_iter().all(|(x, y)| {
        let (b, c) = labelling[x];
        let (d, e) = labelling[y];
        quotient.has_arc(c, b) && quotient.has_arc(b, d) && quotient.has_arc(d, e) && c != d && b != e
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{c6, d6, k4, s4, z2};
    use crate::graph::are_isomorphic;

    /// Independent count: 3-arcs of a `k`-regular graph on `n` vertices number `n k (k-1)^2`.
    #[test]
    fn k4_orbits() {
        let orbits = three_arc_orbits(&k4(), &s4()).unwrap();
        assert_eq!(orbits.len(), 2);
        assert!(orbits.iter().all(|o| o.arcs.len() == 24 && o.self_paired));
        // orbit 0 holds the closed walks around a triangle
        assert!(orbits[0].arcs.contains(&[0, 1, 2, 0]));
        assert!(orbits[1].arcs.contains(&[0, 1, 2, 3]));
    }

    #[test]
    fn hexagon_orbits_and_edge() {
        let orbits = three_arc_orbits(&c6(), &d6()).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].arcs.len(), 12);
        assert!(orbits[0].self_paired);
        let edge = Graph::complete(2);
        assert!(three_arc_orbits(&edge, &z2()).unwrap().is_empty());
    }

    #[test]
    fn k4_three_arc_graphs() {
        for orbit in three_arc_orbits(&k4(), &s4()).unwrap() {
            let xi = three_arc_graph(&k4(), &s4(), &orbit.arcs).unwrap();
            assert_eq!(xi.graph.vertex_count(), 12);
            assert_eq!(xi.graph.valency(), Some(2));
            assert!(xi.report.is_symmetric());
            assert!(xi.quotient_isomorphic);
            assert!(!xi.reverse_adjacent);
            let pe = check_condition_pe(&xi.graph, &xi.action, &xi.partition)
                .unwrap()
                .unwrap();
            // the labelling is (σ, τ) ↦ B(τ)
            for &(v, c) in &pe.map {
                assert_eq!(xi.arcs[xi.partition.block(c)[0]].0, xi.arcs[v].1);
            }
            let labels = full_labelling(&xi.action, &xi.partition, &pe).unwrap();
            assert!(check_three_arc_necessity(&xi.graph, &xi.partition, &labels).unwrap());
        }
    }

    #[test]
    fn k4_three_arc_graph_shapes() {
        let orbits = three_arc_orbits(&k4(), &s4()).unwrap();
        let triangle = three_arc_graph(&k4(), &s4(), &orbits[0].arcs).unwrap();
        let path = three_arc_graph(&k4(), &s4(), &orbits[1].arcs).unwrap();
        // triangle orbit: the three arcs into each vertex are pairwise adjacent
        let c3 = Graph::cycle(3);
        assert!(are_isomorphic(
            &triangle.graph,
            &c3.disjoint_union(&c3).disjoint_union(&c3.disjoint_union(&c3))
        )
        .is_some());
        // path orbit: {(0,1),(1,0),(2,3),(3,2)} closes up into a 4-cycle, one per perfect matching of K4
        let c4 = Graph::cycle(4);
        assert!(are_isomorphic(&path.graph, &c4.disjoint_union(&c4).disjoint_union(&c4)).is_some());
    }

    #[test]
    fn hexagon_three_arc_graph() {
        let orbit = three_arc_orbits(&c6(), &d6()).unwrap().remove(0);
        let xi = three_arc_graph(&c6(), &d6(), &orbit.arcs).unwrap();
        assert_eq!(xi.graph.vertex_count(), 12);
        assert!(xi.quotient_isomorphic);
    }

    #[test]
    fn non_self_paired_rejected() {
        // Z6 rotations on C6: a 3-arc and its reverse lie in different orbits
        let orbits = three_arc_orbits(&c6(), &d6()).unwrap();
        let one_way: BTreeSet<ThreeArc> = orbits[0]
            .arcs
            .iter()
            .filter(|t| (t[0] + 1) % 6 == t[1])
            .copied()
            .collect();
        assert!(matches!(
            three_arc_graph(&c6(), &crate::fixtures::z6(), &one_way),
            Err(Error::NotSelfPaired)
        ));
    }

    #[test]
    fn pe_cardinality_mismatch() {
        let part = BlockSystem::singletons(4);
        assert_eq!(check_condition_pe(&k4(), &s4(), &part).unwrap(), None);
    }

    #[test]
    fn reversing_arc_breaks_necessity() {
        // arcs of C4, each joined to its reverse and to its unique 3-arc successor
        let c4 = Graph::cycle(4);
        let arcs = c4.arcs();
        let idx = |a: (usize, usize)| arcs.iter().position(|&b| b == a).unwrap();
        let mut edges = BTreeSet::new();
        for &(s, t) in &arcs {
            edges.insert((idx((s, t)).min(idx((t, s))), idx((s, t)).max(idx((t, s)))));
            let s2 = *c4.neighbors(s).iter().find(|&&w| w != t).unwrap();
            let t2 = *c4.neighbors(s2).iter().find(|&&w| w != s).unwrap();
            let (x, y) = (idx((s, t)), idx((s2, t2)));
            edges.insert((x.min(y), x.max(y)));
        }
        let g = Graph::from_edges(8, &edges.into_iter().collect::<Vec<_>>()).unwrap();
        let mut tails: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &(s, _)) in arcs.iter().enumerate() {
            tails.entry(s).or_default().push(i);
        }
        let part = BlockSystem::new(8, tails.into_values().collect()).unwrap();
        let labels: Vec<(usize, usize)> = arcs
            .iter()
            .map(|&(s, t)| (part.block_of(idx((s, t))), part.block_of(idx((t, s)))))
            .collect();
        assert!(!check_three_arc_necessity(&g, &part, &labels).unwrap());
        let err = check_three_arc_necessity(&Graph::complete(2), &BlockSystem::singletons(2), &[(0, 1), (1, 0)]);
        assert!(matches!(err, Err(Error::ValencyTooSmall(1))));
    }
}
