use std::collections::{BTreeMap, BTreeSet};

use crate::designs::IncidenceStructure;
use crate::error::{Error, Result};
use crate::graph::{is_isomorphism, verify_action, Graph, TransitivityReport};
use crate::perm::{GroupTable, Permutation};
use crate::quotients::quotient_graph;
use crate::subgroups::{setwise_stabilizer, BlockSystem, Subgroup};

/// A flag `(point, block)` of the design.
pub type Flag = (usize, usize);

/// Upper bound on the unions of conjugacy classes tried when looking for `N`.
pub const NORMAL_SEARCH_CAP: usize = 1 << 20;

/// The data from which a graph is rebuilt on `P × VΓ`.
#[derive(Debug, Clone)]
pub struct ReconstructionData {
    pub quotient: Graph,
    /// Points are the vertices of the base fiber, blocks the quotient neighbours of vertex 0.
    pub design: IncidenceStructure,
    /// `η`: quotient neighbour of vertex 0 ↦ block of the design.
    pub eta: BTreeMap<usize, usize>,
    /// `N` acting regularly on the quotient vertices.
    pub translations: GroupTable,
    /// A self-paired orbital `Δ` on flags.
    pub orbital: BTreeSet<(Flag, Flag)>,
}

/// `(x, v)` is vertex `v·|P| + x`.
///
/// `((x, v), (y, w))` is an arc iff `(v, w)` is a quotient arc, `(x, η(wv⁻¹))` and
/// `(y, η(vw⁻¹))` are flags, and the pair of those flags lies in `Δ`. Here `wv⁻¹`
/// is the vertex `0^{n_w n_v⁻¹}`, where `n_v ∈ N` is the element taking 0 to `v`.
pub fn flag_orbital_reconstruction(data: &ReconstructionData) -> Result<Graph> {
    let q = &data.quotient;
    let n = &data.translations;
    let nv = q.vertex_count();
    if n.degree() != nv || n.order() != nv {
        return Err(Error::NotSemidirect);
    }
    let mut to_vertex = vec![usize::MAX; nv];
    for (i, x) in n.elements().iter().enumerate() {
        to_vertex[x.apply(0)] = i;
    }
    if to_vertex.contains(&usize::MAX) {
        return Err(Error::NotSemidirect);
    }
    if data.orbital.iter().any(|&(f, g)| !data.orbital.contains(&(g, f))) {
        return Err(Error::NotSelfPairedOrbital);
    }
    let p = data.design.point_count();
    let vertex_of = |e: usize| n.element(e).apply(0);
    let mut labels = Vec::with_capacity(p * nv);
    for v in 0..nv {
        for x in 0..p {
            labels.push(format!("{}:{}", data.design.point_labels[x], q.label(v)));
        }
    }
    let mut arcs = Vec::new();
    for (v, w) in q.arcs() {
        let (ev, ew) = (to_vertex[v], to_vertex[w]);
        let wv = vertex_of(n.mul(ew, n.inv(ev)));
        let vw = vertex_of(n.mul(ev, n.inv(ew)));
        let (Some(&bw), Some(&bv)) = (data.eta.get(&wv), data.eta.get(&vw)) else {
            return Err(Error::InvalidInput(format!(
                "η is undefined on a translate of the quotient arc ({}, {})",
                v + 1,
                w + 1
            )));
        };
        for x in 0..p {
            if !data.design.is_incident(x, bw) {
                continue;
            }
            for y in 0..p {
                if data.design.is_incident(y, bv) && data.orbital.contains(&((x, bw), (y, bv))) {
                    arcs.push((v * p + x, w * p + y));
                }
            }
        }
    }
    Graph::from_arcs(labels, arcs)
}

fn conjugacy_classes(group: &GroupTable) -> Vec<Vec<usize>> {
    let mut seen = vec![false; group.order()];
    let mut classes = Vec::new();
    for x in 0..group.order() {
        if seen[x] {
            continue;
        }
        let class: BTreeSet<usize> = (0..group.order())
            .map(|g| group.mul(group.mul(group.inv(g), x), g))
            .collect();
        for &y in &class {
            seen[y] = true;
        }
        classes.push(class.into_iter().collect());
    }
    classes
}

/// A normal subgroup of `group` acting regularly on the blocks of `partition`,
/// found as a union of conjugacy classes of block-fixed-point-free elements.
pub fn regular_normal_subgroup(group: &GroupTable, partition: &BlockSystem) -> Result<Option<Subgroup>> {
    let m = partition.len();
    if !group.order().is_multiple_of(m) {
        return Ok(None);
    }
    let fpf = |x: &Permutation| {
        let bp = partition.block_permutation(x).unwrap();
        (0..m).all(|b| bp.apply(b) != b)
    };
    let classes: Vec<Vec<usize>> = conjugacy_classes(group)
        .into_iter()
        .filter(|c| c[0] != 0 && fpf(group.element(c[0])))
        .collect();
    let target = m - 1;
    let mut budget = NORMAL_SEARCH_CAP;
    let mut chosen = Vec::new();
    fn search(
        group: &GroupTable,
        classes: &[Vec<usize>],
        start: usize,
        remaining: usize,
        chosen: &mut Vec<usize>,
        budget: &mut usize,
    ) -> Result<Option<Vec<usize>>> {
        if remaining == 0 {
            let mut set: BTreeSet<usize> = chosen.iter().flat_map(|&c| classes[c].iter().copied()).collect();
            set.insert(0);
            let closed = set.iter().all(|&x| set.iter().all(|&y| set.contains(&group.mul(x, y))));
            return Ok(closed.then(|| set.into_iter().collect()));
        }
        for c in start..classes.len() {
            if classes[c].len() > remaining {
                continue;
            }
            if *budget == 0 {
                return Err(Error::InvalidInput("normal subgroup search exceeded its cap".into()));
            }
            *budget -= 1;
            chosen.push(c);
            let found = search(group, classes, c + 1, remaining - classes[c].len(), chosen, budget)?;
            chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
    let found = search(group, &classes, 0, target, &mut chosen, &mut budget)?;
    Ok(match found {
        Some(idx) => Some(GroupTable::from_elements(
            group.degree(),
            idx.iter().map(|&i| group.element(i).clone()),
        )?),
        None => None,
    })
}

/// Everything extracted from a symmetric graph with a block system, and the rebuilt graph.
#[derive(Debug, Clone)]
pub struct ReconstructionCheck {
    pub data: ReconstructionData,
    /// `N` inside the original group.
    pub normal: Subgroup,
    /// Setwise stabilizer `H` of the base fiber, a complement to `N`.
    pub complement: Subgroup,
    pub rebuilt: Graph,
    /// `(x, v) ↦ x^{n_v}`.
    pub lift: Vec<usize>,
    pub isomorphic: bool,
    /// The original group transported to the rebuilt graph through `lift`.
    pub report: TransitivityReport,
}

/// Extracts `(Γ_𝓑, 𝒟(B), η, Δ)` from `graph` and rebuilds it.
pub fn reconstruct_from_quotient(
    graph: &Graph,
    group: &GroupTable,
    partition: &BlockSystem,
) -> Result<ReconstructionCheck> {
    let quotient = quotient_graph(graph, group, partition)?;
    let normal = regular_normal_subgroup(group, partition)?.ok_or(Error::NotSemidirect)?;
    let b0 = partition.block_of(0);
    let fiber: Vec<usize> = partition.block(b0).to_vec();
    let complement = setwise_stabilizer(group, &fiber.iter().copied().collect());
    if complement.order() * normal.order() != group.order() || normal.intersection(&complement).order() != 1 {
        return Err(Error::NotSemidirect);
    }

    // n_v: the element of N taking the base fiber to fiber v
    let m = partition.len();
    let mut n_of = vec![None; m];
    for x in normal.elements() {
        n_of[partition.block_permutation(x).unwrap().apply(b0)] = Some(x.clone());
    }
    let n_of: Vec<Permutation> = n_of.into_iter().collect::<Option<_>>().ok_or(Error::NotSemidirect)?;

    // quotient vertices are relabelled so that the base fiber is vertex 0
    let order: Vec<usize> = std::iter::once(b0).chain((0..m).filter(|&b| b != b0)).collect();
    let pos: Vec<usize> = {
        let mut pos = vec![0; m];
        for (i, &b) in order.iter().enumerate() {
            pos[b] = i;
        }
        pos
    };
    let q_labels = order.iter().map(|&b| quotient.label(b).to_string()).collect();
    let q_arcs: Vec<(usize, usize)> = quotient.arcs().into_iter().map(|(u, v)| (pos[u], pos[v])).collect();
    let quotient = Graph::from_arcs(q_labels, q_arcs)?;
    let n_of: Vec<Permutation> = order.iter().map(|&b| n_of[b].clone()).collect();
    let translations = GroupTable::generate(
        m,
        n_of.iter()
            .map(|x| {
                let bp = partition.block_permutation(x).unwrap();
                Permutation::from_images((0..m).map(|i| pos[bp.apply(order[i])]).collect())
            })
            .collect::<Result<_>>()?,
    )?;

    let nbrs: Vec<usize> = quotient.neighbors(0).to_vec();
    let eta: BTreeMap<usize, usize> = nbrs.iter().enumerate().map(|(j, &c)| (c, j)).collect();
    let point_of: BTreeMap<usize, usize> = fiber.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut flags = Vec::new();
    for (i, &x) in fiber.iter().enumerate() {
        for (j, &c) in nbrs.iter().enumerate() {
            if graph.neighbors(x).iter().any(|&y| pos[partition.block_of(y)] == c) {
                flags.push((i, j));
            }
        }
    }
    let design = IncidenceStructure::new(
        fiber.iter().map(|&x| graph.label(x).to_string()).collect(),
        nbrs.iter().map(|&c| format!("N({})", quotient.label(c))).collect(),
        flags,
    )?;

    // one arc (x0, z) leaving the base fiber, pulled back to the base fiber by n_w
    let x0 = fiber[0];
    let z = *graph
        .neighbors(x0)
        .iter()
        .find(|&&z| partition.block_of(z) != b0)
        .ok_or(Error::TrivialQuotient)?;
    let w0 = pos[partition.block_of(z)];
    let y0 = n_of[w0].inverse().apply(z);
    let inverse_vertex = |c: usize| {
        let t = translations.index_of(&n_of_block(&translations, c)).unwrap();
        translations.element(translations.inv(t)).apply(0)
    };
    let seed = ((point_of[&x0], eta[&w0]), (point_of[&y0], eta[&inverse_vertex(w0)]));
    let mut orbital = BTreeSet::new();
    for h in complement.elements() {
        let bp = partition.block_permutation(h).unwrap();
        let hq = |c: usize| pos[bp.apply(order[c])];
        let hf = |(x, b): Flag| (point_of[&h.apply(fiber[x])], eta[&hq(nbrs[b])]);
        orbital.insert((hf(seed.0), hf(seed.1)));
    }
    let data = ReconstructionData {
        quotient,
        design,
        eta,
        translations,
        orbital,
    };
    let rebuilt = flag_orbital_reconstruction(&data)?;

    let p = fiber.len();
    let lift: Vec<usize> = (0..rebuilt.vertex_count())
        .map(|i| n_of[i / p].apply(fiber[i % p]))
        .collect();
    let isomorphic = is_isomorphism(&rebuilt, graph, &lift);
    let mut unlift = vec![0; lift.len()];
    for (i, &v) in lift.iter().enumerate() {
        unlift[v] = i;
    }
    let transported = GroupTable::generate(
        lift.len(),
        group
            .generators()
            .iter()
            .map(|g| Permutation::from_images(lift.iter().map(|&v| unlift[g.apply(v)]).collect()))
            .collect::<Result<_>>()?,
    )?;
    let report = verify_action(&rebuilt, &transported)?;
    Ok(ReconstructionCheck {
        data,
        normal,
        complement,
        rebuilt,
        lift,
        isomorphic,
        report,
    })
}

fn n_of_block(translations: &GroupTable, c: usize) -> Permutation {
    translations
        .elements()
        .iter()
        .find(|x| x.apply(0) == c)
        .cloned()
        .expect("N is transitive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::semidirect::{biggs_cover, NChain, SemidirectGroup};
    use crate::fixtures::{k4, petersen_on_pairs, q3, s4, s5_on_pairs, z2};
    use crate::graph::are_isomorphic;

    #[test]
    fn cube_round_trip() {
        let sd = SemidirectGroup::direct(z2(), s4());
        let t = z2().index_of(&Permutation::parse_cycles("(1 2)", 2).unwrap()).unwrap();
        let cover = biggs_cover(&k4(), &s4(), &sd, &NChain::constant(&k4(), t)).unwrap();
        let check = reconstruct_from_quotient(&cover.graph, &cover.action, &cover.fibers).unwrap();
        assert_eq!(check.normal.order(), 4);
        assert_eq!(check.complement.order(), 12);
        assert!(check.isomorphic);
        assert!(are_isomorphic(&check.rebuilt, &q3()).is_some());
        assert!(check.report.is_symmetric());
        let d = &check.data.design;
        assert_eq!((d.point_count(), d.block_count(), d.flags().len()), (2, 3, 6));
    }

    #[test]
    fn singleton_fibers_return_the_quotient() {
        let check = reconstruct_from_quotient(&k4(), &s4(), &BlockSystem::singletons(4)).unwrap();
        assert_eq!(check.data.design.point_count(), 1);
        assert!(check.isomorphic);
        assert!(are_isomorphic(&check.rebuilt, &k4()).is_some());
    }

    #[test]
    fn petersen_is_not_split() {
        let (g, _) = s5_on_pairs();
        let err = reconstruct_from_quotient(&petersen_on_pairs(), &g, &BlockSystem::singletons(10)).unwrap_err();
        assert!(matches!(err, Error::NotSemidirect));
    }

    #[test]
    fn one_sided_orbital_rejected() {
        let sd = SemidirectGroup::direct(z2(), s4());
        let t = z2().index_of(&Permutation::parse_cycles("(1 2)", 2).unwrap()).unwrap();
        let cover = biggs_cover(&k4(), &s4(), &sd, &NChain::constant(&k4(), t)).unwrap();
        let mut data = reconstruct_from_quotient(&cover.graph, &cover.action, &cover.fibers)
            .unwrap()
            .data;
        let first = *data.orbital.iter().find(|(f, g)| f != g).unwrap();
        data.orbital.remove(&(first.1, first.0));
        assert!(matches!(
            flag_orbital_reconstruction(&data),
            Err(Error::NotSelfPairedOrbital)
        ));
    }
}
