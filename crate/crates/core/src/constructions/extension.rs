use std::collections::BTreeMap;

use crate::coset_graphs::{symmetric_coset_graph, SymmetricCosetGraph};
use crate::error::{Error, Result};
use crate::graph::{is_isomorphism, Graph};
use crate::perm::{GroupTable, Permutation};
use crate::subgroups::{intermediate_subgroups, right_cosets, Subgroup, DEFAULT_CLOSURE_CAP};

/// The extension of `Sab(G, H, HaH)` built from the arc partition that `K` determines.
#[derive(Debug, Clone)]
pub struct ArcPartitionExtension {
    pub base: SymmetricCosetGraph,
    /// Arcs of the base graph, as pairs of coset indices.
    pub arcs: Vec<(usize, usize)>,
    /// The arc partition: images of `(H, Ha)^K`, as indices into `arcs`.
    pub blocks: Vec<Vec<usize>>,
    /// Graph on `blocks`; `P ~ Q` iff some arc of `P` reversed lies in `Q`.
    pub graph: Graph,
    pub expected: SymmetricCosetGraph,
    /// `block(arc₀^g) ↦ Kg`, verified to be an isomorphism onto `Sab(G, K, KaK)`.
    pub isomorphism: Vec<usize>,
    /// `[H : K]`.
    pub index: usize,
    /// Every block consists of arcs leaving one vertex.
    pub refines_tails: bool,
    /// `|VΓ̃| = r|VΓ|`, `val Γ̃ = val Γ / r`, `|EΓ̃| = |EΓ|`.
    pub counts_hold: bool,
}

fn bar_h(h: &Subgroup, a: &Permutation) -> Subgroup {
    h.intersection(&h.conjugate(a))
}

/// Subgroups `K` with `a⁻¹Ha ∩ H < K < H` and `a ∉ K`.
pub fn extension_candidates(group: &GroupTable, h: &Subgroup, a: &Permutation) -> Result<Vec<Subgroup>> {
    if !h.is_subgroup_of(group) {
        return Err(Error::NotASubgroup);
    }
    let lower = bar_h(h, a);
    Ok(intermediate_subgroups(&lower, h, DEFAULT_CLOSURE_CAP)?
        .into_iter()
        .filter(|k| k.order() > lower.order() && k.order() < h.order() && !k.contains(a))
        .collect())
}

pub fn arc_partition_extension(
    group: &GroupTable,
    h: &Subgroup,
    k: &Subgroup,
    a: &Permutation,
) -> Result<ArcPartitionExtension> {
    if !h.is_subgroup_of(group) || !k.is_subgroup_of(group) {
        return Err(Error::NotASubgroup);
    }
    if !group.contains(a) {
        return Err(Error::InvalidInput(format!("{a} is not in G")));
    }
    if !a.then(a).is_identity() || a.is_identity() {
        return Err(Error::NotInvolution(a.to_string()));
    }
    if k.contains(a) {
        return Err(Error::DegenerateInvolution);
    }
    let lower = bar_h(h, a);
    let strict = |x: &GroupTable, y: &GroupTable| x.is_subgroup_of(y) && x.order() < y.order();
    if !strict(&lower, k) || !strict(k, h) {
        return Err(Error::NoStrictChain);
    }
    let base = symmetric_coset_graph(group, h, a)?;
    let expected = symmetric_coset_graph(group, k, a)?;
    let cosets = &base.coset_graph.cosets;
    let gamma = base.graph();
    let arcs = gamma.arcs();
    let arc_index: BTreeMap<(usize, usize), usize> = arcs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let arc0 = (0, cosets.coset_index(group, a));
    let image = |g: &Permutation, x: (usize, usize)| {
        let p = cosets.permutation_of(group, g);
        (p.apply(x.0), p.apply(x.1))
    };

    let kcosets = right_cosets(group, k)?;
    let mut block_of_arc = vec![usize::MAX; arcs.len()];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut isomorphism: Vec<usize> = Vec::new();
    for g in group.elements() {
        let x = arc_index[&image(g, arc0)];
        if block_of_arc[x] != usize::MAX {
            continue;
        }
        let mut block: Vec<usize> = k
            .elements()
            .iter()
            .map(|kk| arc_index[&image(&kk.then(g), arc0)])
            .collect();
        block.sort_unstable();
        block.dedup();
        for &y in &block {
            if block_of_arc[y] != usize::MAX {
                return Err(Error::SpecInvariantViolated("arc blocks overlap".into()));
            }
            block_of_arc[y] = blocks.len();
        }
        blocks.push(block);
        isomorphism.push(kcosets.coset_index(group, g));
    }
    if block_of_arc.contains(&usize::MAX) {
        return Err(Error::SpecInvariantViolated("arc blocks do not cover the arcs".into()));
    }
    let labels = blocks
        .iter()
        .map(|b| {
            let (u, v) = arcs[b[0]];
            format!("[{}>{}]", gamma.label(u), gamma.label(v))
        })
        .collect();
    let edges: Vec<(usize, usize)> = arcs
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| (block_of_arc[i], block_of_arc[arc_index[&(v, u)]]))
        .collect();
    let graph = Graph::from_arcs(labels, edges)?;
    if !is_isomorphism(&graph, expected.graph(), &isomorphism) {
        return Err(Error::SpecInvariantViolated(
            "block map is not an isomorphism onto Sab(G, K, KaK)".into(),
        ));
    }
    let index = h.order() / k.order();
    let refines_tails = blocks.iter().all(|b| b.iter().all(|&x| arcs[x].0 == arcs[b[0]].0));
    let counts_hold = graph.vertex_count() == index * gamma.vertex_count()
        && gamma
            .valency()
            .zip(graph.valency())
            .is_some_and(|(v, w)| v == index * w)
        && graph.edge_count() == gamma.edge_count();
    Ok(ArcPartitionExtension {
        base,
        arcs,
        blocks,
        graph,
        expected,
        isomorphism,
        index,
        refines_tails,
        counts_hold,
    })
}
