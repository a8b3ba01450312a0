//! Quotients of symmetric graphs by block systems, the local structure
//! between fibers, and quotients of coset graphs by overgroups.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::coset_graphs::{symmetric_coset_graph, SymmetricCosetGraph};
use crate::designs::{validate_design, DesignParams, IncidenceStructure};
use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, is_isomorphism, verify_action, Graph};
use crate::perm::{GroupTable, Permutation};
use crate::subgroups::{setwise_stabilizer, subgroup_block_lattice, BlockSystem, Subgroup};

/// Whether every block is an independent set and at least one edge joins two blocks.
pub fn is_nontrivial(graph: &Graph, partition: &BlockSystem) -> bool {
    let mut crosses = false;
    for (u, v) in graph.edges() {
        if partition.block_of(u) == partition.block_of(v) {
            return false;
        }
        crosses = true;
    }
    crosses
}

fn check_partition(graph: &Graph, partition: &BlockSystem) -> Result<()> {
    if partition.domain_size() != graph.vertex_count() {
        return Err(Error::DegreeMismatch {
            expected: graph.vertex_count(),
            found: partition.domain_size(),
        });
    }
    Ok(())
}

/// Quotient graph without the symmetry checks. Edges inside a block are dropped.
pub fn quotient_unchecked(graph: &Graph, partition: &BlockSystem) -> Graph {
    let labels = partition
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| format!("B{}:{}", i + 1, graph.label(b[0])))
        .collect();
    let arcs: BTreeSet<(usize, usize)> = graph
        .arcs()
        .into_iter()
        .map(|(u, v)| (partition.block_of(u), partition.block_of(v)))
        .filter(|(b, c)| b != c)
        .collect();
    Graph::from_arcs(labels, arcs).expect("quotient of a simple graph is symmetric")
}

/// `Γ_𝓑`: blocks as vertices, `B ~ C` iff some edge joins them.
pub fn quotient_graph(graph: &Graph, group: &GroupTable, partition: &BlockSystem) -> Result<Graph> {
    check_partition(graph, partition)?;
    if !partition.is_invariant(group) {
        return Err(Error::NotInvariant);
    }
    if !verify_action(graph, group)?.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(quotient_unchecked(graph, partition))
}

/// `Γ[B, C]`: the bipartite graph of edges between `Γ(C) ∩ B` and `Γ(B) ∩ C`.
/// Vertices of `B` come first; labels are kept.
pub fn induced_bipartite(graph: &Graph, partition: &BlockSystem, b: usize, c: usize) -> Result<Graph> {
    check_partition(graph, partition)?;
    if b >= partition.len() || c >= partition.len() || b == c {
        return Err(Error::NotQuotientArc(b, c));
    }
    let side = |from: usize, to: usize| -> Vec<usize> {
        partition
            .block(from)
            .iter()
            .copied()
            .filter(|&x| graph.neighbors(x).iter().any(|&y| partition.block_of(y) == to))
            .collect()
    };
    let left = side(b, c);
    let right = side(c, b);
    if left.is_empty() {
        return Err(Error::NotQuotientArc(b, c));
    }
    let vertices: Vec<usize> = left.iter().chain(&right).copied().collect();
    let labels = vertices.iter().map(|&x| graph.label(x).to_string()).collect();
    let mut arcs = Vec::new();
    for (i, &x) in left.iter().enumerate() {
        for (j, &y) in right.iter().enumerate() {
            if graph.has_arc(x, y) {
                arcs.push((i, left.len() + j));
                arcs.push((left.len() + j, i));
            }
        }
    }
    Graph::from_arcs(labels, arcs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverClass {
    /// Exactly one neighbour in each adjacent fiber.
    Cover,
    /// At least one, sometimes more.
    MulticoverProper,
    /// Some vertex has no neighbour in a fiber adjacent to its own.
    Neither,
}

impl CoverClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoverClass::Cover => "cover",
            CoverClass::MulticoverProper => "multicover_proper",
            CoverClass::Neither => "neither",
        }
    }
}

/// Examines every vertex against every fiber adjacent to its own.
pub fn cover_class(graph: &Graph, partition: &BlockSystem) -> Result<CoverClass> {
    check_partition(graph, partition)?;
    if !is_nontrivial(graph, partition) {
        return Err(Error::TrivialQuotient);
    }
    let quotient = quotient_unchecked(graph, partition);
    let mut more_than_one = false;
    for v in 0..graph.vertex_count() {
        let b = partition.block_of(v);
        for &c in quotient.neighbors(b) {
            let hits = graph
                .neighbors(v)
                .iter()
                .filter(|&&w| partition.block_of(w) == c)
                .count();
            if hits == 0 {
                return Ok(CoverClass::Neither);
            }
            more_than_one |= hits > 1;
        }
    }
    Ok(if more_than_one {
        CoverClass::MulticoverProper
    } else {
        CoverClass::Cover
    })
}

/// `𝒟(B)` with its parameters and the flag-transitivity verdict under `G_B`.
#[derive(Debug, Clone)]
pub struct CrossSection {
    pub design: IncidenceStructure,
    /// Vertex index of each design point.
    pub points: Vec<usize>,
    /// Quotient vertex (block index) of each design block.
    pub blocks: Vec<usize>,
    pub params: DesignParams,
    pub flag_transitive: bool,
}

/// Points are the vertices of `B`, blocks are the fibers adjacent to `B`,
/// and `α` is incident with `C` iff `α` has a neighbour in `C`.
pub fn cross_section_design(
    graph: &Graph,
    group: &GroupTable,
    partition: &BlockSystem,
    b: usize,
) -> Result<CrossSection> {
    check_partition(graph, partition)?;
    if !is_nontrivial(graph, partition) {
        return Err(Error::TrivialQuotient);
    }
    if b >= partition.len() {
        return Err(Error::InvalidInput(format!("block {} out of range", b + 1)));
    }
    let quotient = quotient_unchecked(graph, partition);
    let points: Vec<usize> = partition.block(b).to_vec();
    let blocks: Vec<usize> = quotient.neighbors(b).to_vec();
    let mut flags = Vec::new();
    for (i, &alpha) in points.iter().enumerate() {
        for (j, &c) in blocks.iter().enumerate() {
            if graph.neighbors(alpha).iter().any(|&w| partition.block_of(w) == c) {
                flags.push((i, j));
            }
        }
    }
    let design = IncidenceStructure::new(
        points.iter().map(|&x| graph.label(x).to_string()).collect(),
        blocks.iter().map(|&c| quotient.label(c).to_string()).collect(),
        flags.clone(),
    )?;
    let params = validate_design(&design)?;

    // flags as (vertex, block index) pairs, moved by the setwise stabilizer of B
    let stab = setwise_stabilizer(group, &points.iter().copied().collect());
    let all: HashSet<(usize, usize)> = flags.iter().map(|&(i, j)| (points[i], blocks[j])).collect();
    let flag_transitive = match all.iter().min() {
        None => true,
        Some(&(alpha, c)) => {
            let rep = partition.block(c)[0];
            let orbit: HashSet<(usize, usize)> = stab
                .elements()
                .iter()
                .map(|g| (g.apply(alpha), partition.block_of(g.apply(rep))))
                .collect();
            orbit == all
        }
    };
    Ok(CrossSection {
        design,
        points,
        blocks,
        params,
        flag_transitive,
    })
}

/// Everything recorded about a quotient.
#[derive(Debug, Clone)]
pub struct QuotientCertificate {
    pub quotient: Graph,
    pub partition: BlockSystem,
    pub nontrivial: bool,
    pub symmetric: bool,
    pub cover_class: Option<CoverClass>,
    /// `Γ[B, C]` for the first quotient arc.
    pub bipartite_pattern: Option<Graph>,
    /// Whether every `Γ[B, C]` is isomorphic to the pattern.
    pub bipartite_uniform: bool,
    pub design_params: Option<DesignParams>,
    pub design_flag_transitive: bool,
    /// `π(α^x) = π(α)^x` for every generator and vertex.
    pub homomorphism_law: bool,
    /// Order of the kernel of the action on blocks.
    pub kernel_order: usize,
    /// Whether the kernel is transitive on every fiber.
    pub kernel_fiber_transitive: bool,
}

impl QuotientCertificate {
    /// Whether the cover arithmetic holds: `|VΓ| = |fiber|·|VΓ_𝓑|` and equal valencies.
    pub fn cover_arithmetic(&self, graph: &Graph) -> bool {
        let fiber = self.partition.block(0).len();
        graph.vertex_count() == fiber * self.quotient.vertex_count() && graph.valency() == self.quotient.valency()
    }
}

/// Builds and checks the quotient. Unless `allow_trivial` is set, a trivial
/// quotient is an error.
pub fn certify_quotient(
    graph: &Graph,
    group: &GroupTable,
    partition: &BlockSystem,
    allow_trivial: bool,
) -> Result<QuotientCertificate> {
    let quotient = quotient_graph(graph, group, partition)?;
    let nontrivial = is_nontrivial(graph, partition);
    if !nontrivial && !allow_trivial {
        return Err(Error::TrivialQuotient);
    }
    let block_gens: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| partition.block_permutation(g).ok_or(Error::NotInvariant))
        .collect::<Result<_>>()?;
    let homomorphism_law = group.generators().iter().zip(&block_gens).all(|(g, gb)| {
        (0..graph.vertex_count()).all(|a| partition.block_of(g.apply(a)) == gb.apply(partition.block_of(a)))
    });
    let block_group = GroupTable::generate(partition.len(), block_gens)?;
    let symmetric = verify_action(&quotient, &block_group)?.is_symmetric();

    let kernel: Vec<&Permutation> = group
        .elements()
        .iter()
        .filter(|g| (0..graph.vertex_count()).all(|a| partition.block_of(g.apply(a)) == partition.block_of(a)))
        .collect();
    let kernel_fiber_transitive = partition.blocks().iter().all(|b| {
        let reach: BTreeSet<usize> = kernel.iter().map(|g| g.apply(b[0])).collect();
        reach.len() == b.len()
    });

    let mut cert = QuotientCertificate {
        quotient: quotient.clone(),
        partition: partition.clone(),
        nontrivial,
        symmetric,
        cover_class: None,
        bipartite_pattern: None,
        bipartite_uniform: true,
        design_params: None,
        design_flag_transitive: false,
        homomorphism_law,
        kernel_order: kernel.len(),
        kernel_fiber_transitive,
    };
    if nontrivial {
        cert.cover_class = Some(cover_class(graph, partition)?);
        let arcs = quotient.arcs();
        let pattern = induced_bipartite(graph, partition, arcs[0].0, arcs[0].1)?;
        cert.bipartite_uniform = arcs[1..].iter().all(|&(b, c)| {
            induced_bipartite(graph, partition, b, c).is_ok_and(|g| are_isomorphic(&pattern, &g).is_some())
        });
        cert.bipartite_pattern = Some(pattern);
        let cs = cross_section_design(graph, group, partition, 0)?;
        cert.design_params = Some(cs.params);
        cert.design_flag_transitive = cs.flag_transitive;
    }
    Ok(cert)
}

/// `Sab(G, K, KaK)` certified as the quotient of `Sab(G, H, HaH)` by the
/// block system that `K` determines.
#[derive(Debug, Clone)]
pub struct CosetQuotient {
    pub original: SymmetricCosetGraph,
    pub quotient: SymmetricCosetGraph,
    /// Block system on the cosets of `H`; block `i` is the preimage of quotient vertex `isomorphism[i]`.
    pub partition: BlockSystem,
    /// Map from blocks of the partition to cosets of `K`.
    pub isomorphism: Vec<usize>,
    pub certificate: QuotientCertificate,
}

pub fn quotient_as_coset_graph(
    group: &GroupTable,
    h: &Subgroup,
    a: &Permutation,
    k: &Subgroup,
) -> Result<CosetQuotient> {
    let strict = |small: &GroupTable, big: &GroupTable| small.is_subgroup_of(big) && small.order() < big.order();
    if !strict(h, k) || !strict(k, group) {
        return Err(Error::NotNested);
    }
    if k.contains(a) && a.then(a).is_identity() {
        return Err(Error::DegenerateQuotient);
    }
    let original = symmetric_coset_graph(group, h, a)?;
    let quotient = symmetric_coset_graph(group, k, a)?;
    let cosets = &original.coset_graph.cosets;
    let action = &original.coset_graph.action;

    // the block of H is 0^K; find it through the overgroup lattice of the coset action
    let k_image: BTreeSet<Permutation> = k.elements().iter().map(|x| cosets.permutation_of(group, x)).collect();
    let pair = subgroup_block_lattice(action, 0)?
        .into_iter()
        .find(|p| p.subgroup.elements().iter().cloned().collect::<BTreeSet<_>>() == k_image)
        .ok_or_else(|| Error::SpecInvariantViolated("image of K is missing from the lattice".into()))?;
    let partition = BlockSystem::from_block(action, &pair.block)?;
    let certificate = certify_quotient(original.graph(), action, &partition, false)?;

    let kcosets = &quotient.coset_graph.cosets;
    let isomorphism: Vec<usize> = partition
        .blocks()
        .iter()
        .map(|b| kcosets.coset_of[cosets.representatives[b[0]]])
        .collect();
    if !is_isomorphism(&certificate.quotient, quotient.graph(), &isomorphism) {
        return Err(Error::SpecInvariantViolated(
            "block map is not an isomorphism onto Sab(G, K, KaK)".into(),
        ));
    }
    Ok(CosetQuotient {
        original,
        quotient,
        partition,
        isomorphism,
        certificate,
    })
}

/// Connected components as sets, for fiber bookkeeping.
pub fn fiber_components(graph: &Graph, fiber: &[usize]) -> Vec<BTreeSet<usize>> {
    let inside: HashSet<usize> = fiber.iter().copied().collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &s in fiber {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = BTreeSet::from([s]);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u) {
                if inside.contains(&w) && seen.insert(w) {
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}
