use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{verify_action, Graph, TransitivityReport};
use crate::perm::{GroupTable, Permutation};
use crate::quotients::{certify_quotient, QuotientCertificate};
use crate::subgroups::BlockSystem;

/// `N ⋊_ρ G` with `N` and `G` given as permutation groups and `ρ` as a table
/// of automorphisms of `N` (permutations of its element indices), one per element of `G`.
///
/// Multiplication is `(n₁, g₁)(n₂, g₂) = (n₁^ρ(g₂) n₂, g₁g₂)` and
/// `n^ρ(g₁g₂) = (n^ρ(g₁))^ρ(g₂)`, which makes
/// `(n, v)^(η, g) = (n^ρ(g) η, v^g)` an action on `N × V`.
#[derive(Debug, Clone)]
pub struct SemidirectGroup {
    n: GroupTable,
    g: GroupTable,
    rho: Vec<Vec<usize>>,
}

/// Extends generator images to a map on all of `N`, checking it is an automorphism.
fn automorphism_from_images(n: &GroupTable, images: &[Permutation]) -> Result<Vec<usize>> {
    let gens = n.generators();
    if images.len() != gens.len() {
        return Err(Error::TwistNotHomomorphism(format!(
            "{} generator images given for {} generators of N",
            images.len(),
            gens.len()
        )));
    }
    let mut gen_idx = Vec::new();
    let mut img_idx = Vec::new();
    for (g, im) in gens.iter().zip(images) {
        gen_idx.push(n.index_of(g).unwrap());
        img_idx.push(
            n.index_of(im)
                .ok_or_else(|| Error::TwistNotHomomorphism(format!("image {im} is not in N")))?,
        );
    }
    let mut map = vec![usize::MAX; n.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gen_idx.iter().zip(&img_idx) {
            let y = n.mul(x, s);
            let fy = n.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return Err(Error::TwistNotHomomorphism(
                    "generator images violate a relation of N".into(),
                ));
            }
        }
    }
    let mut hit = vec![false; n.order()];
    for &y in &map {
        if hit[y] {
            return Err(Error::TwistNotHomomorphism(
                "generator images do not give a bijection".into(),
            ));
        }
        hit[y] = true;
    }
    Ok(map)
}

impl SemidirectGroup {
    /// `twist[i]` lists the images of `N`'s generators under `ρ` of the `i`-th generator of `G`.
    pub fn new(n: GroupTable, g: GroupTable, twist: &[Vec<Permutation>]) -> Result<Self> {
        if twist.len() != g.generators().len() {
            return Err(Error::TwistNotHomomorphism(format!(
                "twist given for {} generators, G has {}",
                twist.len(),
                g.generators().len()
            )));
        }
        let gen_autos: Vec<Vec<usize>> = twist
            .iter()
            .map(|imgs| automorphism_from_images(&n, imgs))
            .collect::<Result<_>>()?;
        let gen_idx: Vec<usize> = g.generators().iter().map(|x| g.index_of(x).unwrap()).collect();
        // ρ(x s) = ρ(x) then ρ(s), grown over G and checked for consistency
        let mut rho: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
        rho[0] = (0..n.order()).collect();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, auto) in gen_idx.iter().zip(&gen_autos) {
                let y = g.mul(x, s);
                let composed: Vec<usize> = rho[x].iter().map(|&i| auto[i]).collect();
                if rho[y].is_empty() {
                    rho[y] = composed;
                    queue.push_back(y);
                } else if rho[y] != composed {
                    return Err(Error::TwistNotHomomorphism(format!(
                        "two words for {} give different automorphisms",
                        g.element(y)
                    )));
                }
            }
        }
        Ok(SemidirectGroup { n, g, rho })
    }

    /// Direct product: `ρ` trivial.
    pub fn direct(n: GroupTable, g: GroupTable) -> Self {
        let twist: Vec<Vec<Permutation>> = g.generators().iter().map(|_| n.generators().to_vec()).collect();
        SemidirectGroup::new(n, g, &twist).expect("trivial twist is a homomorphism")
    }

    pub fn n_part(&self) -> &GroupTable {
        &self.n
    }

    pub fn g_part(&self) -> &GroupTable {
        &self.g
    }

    pub fn order(&self) -> usize {
        self.n.order() * self.g.order()
    }

    /// `n^ρ(g)` on element indices.
    pub fn twist(&self, n: usize, g: usize) -> usize {
        self.rho[g][n]
    }

    pub fn mul(&self, x: (usize, usize), y: (usize, usize)) -> (usize, usize) {
        (self.n.mul(self.twist(x.0, y.1), y.0), self.g.mul(x.1, y.1))
    }

    pub fn inverse(&self, x: (usize, usize)) -> (usize, usize) {
        let gi = self.g.inv(x.1);
        // (n, g)⁻¹ = ((n⁻¹)^ρ(g⁻¹), g⁻¹)
        (self.twist(self.n.inv(x.0), gi), gi)
    }

    /// `(n, v)^(η, g) = (n^ρ(g) η, v^g)` with `n`, `η` element indices of `N`.
    pub fn act(&self, point: (usize, usize), x: (usize, usize)) -> (usize, usize) {
        (
            self.n.mul(self.twist(point.0, x.1), x.0),
            self.g.element(x.1).apply(point.1),
        )
    }

    /// Index of `(n, v)` in `N × V`.
    pub fn point_index(&self, n: usize, v: usize) -> usize {
        v * self.n.order() + n
    }

    pub fn degree(&self) -> usize {
        self.n.order() * self.g.degree()
    }

    /// The element `(η, g)` as a permutation of `N × V`.
    pub fn permutation_of(&self, x: (usize, usize)) -> Permutation {
        let mut images = vec![0; self.degree()];
        for v in 0..self.g.degree() {
            for n in 0..self.n.order() {
                let (m, w) = self.act((n, v), x);
                images[self.point_index(n, v)] = self.point_index(m, w);
            }
        }
        Permutation::from_images(images).expect("semidirect action is a bijection")
    }

    /// The permutation group on `N × V` generated by `(n, 1)` and `(1, g)` for generators.
    pub fn action_group(&self) -> GroupTable {
        let mut gens: Vec<Permutation> = self
            .n
            .generators()
            .iter()
            .map(|x| self.permutation_of((self.n.index_of(x).unwrap(), 0)))
            .collect();
        gens.extend(
            self.g
                .generators()
                .iter()
                .map(|x| self.permutation_of((0, self.g.index_of(x).unwrap()))),
        );
        GroupTable::generate(self.degree(), gens).expect("semidirect product fits under the cap")
    }

    /// Fibers `B(v) = {(n, v)}` of `N × V`.
    pub fn fibers(&self) -> BlockSystem {
        let k = self.n.order();
        BlockSystem::new(
            self.degree(),
            (0..self.g.degree()).map(|v| (v * k..(v + 1) * k).collect()).collect(),
        )
        .expect("fibers partition N × V")
    }

    /// Checks associativity, the action law against the multiplication, the
    /// order of the permutation representation and that `N` is normal with
    /// quotient `G`.
    pub fn verify(&self) -> SemidirectReport {
        let elems: Vec<(usize, usize)> = (0..self.g.order())
            .flat_map(|g| (0..self.n.order()).map(move |n| (n, g)))
            .collect();
        let sample: Vec<(usize, usize)> = elems.iter().copied().step_by((elems.len() / 40).max(1)).collect();
        let mut associative = true;
        let mut action_law = true;
        for &x in &sample {
            for &y in &sample {
                for &z in sample.iter().take(8) {
                    associative &= self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z));
                }
                for v in 0..self.g.degree() {
                    for n in 0..self.n.order() {
                        action_law &= self.act(self.act((n, v), x), y) == self.act((n, v), self.mul(x, y));
                    }
                }
            }
        }
        let group = self.action_group();
        let n_image = GroupTable::generate(
            self.degree(),
            self.n
                .generators()
                .iter()
                .map(|x| self.permutation_of((self.n.index_of(x).unwrap(), 0)))
                .collect(),
        )
        .expect("N embeds");
        let quotient_order = self.fibers().induced_group(&group).map(|q| q.order()).unwrap_or(0);
        SemidirectReport {
            order: group.order(),
            expected_order: self.order(),
            associative,
            action_law,
            n_normal: n_image.is_normal_in(&group) && n_image.order() == self.n.order(),
            quotient_is_g: quotient_order == self.g.order(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectReport {
    pub order: usize,
    pub expected_order: usize,
    pub associative: bool,
    pub action_law: bool,
    pub n_normal: bool,
    pub quotient_is_g: bool,
}

impl SemidirectReport {
    pub fn ok(&self) -> bool {
        self.order == self.expected_order && self.associative && self.action_law && self.n_normal && self.quotient_is_g
    }
}

/// An `N`-chain: a value of `N` (element index) on every arc of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NChain {
    pub values: BTreeMap<(usize, usize), usize>,
}

impl NChain {
    /// The same value on every arc.
    pub fn constant(graph: &Graph, value: usize) -> Self {
        NChain {
            values: graph.arcs().into_iter().map(|a| (a, value)).collect(),
        }
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.values.get(&(u, v)).copied()
    }
}

/// Result of [`validate_nchain`]: arc orbits of `G` and one representative each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    pub arc_orbits: Vec<Vec<(usize, usize)>>,
    /// `(arc, value)` for the least arc of each orbit; these determine the chain.
    pub determining_values: Vec<((usize, usize), usize)>,
}

/// Checks `φ(v,u) = φ(u,v)⁻¹` and `φ(arc^g) = φ(arc)^ρ(g)` for every arc and generator.
pub fn validate_nchain(graph: &Graph, group: &GroupTable, sd: &SemidirectGroup, chain: &NChain) -> Result<ChainReport> {
    if group.elements() != sd.g_part().elements() {
        return Err(Error::InvalidChain(
            "the graph group differs from the semidirect factor G".into(),
        ));
    }
    let n = sd.n_part();
    for (u, v) in graph.arcs() {
        let x = chain
            .get(u, v)
            .ok_or_else(|| Error::InvalidChain(format!("no value on arc ({}, {})", u + 1, v + 1)))?;
        if x >= n.order() {
            return Err(Error::InvalidChain(format!("value index {x} outside N")));
        }
    }
    if chain.values.keys().any(|&(u, v)| !graph.has_arc(u, v)) {
        return Err(Error::InvalidChain("value on a pair that is not an arc".into()));
    }
    for (u, v) in graph.arcs() {
        if chain.get(v, u).unwrap() != n.inv(chain.get(u, v).unwrap()) {
            return Err(Error::InverseSymmetryViolated(u + 1, v + 1));
        }
    }
    for (gi, g) in group.generators().iter().enumerate() {
        let g_idx = group.index_of(g).unwrap();
        for (u, v) in graph.arcs() {
            let image = (g.apply(u), g.apply(v));
            if chain.get(image.0, image.1).unwrap() != sd.twist(chain.get(u, v).unwrap(), g_idx) {
                return Err(Error::NotCompatible {
                    arc0: u + 1,
                    arc1: v + 1,
                    generator: gi + 1,
                });
            }
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut arc_orbits = Vec::new();
    let mut determining_values = Vec::new();
    for a in graph.arcs() {
        if seen.contains(&a) {
            continue;
        }
        let orbit: Vec<(usize, usize)> = group
            .elements()
            .iter()
            .map(|g| (g.apply(a.0), g.apply(a.1)))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        seen.extend(orbit.iter().copied());
        determining_values.push((a, chain.get(a.0, a.1).unwrap()));
        arc_orbits.push(orbit);
    }
    Ok(ChainReport {
        arc_orbits,
        determining_values,
    })
}

/// Fills a partial chain by `φ(arc^g) = φ(arc)^ρ(g)` and `φ(v,u) = φ(u,v)⁻¹`.
pub fn propagate_chain(
    graph: &Graph,
    group: &GroupTable,
    sd: &SemidirectGroup,
    partial: &BTreeMap<(usize, usize), usize>,
) -> Result<NChain> {
    let n = sd.n_part();
    let mut values: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let gens: Vec<(usize, &Permutation)> = group
        .generators()
        .iter()
        .map(|g| (group.index_of(g).unwrap(), g))
        .collect();
    let assign = |values: &mut BTreeMap<(usize, usize), usize>,
                  queue: &mut VecDeque<(usize, usize)>,
                  arc: (usize, usize),
                  x: usize,
                  from: (usize, usize),
                  generator: usize|
     -> Result<()> {
        match values.get(&arc) {
            Some(&y) if y != x => Err(Error::NotCompatible {
                arc0: from.0 + 1,
                arc1: from.1 + 1,
                generator,
            }),
            Some(_) => Ok(()),
            None => {
                values.insert(arc, x);
                queue.push_back(arc);
                Ok(())
            }
        }
    };
    for (&arc, &x) in partial {
        if !graph.has_arc(arc.0, arc.1) {
            return Err(Error::InvalidChain(format!(
                "({}, {}) is not an arc",
                arc.0 + 1,
                arc.1 + 1
            )));
        }
        if x >= n.order() {
            return Err(Error::InvalidChain(format!("value index {x} outside N")));
        }
        assign(&mut values, &mut queue, arc, x, arc, 0)?;
    }
    while let Some(arc) = queue.pop_front() {
        let x = values[&arc];
        let rev = (arc.1, arc.0);
        if let Some(&y) = values.get(&rev) {
            if y != n.inv(x) {
                return Err(Error::InverseSymmetryViolated(arc.0 + 1, arc.1 + 1));
            }
        } else {
            assign(&mut values, &mut queue, rev, n.inv(x), arc, 0)?;
        }
        for (k, &(gi, g)) in gens.iter().enumerate() {
            let image = (g.apply(arc.0), g.apply(arc.1));
            assign(&mut values, &mut queue, image, sd.twist(x, gi), arc, k + 1)?;
        }
    }
    if let Some((u, v)) = graph.arcs().into_iter().find(|a| !values.contains_key(a)) {
        return Err(Error::InvalidChain(format!(
            "arc ({}, {}) is not reached from the given values",
            u + 1,
            v + 1
        )));
    }
    Ok(NChain { values })
}

/// `Γ̃(N, ρ, φ)` with its action, fibers and checks.
#[derive(Debug, Clone)]
pub struct BiggsCover {
    pub graph: Graph,
    /// `N ⋊ G` acting on `N × V`; vertex `(n, v)` has index `v·|N| + n`.
    pub action: GroupTable,
    pub fibers: BlockSystem,
    pub report: TransitivityReport,
    pub certificate: QuotientCertificate,
    /// `v ↦ B(v)` is an isomorphism from the base graph onto the quotient.
    pub quotient_isomorphic: bool,
    /// Every `Γ̃[B(u), B(v)]` over an arc is a perfect matching.
    pub fibers_matched: bool,
}

/// Vertices `N × V`, arcs `((n₁, v₁), (n₂, v₂))` with `(v₁, v₂)` an arc and `n₂ = φ(v₁, v₂) n₁`.
pub fn biggs_cover(graph: &Graph, group: &GroupTable, sd: &SemidirectGroup, chain: &NChain) -> Result<BiggsCover> {
    validate_nchain(graph, group, sd, chain)?;
    let n = sd.n_part();
    let k = n.order();
    let mut labels = Vec::with_capacity(sd.degree());
    for v in 0..graph.vertex_count() {
        for x in n.elements() {
            labels.push(format!("{}:{}", x.to_cycle_string(), graph.label(v)));
        }
    }
    let mut arcs = Vec::new();
    for (u, v) in graph.arcs() {
        let phi = chain.get(u, v).unwrap();
        for n1 in 0..k {
            arcs.push((sd.point_index(n1, u), sd.point_index(n.mul(phi, n1), v)));
        }
    }
    let cover = Graph::from_arcs(labels, arcs)?;
    let action = sd.action_group();
    let report = verify_action(&cover, &action)?;
    let fibers = sd.fibers();
    let certificate = certify_quotient(&cover, &action, &fibers, false)?;
    let quotient_isomorphic = crate::graph::is_isomorphism(
        graph,
        &certificate.quotient,
        &(0..graph.vertex_count()).collect::<Vec<_>>(),
    );
    let fibers_matched = graph.arcs().into_iter().all(|(u, v)| {
        fibers
            .block(u)
            .iter()
            .all(|&x| cover.neighbors(x).iter().filter(|&&y| fibers.block_of(y) == v).count() == 1)
    });
    Ok(BiggsCover {
        graph: cover,
        action,
        fibers,
        report,
        certificate,
        quotient_isomorphic,
        fibers_matched,
    })
}
