//! Cayley graphs, Sabidussi coset graphs, symmetric coset graphs
//! `Sab(G, H, HaH)`, orbital graphs and the double-coset/orbital dictionary.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{verify_action, Graph, TransitivityReport};
use crate::perm::{is_transitive, orbits, stabilizer, GroupTable, Permutation};
use crate::subgroups::{core, double_cosets, right_cosets, CosetSpace, DoubleCosetDecomposition, Subgroup};

/// Input to [`sabidussi_graph`]: a group, a subgroup and a connection set `D`.
#[derive(Debug, Clone)]
pub struct CosetGraphSpec {
    pub group: GroupTable,
    pub subgroup: Subgroup,
    pub connectors: BTreeSet<Permutation>,
}

impl CosetGraphSpec {
    pub fn new(group: GroupTable, subgroup: Subgroup, connectors: impl IntoIterator<Item = Permutation>) -> Self {
        CosetGraphSpec {
            group,
            subgroup,
            connectors: connectors.into_iter().collect(),
        }
    }

    /// Connection set `HaH`.
    pub fn from_involution(group: GroupTable, subgroup: Subgroup, a: &Permutation) -> Self {
        let d = double_coset(&subgroup, a);
        CosetGraphSpec {
            group,
            subgroup,
            connectors: d,
        }
    }

    /// Checks `D ⊆ G`, `D ∩ H = ∅` and `D = D⁻¹`.
    pub fn validate(&self) -> Result<()> {
        if !self.subgroup.is_subgroup_of(&self.group) {
            return Err(Error::NotASubgroup);
        }
        for d in &self.connectors {
            if !self.group.contains(d) {
                return Err(Error::SpecInvariantViolated(format!(
                    "connector {d} is not in the group"
                )));
            }
            if self.subgroup.contains(d) {
                return Err(Error::SpecInvariantViolated(format!(
                    "connector {d} lies in the subgroup"
                )));
            }
            if !self.connectors.contains(&d.inverse()) {
                return Err(Error::SpecInvariantViolated(format!(
                    "inverse of connector {d} is missing"
                )));
            }
        }
        Ok(())
    }
}

/// `HaH` as a set.
pub fn double_coset(sub: &Subgroup, a: &Permutation) -> BTreeSet<Permutation> {
    let mut out = BTreeSet::new();
    for h1 in sub.elements() {
        let ha = h1.then(a);
        for h2 in sub.elements() {
            out.insert(ha.then(h2));
        }
    }
    out
}

/// The right regular representation of `group` on its element indices.
pub fn right_regular_action(group: &GroupTable) -> GroupTable {
    let gens = group
        .generators()
        .iter()
        .map(|g| {
            let gi = group.index_of(g).expect("generator is an element");
            Permutation::from_images((0..group.order()).map(|x| group.mul(x, gi)).collect()).expect("regular action")
        })
        .collect();
    GroupTable::generate(group.order(), gens).expect("regular action is faithful")
}

/// Cayley graph on the elements of `group`: `x ~ y` iff `xy⁻¹ ∈ D`.
pub fn cayley_graph(group: &GroupTable, connectors: &[Permutation]) -> Result<Graph> {
    let d: BTreeSet<&Permutation> = connectors.iter().collect();
    for c in &d {
        if c.is_identity() {
            return Err(Error::LoopConnector);
        }
        if !group.contains(c) {
            return Err(Error::InvalidInput(format!("connector {c} is not in the group")));
        }
        if !d.contains(&c.inverse()) {
            return Err(Error::NotInverseClosed);
        }
    }
    let labels = group.elements().iter().map(Permutation::to_cycle_string).collect();
    let mut arcs = Vec::new();
    for (xi, x) in group.elements().iter().enumerate() {
        for c in &d {
            let y = c.inverse().then(x);
            arcs.push((xi, group.index_of(&y).unwrap()));
        }
    }
    Graph::from_arcs(labels, arcs)
}

/// A coset graph together with the coset space and the group induced on it.
#[derive(Debug, Clone)]
pub struct CosetGraph {
    pub graph: Graph,
    pub cosets: CosetSpace,
    /// Permutation group induced on the cosets.
    pub action: GroupTable,
    pub report: TransitivityReport,
    /// Order of `Core_G(H)`, the kernel of the coset action.
    pub kernel_order: usize,
    pub connected: bool,
    /// Whether `D ∪ H` generates `G`.
    pub generates: bool,
}

/// `Sab(G, H, D)`: vertices are right cosets, `Hx ~ Hy` iff `xy⁻¹ ∈ D`.
pub fn sabidussi_graph(spec: &CosetGraphSpec) -> Result<CosetGraph> {
    spec.validate()?;
    let group = &spec.group;
    let cosets = right_cosets(group, &spec.subgroup)?;
    let labels = (0..cosets.len()).map(|c| cosets.label(group, c)).collect();
    let mut arcs = BTreeSet::new();
    let inverses: Vec<Permutation> = spec.connectors.iter().map(Permutation::inverse).collect();
    for (xi, x) in group.elements().iter().enumerate() {
        for dinv in &inverses {
            let y = dinv.then(x);
            arcs.insert((cosets.coset_of[xi], cosets.coset_index(group, &y)));
        }
    }
    let graph = Graph::from_arcs(labels, arcs)?;
    let action = cosets.induced_group(group);
    let report = verify_action(&graph, &action)?;
    let kernel_order = core(group, &spec.subgroup)?.order();
    let mut gens = spec.subgroup.generators().to_vec();
    gens.extend(spec.connectors.iter().cloned());
    let generates = group.subgroup_generated(&gens)?.order() == group.order();
    Ok(CosetGraph {
        connected: graph.is_connected(),
        graph,
        cosets,
        action,
        report,
        kernel_order,
        generates,
    })
}

/// `Sab(G, H, HaH)` with the quantities that certify it.
#[derive(Debug, Clone)]
pub struct SymmetricCosetGraph {
    pub coset_graph: CosetGraph,
    pub involution: Permutation,
    /// `|H| / |a⁻¹Ha ∩ H|`
    pub expected_valency: usize,
    /// Measured valency, `None` if the graph is not regular.
    pub valency: Option<usize>,
    pub arc_stabilizer_order: usize,
    /// Whether the stabilizer of the arc `(H, Ha)` equals `a⁻¹Ha ∩ H`.
    pub arc_stabilizer_law: bool,
}

impl SymmetricCosetGraph {
    pub fn graph(&self) -> &Graph {
        &self.coset_graph.graph
    }

    pub fn report(&self) -> &TransitivityReport {
        &self.coset_graph.report
    }
}

pub fn symmetric_coset_graph(group: &GroupTable, sub: &Subgroup, a: &Permutation) -> Result<SymmetricCosetGraph> {
    if !sub.is_subgroup_of(group) {
        return Err(Error::NotASubgroup);
    }
    if !group.contains(a) {
        return Err(Error::InvalidInput(format!("{a} is not in the group")));
    }
    if !a.then(a).is_identity() {
        return Err(Error::NotInvolution(a.to_cycle_string()));
    }
    if sub.contains(a) {
        return Err(Error::InsideSubgroup(a.to_cycle_string()));
    }
    let spec = CosetGraphSpec::from_involution(group.clone(), sub.clone(), a);
    let coset_graph = sabidussi_graph(&spec)?;
    let meet = sub.intersection(&sub.conjugate(a));
    let expected_valency = sub.order() / meet.order();

    let cs = &coset_graph.cosets;
    let head = cs.coset_index(group, a);
    let arc_stab: BTreeSet<&Permutation> = group
        .elements()
        .iter()
        .enumerate()
        .filter(|&(gi, _)| cs.action.image(gi, 0) == 0 && cs.action.image(gi, head) == head)
        .map(|(_, g)| g)
        .collect();
    let meet_set: BTreeSet<&Permutation> = meet.elements().iter().collect();
    Ok(SymmetricCosetGraph {
        valency: coset_graph.graph.valency(),
        arc_stabilizer_order: arc_stab.len(),
        arc_stabilizer_law: arc_stab == meet_set,
        expected_valency,
        involution: a.clone(),
        coset_graph,
    })
}

/// An orbit of the group on ordered pairs of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbital {
    pub pairs: BTreeSet<(usize, usize)>,
    pub diagonal: bool,
    pub self_paired: bool,
    /// Index of the orbital formed by the reversed pairs.
    pub paired_with: usize,
}

/// Orbitals of a transitive group, ordered by least pair; the diagonal comes first.
pub fn orbitals(group: &GroupTable, domain_size: usize) -> Result<Vec<Orbital>> {
    if group.degree() != domain_size {
        return Err(Error::DegreeMismatch {
            expected: domain_size,
            found: group.degree(),
        });
    }
    if !is_transitive(group, domain_size) {
        return Err(Error::NotTransitive);
    }
    let n = domain_size;
    let mut owner = vec![usize::MAX; n * n];
    let mut sets: Vec<BTreeSet<(usize, usize)>> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if owner[a * n + b] != usize::MAX {
                continue;
            }
            let id = sets.len();
            let mut set = BTreeSet::new();
            let mut queue = VecDeque::from([(a, b)]);
            owner[a * n + b] = id;
            while let Some((x, y)) = queue.pop_front() {
                set.insert((x, y));
                for g in group.generators() {
                    let (u, v) = (g.apply(x), g.apply(y));
                    if owner[u * n + v] == usize::MAX {
                        owner[u * n + v] = id;
                        queue.push_back((u, v));
                    }
                }
            }
            sets.push(set);
        }
    }
    Ok(sets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let &(a, b) = s.iter().next().unwrap();
            let paired_with = owner[b * n + a];
            Orbital {
                pairs: s.clone(),
                diagonal: a == b,
                self_paired: paired_with == i,
                paired_with,
            }
        })
        .collect())
}

/// Number of orbits of the stabilizer of point 0, computed without orbitals.
pub fn rank(group: &GroupTable) -> usize {
    if group.degree() == 0 {
        return 0;
    }
    let stab = stabilizer(group, 0);
    if stab.generators().is_empty() {
        return group.degree();
    }
    orbits(&stab).len()
}

/// The orbital graph on `0..domain_size` with arc set `orbital`.
pub fn orbital_graph(group: &GroupTable, domain_size: usize, orbital: &BTreeSet<(usize, usize)>) -> Result<Graph> {
    if group.degree() != domain_size {
        return Err(Error::DegreeMismatch {
            expected: domain_size,
            found: group.degree(),
        });
    }
    if orbital.iter().any(|&(a, b)| a == b) {
        return Err(Error::DiagonalOrbital);
    }
    if orbital.iter().any(|&(a, b)| !orbital.contains(&(b, a))) {
        return Err(Error::NotSelfPaired);
    }
    Graph::from_arcs(
        (1..=domain_size).map(|i| i.to_string()).collect(),
        orbital.iter().copied(),
    )
}

/// The bijection between double cosets `HxH` and orbitals of `G` on `Cos_G(H)`.
#[derive(Debug, Clone)]
pub struct OrbitalDictionary {
    pub decomposition: DoubleCosetDecomposition,
    pub cosets: CosetSpace,
    /// Orbitals of the group induced on the cosets.
    pub orbitals: Vec<Orbital>,
    /// `(class, orbital)` pairs, one per class in class order.
    pub pairs: Vec<(usize, usize)>,
}

pub fn orbital_double_coset_map(group: &GroupTable, sub: &Subgroup) -> Result<OrbitalDictionary> {
    let decomposition = double_cosets(group, sub)?;
    let cosets = right_cosets(group, sub)?;
    let action = cosets.induced_group(group);
    let orbs = orbitals(&action, cosets.len())?;
    let mut pairs = Vec::new();
    let mut used = HashSet::new();
    for (class, &rep) in decomposition.representatives.iter().enumerate() {
        let target = cosets.coset_of[rep];
        let orbital = orbs
            .iter()
            .position(|o| o.pairs.contains(&(0, target)))
            .expect("orbitals partition all pairs");
        if !used.insert(orbital) {
            return Err(Error::SpecInvariantViolated(format!(
                "orbital {orbital} met by two double cosets"
            )));
        }
        if decomposition.has_involution[class] != orbs[orbital].self_paired {
            return Err(Error::SpecInvariantViolated(format!(
                "class {class} involution flag disagrees with orbital {orbital}"
            )));
        }
        pairs.push((class, orbital));
    }
    if used.len() != orbs.len() {
        return Err(Error::SpecInvariantViolated("some orbital has no double coset".into()));
    }
    Ok(OrbitalDictionary {
        decomposition,
        cosets,
        orbitals: orbs,
        pairs,
    })
}

/// A symmetric graph recognised as `Sab(G, G_0, G_0 a G_0)`.
#[derive(Debug, Clone)]
pub struct Recognition {
    pub subgroup: Subgroup,
    pub involution: Permutation,
    /// `iso[c]` is the vertex `0^x` for the coset `c = G_0 x`.
    pub isomorphism: Vec<usize>,
}

pub fn recognize_as_coset_graph(graph: &Graph, group: &GroupTable) -> Result<Recognition> {
    let report = verify_action(graph, group)?;
    if !report.is_symmetric() || graph.vertex_count() == 0 {
        return Err(Error::NotSymmetric);
    }
    let h = stabilizer(group, 0);
    let a = group
        .elements()
        .iter()
        .find(|g| g.is_involution() && graph.has_arc(0, g.apply(0)))
        .cloned()
        .ok_or(Error::NoFlippingInvolution)?;
    let built = symmetric_coset_graph(group, &h, &a)?;
    let cs = &built.coset_graph.cosets;
    let isomorphism: Vec<usize> = cs.representatives.iter().map(|&r| group.element(r).apply(0)).collect();
    if !crate::graph::is_isomorphism(built.graph(), graph, &isomorphism) {
        return Err(Error::SpecInvariantViolated("coset map is not an isomorphism".into()));
    }
    Ok(Recognition {
        subgroup: h,
        involution: a,
        isomorphism,
    })
}
