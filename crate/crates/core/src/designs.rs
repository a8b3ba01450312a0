//! Incidence structures, 1-designs, duals and polarities, and the passage
//! between symmetric graphs and symmetric designs.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{verify_action, Graph};
use crate::perm::{GroupTable, Permutation};

/// Points, blocks and the set of flags `(point, block)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    pub point_labels: Vec<String>,
    pub block_labels: Vec<String>,
    flags: BTreeSet<(usize, usize)>,
}

impl IncidenceStructure {
    pub fn new(
        point_labels: Vec<String>,
        block_labels: Vec<String>,
        flags: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let flags: BTreeSet<(usize, usize)> = flags.into_iter().collect();
        for &(p, b) in &flags {
            if p >= point_labels.len() || b >= block_labels.len() {
                return Err(Error::InvalidInput(format!("flag ({p}, {b}) out of range")));
            }
        }
        Ok(IncidenceStructure {
            point_labels,
            block_labels,
            flags,
        })
    }

    /// Structure with default labels: points `1..=v`, blocks `b1..`, blocks given by their point sets.
    pub fn from_blocks(v: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let flags = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, pts)| pts.iter().map(move |&p| (p, b)));
        IncidenceStructure::new(
            (1..=v).map(|i| i.to_string()).collect(),
            (1..=blocks.len()).map(|i| format!("b{i}")).collect(),
            flags.collect::<Vec<_>>(),
        )
    }

    pub fn point_count(&self) -> usize {
        self.point_labels.len()
    }

    pub fn block_count(&self) -> usize {
        self.block_labels.len()
    }

    pub fn flags(&self) -> &BTreeSet<(usize, usize)> {
        &self.flags
    }

    pub fn is_incident(&self, point: usize, block: usize) -> bool {
        self.flags.contains(&(point, block))
    }

    /// The trace `T(b)`: points incident with block `b`.
    pub fn trace(&self, block: usize) -> BTreeSet<usize> {
        self.flags.iter().filter(|f| f.1 == block).map(|f| f.0).collect()
    }

    /// Blocks incident with `point`.
    pub fn point_blocks(&self, point: usize) -> BTreeSet<usize> {
        self.flags.range((point, 0)..(point + 1, 0)).map(|f| f.1).collect()
    }

    /// Image of every block under a point permutation, matching blocks by trace.
    ///
    /// Blocks sharing a trace are matched in index order, which keeps the
    /// result an action when the point permutations come from a group.
    pub fn block_permutation(&self, g: &Permutation) -> Option<Permutation> {
        if g.degree() != self.point_count() {
            return None;
        }
        let mut classes: BTreeMap<BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
        for b in 0..self.block_count() {
            classes.entry(self.trace(b)).or_default().push(b);
        }
        let mut images = vec![usize::MAX; self.block_count()];
        for (trace, members) in &classes {
            let moved: BTreeSet<usize> = trace.iter().map(|&p| g.apply(p)).collect();
            let target = classes.get(&moved)?;
            if target.len() != members.len() {
                return None;
            }
            for (&b, &c) in members.iter().zip(target) {
                images[b] = c;
            }
        }
        Permutation::from_images(images).ok()
    }
}

/// Parameters of a 1-design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DesignParams {
    pub v: usize,
    pub b: usize,
    pub k: usize,
    pub lambda: usize,
    /// gcd of the numbers of blocks sharing each trace.
    pub m: usize,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn validate_design(inc: &IncidenceStructure) -> Result<DesignParams> {
    let sizes: BTreeSet<usize> = (0..inc.block_count()).map(|b| inc.trace(b).len()).collect();
    if sizes.len() > 1 {
        return Err(Error::NotUniformBlocks);
    }
    let degrees: BTreeSet<usize> = (0..inc.point_count()).map(|p| inc.point_blocks(p).len()).collect();
    if degrees.len() > 1 {
        return Err(Error::NotUniformPoints);
    }
    let mut counts: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    for b in 0..inc.block_count() {
        *counts.entry(inc.trace(b)).or_default() += 1;
    }
    let m = counts.values().fold(0, |acc, &c| gcd(acc, c)).max(1);
    Ok(DesignParams {
        v: inc.point_count(),
        b: inc.block_count(),
        k: sizes.into_iter().next().unwrap_or(0),
        lambda: degrees.into_iter().next().unwrap_or(0),
        m,
    })
}

/// Points and blocks swapped, flags transposed.
pub fn dual(inc: &IncidenceStructure) -> IncidenceStructure {
    IncidenceStructure {
        point_labels: inc.block_labels.clone(),
        block_labels: inc.point_labels.clone(),
        flags: inc.flags.iter().map(|&(p, b)| (b, p)).collect(),
    }
}

/// Identifies blocks with equal traces, keeping the first label of each class.
pub fn identify_repeated_blocks(inc: &IncidenceStructure) -> IncidenceStructure {
    let mut seen: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    let mut labels = Vec::new();
    let mut flags = BTreeSet::new();
    for b in 0..inc.block_count() {
        let t = inc.trace(b);
        if seen.contains_key(&t) {
            continue;
        }
        let id = labels.len();
        labels.push(inc.block_labels[b].clone());
        for &p in &t {
            flags.insert((p, id));
        }
        seen.insert(t, id);
    }
    IncidenceStructure {
        point_labels: inc.point_labels.clone(),
        block_labels: labels,
        flags,
    }
}

/// Mutually inverse maps points → blocks and blocks → points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polarity {
    pub point_map: Vec<usize>,
    pub block_map: Vec<usize>,
}

impl Polarity {
    /// Polarity with `block_map = point_map⁻¹`.
    pub fn from_point_map(point_map: Vec<usize>) -> Result<Self> {
        let mut block_map = vec![usize::MAX; point_map.len()];
        for (p, &b) in point_map.iter().enumerate() {
            if b >= block_map.len() || block_map[b] != usize::MAX {
                return Err(Error::NotPolarity("point map is not a bijection".into()));
            }
            block_map[b] = p;
        }
        Ok(Polarity { point_map, block_map })
    }

    /// Checks the polarity conditions: inverse bijections, flags sent to dual
    /// flags, and commutation with every generator of `group`.
    pub fn validate(&self, inc: &IncidenceStructure, group: &GroupTable) -> Result<()> {
        let v = inc.point_count();
        if inc.block_count() != v || self.point_map.len() != v || self.block_map.len() != v {
            return Err(Error::NotPolarity("points and blocks differ in number".into()));
        }
        for p in 0..v {
            if self.point_map[p] >= v || self.block_map[self.point_map[p]] != p {
                return Err(Error::NotPolarity(format!(
                    "block map does not invert the point map at {}",
                    p + 1
                )));
            }
        }
        for b in 0..v {
            if self.block_map[b] >= v || self.point_map[self.block_map[b]] != b {
                return Err(Error::NotPolarity(format!(
                    "point map does not invert the block map at block {}",
                    b + 1
                )));
            }
        }
        for &(p, b) in inc.flags() {
            if !inc.is_incident(self.block_map[b], self.point_map[p]) {
                return Err(Error::NotPolarity(format!(
                    "flag ({}, {}) is not sent to a flag",
                    p + 1,
                    b + 1
                )));
            }
        }
        check_group_degree(inc, group)?;
        for g in group.generators() {
            if inc.block_permutation(g).is_none() {
                return Err(Error::NotPolarity(format!("{g} does not act on the blocks")));
            }
            // Compared by trace: repeated blocks make the index action ambiguous.
            for p in 0..v {
                let moved: BTreeSet<usize> = inc.trace(self.point_map[p]).iter().map(|&q| g.apply(q)).collect();
                if inc.trace(self.point_map[g.apply(p)]) != moved {
                    return Err(Error::NotPolarity(format!(
                        "does not commute with {g} at point {}",
                        p + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

fn check_group_degree(inc: &IncidenceStructure, group: &GroupTable) -> Result<()> {
    if group.degree() != inc.point_count() {
        return Err(Error::DegreeMismatch {
            expected: inc.point_count(),
            found: group.degree(),
        });
    }
    Ok(())
}

/// Orbits of `group` on flags, points and blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignTransitivity {
    pub flag_orbits: usize,
    pub point_transitive: bool,
    pub block_transitive: bool,
}

impl DesignTransitivity {
    pub fn flag_transitive(&self) -> bool {
        self.flag_orbits <= 1
    }
}

pub fn design_transitivity(inc: &IncidenceStructure, group: &GroupTable) -> Result<DesignTransitivity> {
    check_group_degree(inc, group)?;
    for g in group.generators() {
        if inc.block_permutation(g).is_none() {
            return Err(Error::InvalidInput(format!("{g} does not map blocks to blocks")));
        }
    }
    // Repeated blocks are identified by trace; their index order carries no action.
    let traces: Vec<BTreeSet<usize>> = (0..inc.block_count()).map(|b| inc.trace(b)).collect();
    let mut class_of: BTreeMap<&BTreeSet<usize>, usize> = BTreeMap::new();
    for t in &traces {
        let next = class_of.len();
        class_of.entry(t).or_insert(next);
    }
    let class_traces: Vec<&BTreeSet<usize>> = {
        let mut v: Vec<(usize, &BTreeSet<usize>)> = class_of.iter().map(|(t, &c)| (c, *t)).collect();
        v.sort();
        v.into_iter().map(|(_, t)| t).collect()
    };
    let block_gens: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| {
            let images = class_traces
                .iter()
                .map(|t| class_of[&t.iter().map(|&p| g.apply(p)).collect::<BTreeSet<usize>>()])
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<_>>()?;
    let pairs: Vec<(&Permutation, &Permutation)> = group.generators().iter().zip(&block_gens).collect();
    let class_flags: BTreeSet<(usize, usize)> = inc.flags().iter().map(|&(p, b)| (p, class_of[&traces[b]])).collect();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut flag_orbits = 0;
    for &f in &class_flags {
        if seen.contains(&f) {
            continue;
        }
        flag_orbits += 1;
        seen.insert(f);
        let mut queue = VecDeque::from([f]);
        while let Some((p, b)) = queue.pop_front() {
            for (g, gb) in &pairs {
                let next = (g.apply(p), gb.apply(b));
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    let point_orbit = crate::perm::orbit_under(group.generators(), 0);
    let block_transitive = inc.block_count() == 0 || crate::perm::orbit_under(&block_gens, 0).len() == class_of.len();
    Ok(DesignTransitivity {
        flag_orbits,
        point_transitive: inc.point_count() == 0 || point_orbit.len() == inc.point_count(),
        block_transitive,
    })
}

/// `D(Γ)`: points are vertices, block `n` is the neighbourhood `Γ(n)`.
pub fn design_from_graph(graph: &Graph, group: &GroupTable) -> Result<(IncidenceStructure, Polarity)> {
    let report = verify_action(graph, group)?;
    let isolated = (0..graph.vertex_count()).any(|v| graph.degree(v) == 0);
    if !report.is_symmetric() || isolated {
        return Err(Error::NotSymmetric);
    }
    let n = graph.vertex_count();
    let flags: Vec<(usize, usize)> = (0..n)
        .flat_map(|b| graph.neighbors(b).iter().map(move |&p| (p, b)))
        .collect();
    let inc = IncidenceStructure::new(
        graph.labels().to_vec(),
        graph.labels().iter().map(|l| format!("N({l})")).collect(),
        flags,
    )?;
    let pol = Polarity::from_point_map((0..n).collect())?;
    Ok((inc, pol))
}

/// `Γ(D, ρ)`: the graph on points with `p → q` iff `q` is incident with `ρ_P(p)`.
pub fn graph_from_design(inc: &IncidenceStructure, group: &GroupTable, pol: &Polarity) -> Result<Graph> {
    pol.validate(inc, group)?;
    for p in 0..inc.point_count() {
        if inc.is_incident(p, pol.point_map[p]) {
            return Err(Error::DegenerateDesign(p + 1));
        }
    }
    let arcs = inc.flags().iter().map(|&(q, b)| (pol.block_map[b], q));
    Graph::from_arcs(inc.point_labels.clone(), arcs.collect::<Vec<_>>())
}

/// Every polarity of a flag-transitive design commuting with `group`.
///
/// A polarity commuting with a point-transitive group is fixed by the image
/// of point 0, so each block is tried as that image and extended
/// equivariantly.
pub fn find_polarities(inc: &IncidenceStructure, group: &GroupTable) -> Result<Vec<Polarity>> {
    let t = design_transitivity(inc, group)?;
    if !t.flag_transitive() || !t.point_transitive || !t.block_transitive {
        return Err(Error::NotFlagTransitive);
    }
    let v = inc.point_count();
    if v != inc.block_count() || v == 0 {
        return Ok(Vec::new());
    }
    let block_images: Vec<Permutation> = group
        .elements()
        .iter()
        .map(|g| inc.block_permutation(g).expect("checked by design_transitivity"))
        .collect();
    let mut out = Vec::new();
    'seed: for beta in 0..v {
        let mut map = vec![usize::MAX; v];
        for (g, gb) in group.elements().iter().zip(&block_images) {
            let (p, b) = (g.apply(0), gb.apply(beta));
            if map[p] == usize::MAX {
                map[p] = b;
            } else if map[p] != b {
                continue 'seed;
            }
        }
        let Ok(pol) = Polarity::from_point_map(map) else {
            continue;
        };
        if pol.validate(inc, group).is_ok() {
            out.push(pol);
        }
    }
    Ok(out)
}
