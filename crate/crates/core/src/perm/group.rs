use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::permutation::Permutation;
use crate::error::{Error, Result};

/// Default ceiling on the number of elements a closure may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

/// Input form of a permutation group: a degree and a nonempty generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupSpec {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(GroupSpec { degree, generators })
    }

    /// Parses cycle-notation generators (1-based) for a group of the given degree.
    pub fn from_cycles(degree: usize, generators: &[&str]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse_cycles(s, degree))
            .collect::<Result<Vec<_>>>()?;
        GroupSpec::new(degree, gens)
    }
}

/// A fully enumerated finite permutation group.
///
/// Elements are sorted lexicographically by image sequence, which puts the
/// identity at index 0.
#[derive(Clone)]
pub struct GroupTable {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupTable")
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for GroupTable {}

/// Breadth-first closure of `generators` under right multiplication.
fn closure(degree: usize, generators: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = x.then(g);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

/// Enumerates the group generated by `spec`, failing once more than `cap` elements appear.
pub fn enumerate_group(spec: &GroupSpec, cap: usize) -> Result<GroupTable> {
    let elements = closure(spec.degree, &spec.generators, cap)?;
    Ok(GroupTable::from_sorted(spec.degree, spec.generators.clone(), elements))
}

impl GroupTable {
    fn from_sorted(degree: usize, generators: Vec<Permutation>, elements: Vec<Permutation>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        GroupTable {
            degree,
            generators,
            elements,
            index,
        }
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        GroupTable::from_sorted(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    /// Convenience wrapper around [`enumerate_group`] with the default cap.
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        enumerate_group(&GroupSpec::new(degree, generators)?, DEFAULT_ELEMENT_CAP)
    }

    /// Group generated by 1-based cycle strings.
    pub fn from_cycles(degree: usize, generators: &[&str]) -> Result<Self> {
        enumerate_group(&GroupSpec::from_cycles(degree, generators)?, DEFAULT_ELEMENT_CAP)
    }

    /// Builds a group from a complete element list, checking closure.
    /// A small generating set is chosen greedily.
    pub fn from_elements(degree: usize, elements: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let mut elements: Vec<Permutation> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        if elements.first().is_none_or(|e| !e.is_identity()) {
            return Err(Error::NotASubgroup);
        }
        if elements.iter().any(|e| e.degree() != degree) {
            return Err(Error::NotASubgroup);
        }
        let set: HashSet<&Permutation> = elements.iter().collect();
        // closure under products suffices for a finite set containing the identity
        for a in &elements {
            for b in &elements {
                if !set.contains(&a.then(b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        let generators = greedy_generators(degree, &elements);
        Ok(GroupTable::from_sorted(degree, generators, elements))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Index of the product `elements[a] * elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].then(&self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn is_subgroup_of(&self, parent: &GroupTable) -> bool {
        self.degree == parent.degree && self.elements.iter().all(|e| parent.contains(e))
    }

    pub fn is_normal_in(&self, parent: &GroupTable) -> bool {
        self.is_subgroup_of(parent)
            && parent
                .generators()
                .iter()
                .all(|g| self.generators.iter().all(|h| self.contains(&h.conjugate_by(g))))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Subgroup generated by `gens`; every generator must lie in `self`.
    pub fn subgroup_generated(&self, gens: &[Permutation]) -> Result<GroupTable> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(Error::NotASubgroup);
        }
        let elements = closure(self.degree, gens, self.order())?;
        Ok(GroupTable::from_sorted(self.degree, gens.to_vec(), elements))
    }

    /// Elements satisfying `keep`. The predicate must cut out a subgroup.
    pub fn filter_subgroup(&self, keep: impl Fn(&Permutation) -> bool) -> GroupTable {
        let elements: Vec<Permutation> = self.elements.iter().filter(|e| keep(e)).cloned().collect();
        let generators = greedy_generators(self.degree, &elements);
        GroupTable::from_sorted(self.degree, generators, elements)
    }

    /// Intersection with another group on the same domain.
    pub fn intersection(&self, other: &GroupTable) -> GroupTable {
        self.filter_subgroup(|e| other.contains(e))
    }

    /// `g⁻¹ self g`
    pub fn conjugate(&self, g: &Permutation) -> GroupTable {
        let elements: Vec<Permutation> = self.elements.iter().map(|e| e.conjugate_by(g)).collect();
        let mut sorted = elements;
        sorted.sort();
        let gens = self.generators.iter().map(|e| e.conjugate_by(g)).collect();
        GroupTable::from_sorted(self.degree, gens, sorted)
    }

    /// Permutation group generated by the images of `self`'s generators under
    /// some action; `images[i]` is the image of generator `i`.
    pub fn induced(images: Vec<Permutation>, degree: usize) -> Result<GroupTable> {
        GroupTable::generate(degree, images)
    }
}

fn greedy_generators(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current: HashSet<Permutation> = HashSet::new();
    current.insert(Permutation::identity(degree));
    for e in elements {
        if current.contains(e) {
            continue;
        }
        gens.push(e.clone());
        // cap is the size of the surrounding group, closure cannot exceed it
        let cl = closure(degree, &gens, elements.len().max(1)).unwrap_or_default();
        current = cl.into_iter().collect();
        if current.len() == elements.len() {
            break;
        }
    }
    gens
}

/// Orbit of `point` under the group.
pub fn orbit(group: &GroupTable, point: usize) -> BTreeSet<usize> {
    orbit_under(group.generators(), point)
}

/// Orbit of `point` under the group generated by `gens`.
pub fn orbit_under(gens: &[Permutation], point: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    seen.insert(point);
    let mut stack = vec![point];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

/// All orbits on the domain, ordered by least element.
pub fn orbits(group: &GroupTable) -> Vec<BTreeSet<usize>> {
    let mut assigned = vec![false; group.degree()];
    let mut out = Vec::new();
    for p in 0..group.degree() {
        if assigned[p] {
            continue;
        }
        let o = orbit(group, p);
        for &q in &o {
            assigned[q] = true;
        }
        out.push(o);
    }
    out
}

/// Point stabilizer `G_α`.
pub fn stabilizer(group: &GroupTable, point: usize) -> GroupTable {
    group.filter_subgroup(|g| g.apply(point) == point)
}

pub fn is_transitive(group: &GroupTable, domain_size: usize) -> bool {
    group.degree() == domain_size && (domain_size == 0 || orbit(group, 0).len() == domain_size)
}

/// An action of an enumerated group on `size` points, one image row per group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointAction {
    pub size: usize,
    pub images: Vec<Vec<usize>>,
}

impl PointAction {
    /// The group's own action on its domain.
    pub fn natural(group: &GroupTable) -> Self {
        PointAction {
            size: group.degree(),
            images: group.elements().iter().map(|e| e.images().to_vec()).collect(),
        }
    }

    /// Action given by an image function per element.
    pub fn from_fn(group: &GroupTable, size: usize, image: impl Fn(&Permutation) -> Vec<usize>) -> Self {
        PointAction {
            size,
            images: group.elements().iter().map(image).collect(),
        }
    }

    pub fn image(&self, element: usize, point: usize) -> usize {
        self.images[element][point]
    }

    pub fn orbit(&self, point: usize) -> BTreeSet<usize> {
        (0..self.images.len()).map(|g| self.images[g][point]).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.size == 0 || self.orbit(0).len() == self.size
    }

    /// Indices of the group elements fixing `point`.
    pub fn stabilizer_indices(&self, point: usize) -> BTreeSet<usize> {
        (0..self.images.len())
            .filter(|&g| self.images[g][point] == point)
            .collect()
    }

    /// Indices of elements acting trivially.
    pub fn kernel_indices(&self) -> BTreeSet<usize> {
        (0..self.images.len())
            .filter(|&g| self.images[g].iter().enumerate().all(|(i, &j)| i == j))
            .collect()
    }
}

/// Searches for a bijection `η` from the points of `a1` to those of `a2` with
/// `η(ω^g) = η(ω)^g` for every element `g`, i.e. an equivalence under the
/// identity automorphism of the group.
pub fn permutation_equivalent(group: &GroupTable, a1: &PointAction, a2: &PointAction) -> Result<Option<Vec<usize>>> {
    if a1.images.len() != group.order() || a2.images.len() != group.order() {
        return Err(Error::InvalidInput(
            "action tables must have one row per group element".into(),
        ));
    }
    if !a1.is_transitive() || !a2.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if a1.size != a2.size {
        return Ok(None);
    }
    if a1.size == 0 {
        return Ok(Some(Vec::new()));
    }
    let stab = a1.stabilizer_indices(0);
    for beta in 0..a2.size {
        if a2.stabilizer_indices(beta) != stab {
            continue;
        }
        if let Some(eta) = extend_equivariantly(a1, a2, beta) {
            return Ok(Some(eta));
        }
    }
    Ok(None)
}

/// Equivalence up to an inner automorphism: returns `(c, η)` with
/// `η(ω^g) = η(ω)^(c⁻¹ g c)`.
pub fn permutation_equivalent_inner(
    group: &GroupTable,
    a1: &PointAction,
    a2: &PointAction,
) -> Result<Option<(Permutation, Vec<usize>)>> {
    for (ci, c) in group.elements().iter().enumerate() {
        let cinv = group.inv(ci);
        // twisted copy of a2: g acts as c⁻¹ g c
        let twisted = PointAction {
            size: a2.size,
            images: (0..group.order())
                .map(|g| a2.images[group.mul(group.mul(cinv, g), ci)].clone())
                .collect(),
        };
        if let Some(eta) = permutation_equivalent(group, a1, &twisted)? {
            return Ok(Some((c.clone(), eta)));
        }
    }
    Ok(None)
}

fn extend_equivariantly(a1: &PointAction, a2: &PointAction, beta: usize) -> Option<Vec<usize>> {
    let mut eta = vec![usize::MAX; a1.size];
    for g in 0..a1.images.len() {
        let w = a1.images[g][0];
        let target = a2.images[g][beta];
        if eta[w] == usize::MAX {
            eta[w] = target;
        } else if eta[w] != target {
            return None;
        }
    }
    let mut hit = vec![false; a2.size];
    for &t in &eta {
        if t == usize::MAX || hit[t] {
            return None;
        }
        hit[t] = true;
    }
    for g in 0..a1.images.len() {
        for w in 0..a1.size {
            if eta[a1.images[g][w]] != a2.images[g][eta[w]] {
                return None;
            }
        }
    }
    Some(eta)
}
