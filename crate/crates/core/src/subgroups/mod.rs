//! Cosets, cores, double cosets, blocks of imprimitivity and the
//! correspondence between overgroups of a point stabilizer and blocks.

mod blocks;
mod lattice;

pub use blocks::{
    all_block_systems, all_block_systems_with_limit, minimal_block, BlockSystem, DEFAULT_BLOCK_DOMAIN_LIMIT,
};
pub use lattice::{
    intermediate_subgroups, subgroup_block_lattice, subgroup_block_lattice_with_cap, LatticePair, DEFAULT_CLOSURE_CAP,
};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::{GroupTable, Permutation, PointAction};

/// A subgroup is stored as its own enumerated group on the parent's domain.
pub type Subgroup = GroupTable;

fn check_subgroup(group: &GroupTable, sub: &Subgroup) -> Result<()> {
    if sub.is_subgroup_of(group) {
        Ok(())
    } else {
        Err(Error::NotASubgroup)
    }
}

/// The right cosets `Hx` of a subgroup with the action `(Hx)^g = Hxg`.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    /// Element indices (into the parent) of each coset, ascending.
    pub cosets: Vec<Vec<usize>>,
    /// Least element index of each coset.
    pub representatives: Vec<usize>,
    /// Coset containing each parent element.
    pub coset_of: Vec<usize>,
    /// `action.images[g][c]` is the coset `c` multiplied on the right by element `g`.
    pub action: PointAction,
}

impl CosetSpace {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Permutation of the cosets induced by `g`.
    pub fn permutation_of(&self, group: &GroupTable, g: &Permutation) -> Permutation {
        let gi = group.index_of(g).expect("element of the parent group");
        Permutation::from_images(self.action.images[gi].clone()).expect("coset action is a bijection")
    }

    /// Permutation group induced on the cosets, generated by the images of the parent's generators.
    pub fn induced_group(&self, group: &GroupTable) -> GroupTable {
        let gens: Vec<Permutation> = group
            .generators()
            .iter()
            .map(|g| self.permutation_of(group, g))
            .collect();
        GroupTable::generate(self.len(), gens).expect("induced group is no larger than the parent")
    }

    /// Index of the coset `Hx` for the parent element `x`.
    pub fn coset_index(&self, group: &GroupTable, x: &Permutation) -> usize {
        self.coset_of[group.index_of(x).expect("element of the parent group")]
    }

    /// Label `H` for the subgroup itself, `H·x` otherwise.
    pub fn label(&self, group: &GroupTable, c: usize) -> String {
        let rep = group.element(self.representatives[c]);
        if rep.is_identity() {
            "H".to_string()
        } else {
            format!("H{}", rep.to_cycle_string())
        }
    }
}

pub fn right_cosets(group: &GroupTable, sub: &Subgroup) -> Result<CosetSpace> {
    check_subgroup(group, sub)?;
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = cosets.len();
        let xe = group.element(x);
        let mut members: Vec<usize> = sub
            .elements()
            .iter()
            .map(|h| group.index_of(&h.then(xe)).unwrap())
            .collect();
        members.sort_unstable();
        for &m in &members {
            coset_of[m] = id;
        }
        cosets.push(members);
    }
    let representatives: Vec<usize> = cosets.iter().map(|c| c[0]).collect();
    let images = (0..n)
        .map(|g| {
            representatives
                .iter()
                .map(|&r| coset_of[group.mul(r, g)])
                .collect::<Vec<usize>>()
        })
        .collect();
    Ok(CosetSpace {
        action: PointAction {
            size: cosets.len(),
            images,
        },
        cosets,
        representatives,
        coset_of,
    })
}

/// `⋂_{x ∈ G} x⁻¹Hx`
pub fn core(group: &GroupTable, sub: &Subgroup) -> Result<Subgroup> {
    check_subgroup(group, sub)?;
    let mut members: BTreeSet<Permutation> = sub.elements().iter().cloned().collect();
    for x in group.elements() {
        let conj: BTreeSet<Permutation> = sub.elements().iter().map(|h| h.conjugate_by(x)).collect();
        members = members.intersection(&conj).cloned().collect();
    }
    Ok(sub.filter_subgroup(|h| members.contains(h)))
}

/// Partition of a group into double cosets `HxH`.
#[derive(Debug, Clone)]
pub struct DoubleCosetDecomposition {
    /// Element indices of each class, ascending. Classes are ordered by representative.
    pub classes: Vec<Vec<usize>>,
    /// Least element index of each class.
    pub representatives: Vec<usize>,
    /// Whether the class contains an element squaring to the identity.
    pub has_involution: Vec<bool>,
    pub class_of: Vec<usize>,
}

pub fn double_cosets(group: &GroupTable, sub: &Subgroup) -> Result<DoubleCosetDecomposition> {
    check_subgroup(group, sub)?;
    let n = group.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let xe = group.element(x);
        let mut members: BTreeSet<usize> = BTreeSet::new();
        for h1 in sub.elements() {
            let hx = h1.then(xe);
            for h2 in sub.elements() {
                members.insert(group.index_of(&hx.then(h2)).unwrap());
            }
        }
        for &m in &members {
            class_of[m] = id;
        }
        classes.push(members.into_iter().collect::<Vec<_>>());
    }
    let representatives = classes.iter().map(|c| c[0]).collect();
    let has_involution = classes
        .iter()
        .map(|c| {
            c.iter().any(|&i| {
                let e = group.element(i);
                e.then(e).is_identity()
            })
        })
        .collect();
    Ok(DoubleCosetDecomposition {
        classes,
        representatives,
        has_involution,
        class_of,
    })
}

/// `{x ∈ G : Δ^x = Δ}`
pub fn setwise_stabilizer(group: &GroupTable, subset: &BTreeSet<usize>) -> Subgroup {
    group.filter_subgroup(|g| subset.iter().all(|&p| subset.contains(&g.apply(p))))
}
