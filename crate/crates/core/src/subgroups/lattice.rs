use std::collections::{BTreeSet, HashSet};

use super::Subgroup;
use crate::error::{Error, Result};
use crate::perm::{is_transitive, orbit, stabilizer, GroupTable, Permutation};

/// Default ceiling on subgroup closures performed while enumerating overgroups.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// An overgroup `H` of a point stabilizer paired with its block `α^H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePair {
    pub subgroup: Subgroup,
    pub block: BTreeSet<usize>,
}

/// Every subgroup `K` with `lower ≤ K ≤ upper`, ordered by size then elements.
///
/// Grows subgroups one element at a time: each `K` found is extended by one
/// representative of every right coset of `K` in `upper`. Every intermediate
/// subgroup is reachable this way, so the enumeration is complete unless the
/// closure cap is hit.
pub fn intermediate_subgroups(lower: &Subgroup, upper: &GroupTable, cap: usize) -> Result<Vec<Subgroup>> {
    if !lower.is_subgroup_of(upper) {
        return Err(Error::NotASubgroup);
    }
    let mut found: Vec<Subgroup> = vec![lower.clone()];
    let mut keys: HashSet<Vec<Permutation>> = HashSet::new();
    keys.insert(lower.elements().to_vec());
    let mut closures = 0usize;
    let mut next = 0;
    while next < found.len() {
        let current = found[next].clone();
        next += 1;
        let mut covered: HashSet<&Permutation> = current.elements().iter().collect();
        for x in upper.elements() {
            if covered.contains(x) {
                continue;
            }
            // everything in the coset (current)·x generates the same overgroup
            for h in current.elements() {
                covered.insert(upper.element(upper.index_of(&h.then(x)).unwrap()));
            }
            closures += 1;
            if closures > cap {
                return Err(Error::SubgroupEnumerationCapExceeded {
                    closures: cap,
                    found: found.len(),
                });
            }
            let mut gens = current.generators().to_vec();
            gens.push(x.clone());
            let bigger = upper.subgroup_generated(&gens)?;
            if keys.insert(bigger.elements().to_vec()) {
                found.push(bigger);
            }
        }
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    Ok(found)
}

/// All `H` with `G_α ≤ H ≤ G`, each paired with the block `α^H`.
pub fn subgroup_block_lattice(group: &GroupTable, base_point: usize) -> Result<Vec<LatticePair>> {
    subgroup_block_lattice_with_cap(group, base_point, DEFAULT_CLOSURE_CAP)
}

pub fn subgroup_block_lattice_with_cap(group: &GroupTable, base_point: usize, cap: usize) -> Result<Vec<LatticePair>> {
    if base_point >= group.degree() {
        return Err(Error::PointOutOfRange {
            point: base_point + 1,
            degree: group.degree(),
        });
    }
    if !is_transitive(group, group.degree()) {
        return Err(Error::NotTransitive);
    }
    let stab = stabilizer(group, base_point);
    let subs = intermediate_subgroups(&stab, group, cap)?;
    Ok(subs
        .into_iter()
        .map(|h| {
            let block = if h.generators().is_empty() {
                [base_point].into_iter().collect()
            } else {
                orbit(&h, base_point)
            };
            LatticePair { subgroup: h, block }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroups::{minimal_block, setwise_stabilizer};

    fn d4() -> GroupTable {
        GroupTable::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap()
    }

    /// Oracle: every subset of G containing G_α that is closed under products.
    fn brute_force_overgroups(group: &GroupTable, base: usize) -> usize {
        let stab = stabilizer(group, base);
        let rest: Vec<&Permutation> = group.elements().iter().filter(|e| !stab.contains(e)).collect();
        assert!(rest.len() <= 20);
        let mut count = 0;
        for mask in 0u32..(1 << rest.len()) {
            let mut set: HashSet<Permutation> = stab.elements().iter().cloned().collect();
            for (i, e) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    set.insert((*e).clone());
                }
            }
            if set.iter().all(|a| set.iter().all(|b| set.contains(&a.then(b)))) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn d4_lattice() {
        let g = d4();
        let lat = subgroup_block_lattice(&g, 0).unwrap();
        assert_eq!(lat.len(), 3);
        assert_eq!(lat.len(), brute_force_overgroups(&g, 0));
        let orders: Vec<usize> = lat.iter().map(|p| p.subgroup.order()).collect();
        assert_eq!(orders, vec![2, 4, 8]);
        assert_eq!(lat[0].block, [0].into_iter().collect());
        assert_eq!(lat[1].block, [0, 2].into_iter().collect());
        assert_eq!(lat[2].block, (0..4).collect());
    }

    #[test]
    fn s4_lattice_is_trivial() {
        let g = GroupTable::from_cycles(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        let lat = subgroup_block_lattice(&g, 0).unwrap();
        assert_eq!(lat.len(), 2);
        assert_eq!(lat.len(), brute_force_overgroups(&g, 0));
    }

    #[test]
    fn one_point_domain() {
        let g = GroupTable::trivial(1);
        assert_eq!(subgroup_block_lattice(&g, 0).unwrap().len(), 1);
    }

    #[test]
    fn blocks_match_setwise_stabilizers() {
        let g = GroupTable::from_cycles(6, &["(1 2 3 4 5 6)", "(2 6)(3 5)"]).unwrap();
        for pair in subgroup_block_lattice(&g, 0).unwrap() {
            assert_eq!(setwise_stabilizer(&g, &pair.block), pair.subgroup);
            if pair.block.len() > 1 {
                let b = *pair.block.iter().nth(1).unwrap();
                assert!(minimal_block(&g, (0, b)).unwrap().is_subset(&pair.block));
            }
        }
    }

    #[test]
    fn cap_reports_partiality() {
        let g = d4();
        let err = subgroup_block_lattice_with_cap(&g, 0, 1).unwrap_err();
        assert!(matches!(err, Error::SubgroupEnumerationCapExceeded { .. }));
    }
}
