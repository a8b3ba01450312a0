use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::perm::{is_transitive, GroupTable, Permutation};

/// Largest domain for which every block system is enumerated.
pub const DEFAULT_BLOCK_DOMAIN_LIMIT: usize = 4096;

/// A partition of `{0..n}` into blocks. Blocks are kept sorted and ordered by least point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockSystem {
    domain_size: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    pub fn new(domain_size: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        let mut block_of = vec![usize::MAX; domain_size];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidInput("empty block".into()));
            }
            for &p in b {
                if p >= domain_size {
                    return Err(Error::PointOutOfRange {
                        point: p + 1,
                        degree: domain_size,
                    });
                }
                if block_of[p] != usize::MAX {
                    return Err(Error::RepeatedPoint(p + 1));
                }
                block_of[p] = i;
            }
        }
        if let Some(p) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidInput(format!(
                "point {} is not covered by any block",
                p + 1
            )));
        }
        Ok(BlockSystem {
            domain_size,
            blocks,
            block_of,
        })
    }

    pub fn singletons(n: usize) -> Self {
        BlockSystem::new(n, (0..n).map(|p| vec![p]).collect()).unwrap()
    }

    pub fn whole(n: usize) -> Self {
        BlockSystem::new(n, vec![(0..n).collect()]).unwrap()
    }

    /// The system `{Δ^g : g ∈ G}` generated by one block.
    pub fn from_block(group: &GroupTable, block: &BTreeSet<usize>) -> Result<Self> {
        let start: Vec<usize> = block.iter().copied().collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(start.clone());
        let mut stack = vec![start];
        while let Some(b) = stack.pop() {
            for g in group.generators() {
                let mut img: Vec<usize> = b.iter().map(|&p| g.apply(p)).collect();
                img.sort_unstable();
                if seen.insert(img.clone()) {
                    stack.push(img);
                }
            }
        }
        let system = BlockSystem::new(group.degree(), seen.into_iter().collect()).map_err(|_| Error::NotInvariant)?;
        Ok(system)
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.block_of[point]
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() <= 1 || self.blocks.len() == self.domain_size
    }

    /// Block index `π(B^g)` for each block `B`, if `g` permutes the blocks.
    pub fn block_permutation(&self, g: &Permutation) -> Option<Permutation> {
        let mut images = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let target = self.block_of[g.apply(b[0])];
            if b.iter().any(|&p| self.block_of[g.apply(p)] != target) {
                return None;
            }
            images.push(target);
        }
        Permutation::from_images(images).ok()
    }

    pub fn is_invariant(&self, group: &GroupTable) -> bool {
        group.degree() == self.domain_size && group.generators().iter().all(|g| self.block_permutation(g).is_some())
    }

    /// Permutation group induced on the blocks.
    pub fn induced_group(&self, group: &GroupTable) -> Result<GroupTable> {
        let gens = group
            .generators()
            .iter()
            .map(|g| self.block_permutation(g).ok_or(Error::NotInvariant))
            .collect::<Result<Vec<_>>>()?;
        GroupTable::generate(self.len(), gens)
    }

    /// One block per line, points 1-based and sorted.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for b in &self.blocks {
            let pts: Vec<String> = b.iter().map(|p| (p + 1).to_string()).collect();
            s.push_str(&pts.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str, domain_size: usize) -> Result<Self> {
        let mut blocks = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut b = Vec::new();
            for tok in line.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let p: usize = tok
                    .parse()
                    .map_err(|_| Error::SyntaxError(format!("bad point {tok:?}")))?;
                if p == 0 || p > domain_size {
                    return Err(Error::PointOutOfRange {
                        point: p,
                        degree: domain_size,
                    });
                }
                b.push(p - 1);
            }
            blocks.push(b);
        }
        BlockSystem::new(domain_size, blocks)
    }
}

/// Smallest block of imprimitivity containing both seed points.
///
/// Union-find closure: merge the seeds, and whenever two points are merged
/// also merge their images under every generator. The class of the first
/// seed is the minimal block; the whole domain means the pair lies in no
/// proper block.
pub fn minimal_block(group: &GroupTable, seed: (usize, usize)) -> Result<BTreeSet<usize>> {
    let n = group.degree();
    if seed.0 >= n || seed.1 >= n {
        return Err(Error::PointOutOfRange {
            point: seed.0.max(seed.1) + 1,
            degree: n,
        });
    }
    if seed.0 == seed.1 {
        return Err(Error::DegenerateSeed);
    }
    if !is_transitive(group, n) {
        return Err(Error::NotTransitive);
    }
    Ok(block_closure(group, seed.0, &[seed.1]))
}

/// Class of `base` in the finest invariant partition merging `base` with every point of `others`.
fn block_closure(group: &GroupTable, base: usize, others: &[usize]) -> BTreeSet<usize> {
    let n = group.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue: Vec<(usize, usize)> = others.iter().map(|&o| (base, o)).collect();
    while let Some((a, b)) = queue.pop() {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra == rb {
            continue;
        }
        parent[rb] = ra;
        for g in group.generators() {
            queue.push((g.apply(a), g.apply(b)));
        }
    }
    let root = find(&mut parent, base);
    (0..n).filter(|&p| find(&mut parent, p) == root).collect()
}

pub fn all_block_systems(group: &GroupTable) -> Result<Vec<BlockSystem>> {
    all_block_systems_with_limit(group, DEFAULT_BLOCK_DOMAIN_LIMIT)
}

/// Every G-invariant partition of a transitive domain, ordered by block size.
pub fn all_block_systems_with_limit(group: &GroupTable, limit: usize) -> Result<Vec<BlockSystem>> {
    let n = group.degree();
    if n > limit {
        return Err(Error::DomainTooLarge { size: n, limit });
    }
    if !is_transitive(group, n) {
        return Err(Error::NotTransitive);
    }
    let mut systems: Vec<BlockSystem> = vec![BlockSystem::singletons(n)];
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::new();
    seen.insert(systems[0].blocks.clone());
    // every block containing 0 is a union of minimal blocks for pairs (0, β),
    // so close joins of minimal blocks until nothing new appears
    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for beta in 1..n {
        found.insert(minimal_block(group, (0, beta))?);
    }
    loop {
        let cur: Vec<BTreeSet<usize>> = found.iter().cloned().collect();
        let before = found.len();
        for (i, a) in cur.iter().enumerate() {
            for b in &cur[i + 1..] {
                if a.is_subset(b) || b.is_subset(a) {
                    continue;
                }
                let union: Vec<usize> = a.union(b).copied().filter(|&p| p != 0).collect();
                found.insert(block_closure(group, 0, &union));
            }
        }
        if found.len() == before {
            break;
        }
    }
    for block in found {
        let sys = BlockSystem::from_block(group, &block)?;
        if seen.insert(sys.blocks.clone()) {
            systems.push(sys);
        }
    }
    systems.sort_by_key(|s| (std::cmp::Reverse(s.len()), s.blocks.clone()));
    Ok(systems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> GroupTable {
        GroupTable::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap()
    }

    /// Brute-force oracle: all set partitions of the domain that every
    /// generator maps onto themselves.
    fn invariant_partitions(group: &GroupTable) -> usize {
        fn partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for mut p in partitions(n - 1) {
                for i in 0..p.len() {
                    let mut q = p.clone();
                    q[i].push(n - 1);
                    out.push(q);
                }
                p.push(vec![n - 1]);
                out.push(p);
            }
            out
        }
        partitions(group.degree())
            .into_iter()
            .filter(|p| {
                let bs = BlockSystem::new(group.degree(), p.clone()).unwrap();
                bs.is_invariant(group)
            })
            .count()
    }

    #[test]
    fn minimal_blocks() {
        assert_eq!(minimal_block(&d4(), (0, 2)).unwrap(), [0, 2].into_iter().collect());
        let s4 = GroupTable::from_cycles(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        assert_eq!(minimal_block(&s4, (0, 1)).unwrap(), (0..4).collect());
        assert_eq!(minimal_block(&s4, (1, 1)), Err(Error::DegenerateSeed));
        let intrans = GroupTable::from_cycles(4, &["(1 2)"]).unwrap();
        assert_eq!(minimal_block(&intrans, (0, 1)), Err(Error::NotTransitive));
    }

    #[test]
    fn block_system_counts() {
        let systems = all_block_systems(&d4()).unwrap();
        assert_eq!(systems.len(), 3);
        assert_eq!(systems[1].blocks(), &[vec![0, 2], vec![1, 3]]);
        let s4 = GroupTable::from_cycles(4, &["(1 2)", "(1 2 3 4)"]).unwrap();
        assert_eq!(all_block_systems(&s4).unwrap().len(), 2);
        let z6 = GroupTable::from_cycles(6, &["(1 2 3 4 5 6)"]).unwrap();
        assert_eq!(all_block_systems(&z6).unwrap().len(), 4);
        for g in [d4(), s4, z6] {
            assert_eq!(all_block_systems(&g).unwrap().len(), invariant_partitions(&g));
        }
    }

    #[test]
    fn domain_limit() {
        let z6 = GroupTable::from_cycles(6, &["(1 2 3 4 5 6)"]).unwrap();
        assert_eq!(
            all_block_systems_with_limit(&z6, 5).unwrap_err(),
            Error::DomainTooLarge { size: 6, limit: 5 }
        );
    }

    #[test]
    fn text_round_trip() {
        let bs = BlockSystem::new(4, vec![vec![1, 3], vec![0, 2]]).unwrap();
        assert_eq!(bs.to_text(), "1 3\n2 4\n");
        assert_eq!(BlockSystem::parse(&bs.to_text(), 4).unwrap(), bs);
        assert!(BlockSystem::parse("1 2\n2 3 4\n", 4).is_err());
    }
}
