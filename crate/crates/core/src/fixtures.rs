//! Small named groups and graphs used throughout the tests and the CLI fixtures.

use crate::graph::Graph;
use crate::perm::{GroupTable, Permutation};

fn group(degree: usize, gens: &[&str]) -> GroupTable {
    GroupTable::from_cycles(degree, gens).expect("fixture generators are valid")
}

pub fn s4() -> GroupTable {
    group(4, &["(1 2)", "(1 2 3 4)"])
}

pub fn s5() -> GroupTable {
    group(5, &["(1 2)", "(1 2 3 4 5)"])
}

/// Dihedral group of order 8 on the square.
pub fn d4() -> GroupTable {
    group(4, &["(1 2 3 4)", "(1 3)"])
}

/// Dihedral group of order 12 on the hexagon.
pub fn d6() -> GroupTable {
    group(6, &["(1 2 3 4 5 6)", "(2 6)(3 5)"])
}

pub fn z2() -> GroupTable {
    group(2, &["(1 2)"])
}

pub fn z6() -> GroupTable {
    group(6, &["(1 2 3 4 5 6)"])
}

/// Automorphism group of the octahedron (order 48); antipodal pairs are {1,2}, {3,4}, {5,6}.
pub fn octahedron_aut() -> GroupTable {
    group(6, &["(1 2)", "(1 3)(2 4)", "(1 3 5)(2 4 6)"])
}

/// The 2-subsets of {0..4} in lexicographic order and `S5` acting on them.
pub fn s5_on_pairs() -> (GroupTable, Vec<[usize; 2]>) {
    let mut pairs = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            pairs.push([i, j]);
        }
    }
    let gens = s5()
        .generators()
        .iter()
        .map(|g| {
            let images = pairs
                .iter()
                .map(|&[a, b]| {
                    let (x, y) = (g.apply(a), g.apply(b));
                    let key = [x.min(y), x.max(y)];
                    pairs.iter().position(|q| *q == key).unwrap()
                })
                .collect();
            Permutation::from_images(images).unwrap()
        })
        .collect();
    (GroupTable::generate(10, gens).unwrap(), pairs)
}

pub fn k4() -> Graph {
    Graph::complete(4)
}

pub fn c6() -> Graph {
    Graph::cycle(6)
}

/// Outer 5-cycle `0..5`, spokes `i — i+5`, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// Kneser graph on the 2-subsets, vertex order matching [`s5_on_pairs`].
pub fn petersen_on_pairs() -> Graph {
    let (_, pairs) = s5_on_pairs();
    let mut edges = Vec::new();
    for i in 0..10 {
        for j in i + 1..10 {
            if pairs[i].iter().all(|x| !pairs[j].contains(x)) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// The 3-cube on bit strings `0..8`.
pub fn q3() -> Graph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in 0..3 {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::from_edges(8, &edges).unwrap()
}

/// `K6` minus the antipodal matching {1,2}, {3,4}, {5,6} (0-based pairs `(0,1)`, `(2,3)`, `(4,5)`).
pub fn octahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            if j != (i ^ 1) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(6, &edges).unwrap()
}
