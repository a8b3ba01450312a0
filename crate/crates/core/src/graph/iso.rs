use std::collections::{BTreeMap, VecDeque};

use super::Graph;

/// Stable colouring of the disjoint union of `g1` and `g2` by iterated
/// degree/neighbourhood refinement. Colours are comparable across the two graphs.
fn refine(g1: &Graph, g2: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n1 = g1.vertex_count();
    let n = n1 + g2.vertex_count();
    let nbrs = |v: usize| -> Vec<usize> {
        if v < n1 {
            g1.neighbors(v).to_vec()
        } else {
            g2.neighbors(v - n1).iter().map(|w| w + n1).collect()
        }
    };
    let adjacency: Vec<Vec<usize>> = (0..n).map(nbrs).collect();
    let mut colors: Vec<usize> = adjacency.iter().map(Vec::len).collect();
    let mut classes = colors.iter().collect::<std::collections::BTreeSet<_>>().len();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<usize> = adjacency[v].iter().map(|&w| colors[w]).collect();
                ns.sort_unstable();
                (colors[v], ns)
            })
            .collect();
        let mut ids: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in &signatures {
            let next = ids.len();
            ids.entry(s).or_insert(next);
        }
        // relabel by sorted signature so colours do not depend on vertex order
        let mut sorted: Vec<&(usize, Vec<usize>)> = ids.keys().copied().collect();
        sorted.sort();
        let rank: BTreeMap<&(usize, Vec<usize>), usize> = sorted.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        colors = signatures.iter().map(|s| rank[s]).collect();
        let new_classes = rank.len();
        if new_classes == classes {
            break;
        }
        classes = new_classes;
    }
    let c2 = colors.split_off(n1);
    (colors, c2)
}

/// Searches for an adjacency-preserving bijection `g1 → g2`.
///
/// Refinement first separates vertices by iterated neighbourhood colour, then a
/// backtracking search extends a partial map in breadth-first order of `g1`,
/// only trying targets of the same colour that agree on adjacency with every
/// vertex already mapped. The result is deterministic.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.arc_count() != g2.arc_count() || g1.degree_sequence() != g2.degree_sequence() {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let (c1, c2) = refine(g1, g2);
    let mut hist1: BTreeMap<usize, usize> = BTreeMap::new();
    let mut hist2: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &c1 {
        *hist1.entry(c).or_default() += 1;
    }
    for &c in &c2 {
        *hist2.entry(c).or_default() += 1;
    }
    if hist1 != hist2 {
        return None;
    }

    // order: rarest colour first within each component, then breadth-first
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (hist1[&c1[v]], v));
    for s in starts {
        if placed[s] {
            continue;
        }
        placed[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let mut next: Vec<usize> = g1.neighbors(u).iter().copied().filter(|&w| !placed[w]).collect();
            next.sort_by_key(|&w| (hist1[&c1[w]], w));
            for w in next {
                placed[w] = true;
                queue.push_back(w);
            }
        }
    }

    let mut by_color: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in c2.iter().enumerate() {
        by_color.entry(c).or_default().push(v);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(g1, g2, &order, 0, &c1, &c2, &by_color, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    g1: &Graph,
    g2: &Graph,
    order: &[usize],
    depth: usize,
    c1: &[usize],
    c2: &[usize],
    by_color: &BTreeMap<usize, Vec<usize>>,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let u = order[depth];
    // a mapped neighbour narrows the candidates to its image's neighbourhood
    let anchor = g1.neighbors(u).iter().find(|&&w| map[w] != usize::MAX).map(|&w| map[w]);
    let pool: Vec<usize> = match anchor {
        Some(a) => g2.neighbors(a).iter().copied().filter(|&x| c1[u] == c2[x]).collect(),
        None => by_color[&c1[u]].clone(),
    };
    'cand: for x in pool {
        if used[x] {
            continue;
        }
        for &w in &order[..depth] {
            if g1.has_arc(u, w) != g2.has_arc(x, map[w]) {
                continue 'cand;
            }
        }
        map[u] = x;
        used[x] = true;
        if search(g1, g2, order, depth + 1, c1, c2, by_color, map, used) {
            return true;
        }
        map[u] = usize::MAX;
        used[x] = false;
    }
    false
}

/// Whether `map` is an isomorphism `g1 → g2`.
pub fn is_isomorphism(g1: &Graph, g2: &Graph, map: &[usize]) -> bool {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || map.len() != n || g1.arc_count() != g2.arc_count() {
        return false;
    }
    let mut hit = vec![false; n];
    for &x in map {
        if x >= n || hit[x] {
            return false;
        }
        hit[x] = true;
    }
    g1.arcs().iter().all(|&(u, v)| g2.has_arc(map[u], map[v]))
}
