//! Acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sgk_core::constructions::*;
use sgk_core::coset_graphs::*;
use sgk_core::designs::*;
use sgk_core::fixtures::*;
use sgk_core::graph::{are_isomorphic, is_isomorphism, verify_action};
use sgk_core::perm::{orbit, orbits, stabilizer};
use sgk_core::quotients::{certify_quotient, induced_bipartite, quotient_as_coset_graph, quotient_unchecked};
use sgk_core::subgroups::*;
use sgk_core::{DirectedSubgraph, Error, Graph, GroupTable, Permutation};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn p(s: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(s, n).unwrap()
}

fn set(g: &GroupTable) -> BTreeSet<Permutation> {
    g.elements().iter().cloned().collect()
}

fn coset_graph_golden() -> Check {
    for (g, n) in [(s4(), 4), (s5(), 5)] {
        let h = stabilizer(&g, 0);
        let a = p("(1 2)", n);
        let s = symmetric_coset_graph(&g, &h, &a).unwrap();
        ensure!(are_isomorphic(s.graph(), &Graph::complete(n)).is_some(), "not K{n}");
        // |H| / |a⁻¹Ha ∩ H| counted by hand: the stabilizer of two points
        let meet = h.elements().iter().filter(|x| x.apply(1) == 1).count();
        ensure!(h.order() / meet == n - 1, "index law gives {}", h.order() / meet);
        ensure!(s.graph().valency() == Some(n - 1), "valency {:?}", s.graph().valency());
    }
    Ok(())
}

fn lorimer_dictionary() -> Check {
    let g = s4();
    let h = stabilizer(&g, 0);
    let dict = orbital_double_coset_map(&g, &h).unwrap();
    let mut sizes: Vec<usize> = dict.decomposition.classes.iter().map(|c| c.len()).collect();
    sizes.sort_unstable();
    ensure!(sizes == vec![6, 18], "class sizes {sizes:?}");
    let big = dict.decomposition.classes.iter().position(|c| c.len() == 18).unwrap();
    ensure!(
        dict.decomposition.has_involution[big],
        "size-18 class has no involution"
    );
    let (_, orb) = dict.pairs[big];
    ensure!(
        dict.orbitals[orb].pairs.iter().all(|&(x, y)| x != y),
        "size-18 class maps to the diagonal"
    );
    let independent_rank = orbits(&h).len();
    ensure!(
        dict.orbitals.len() == independent_rank,
        "{} orbitals, rank {independent_rank}",
        dict.orbitals.len()
    );
    Ok(())
}

fn lattice_correspondence() -> Check {
    for (g, expected) in [(d4(), 3), (s4(), 2)] {
        let pairs = subgroup_block_lattice(&g, 0).unwrap();
        ensure!(pairs.len() == expected, "{} pairs, expected {expected}", pairs.len());
        for a in &pairs {
            ensure!(
                orbit(&a.subgroup, 0) == a.block,
                "block is not the orbit of its subgroup"
            );
            for b in &pairs {
                let sub = set(&a.subgroup).is_subset(&set(&b.subgroup));
                ensure!(sub == a.block.is_subset(&b.block), "order not preserved");
                ensure!(sub || b.block.is_subset(&a.block), "pairs do not form a chain");
            }
        }
    }
    Ok(())
}

fn biggs_golden() -> Check {
    let n = z2();
    let t = (0..n.order()).find(|&i| !n.element(i).is_identity()).unwrap();
    let sd = SemidirectGroup::direct(n, s4());
    let cover = biggs_cover(&k4(), &s4(), &sd, &NChain::constant(&k4(), t)).unwrap();
    ensure!(are_isomorphic(&cover.graph, &q3()).is_some(), "cover is not the cube");
    ensure!(cover.graph.valency() == Some(3), "valency {:?}", cover.graph.valency());
    // vertex (n, v) is v·|N| + n
    let fibers: Vec<Vec<usize>> = (0..4).map(|v| vec![2 * v, 2 * v + 1]).collect();
    let part = BlockSystem::new(8, fibers).unwrap();
    ensure!(
        are_isomorphic(&quotient_unchecked(&cover.graph, &part), &k4()).is_some(),
        "fiber quotient is not K4"
    );
    for (b, c) in k4().edges() {
        let bip = induced_bipartite(&cover.graph, &part, b, c).unwrap();
        ensure!(
            bip.edge_count() == 2 && bip.degree_sequence().iter().all(|&d| d == 1),
            "fibers {b},{c} not a matching"
        );
    }
    ensure!(
        verify_action(&cover.graph, &cover.action).unwrap().is_symmetric(),
        "action not symmetric"
    );
    let two = biggs_cover(&k4(), &s4(), &sd, &NChain::constant(&k4(), 0)).unwrap();
    ensure!(
        are_isomorphic(&two.graph, &k4().disjoint_union(&k4())).is_some(),
        "identity chain is not 2K4"
    );
    Ok(())
}

fn three_arc_golden() -> Check {
    let orbits = three_arc_orbits(&k4(), &s4()).unwrap();
    let sizes: Vec<usize> = orbits.iter().map(|o| o.arcs.len()).collect();
    ensure!(sizes == vec![24, 24], "orbit sizes {sizes:?}");
    ensure!(orbits.iter().all(|o| o.self_paired), "an orbit is not self-paired");
    for o in &orbits {
        let xi = three_arc_graph(&k4(), &s4(), &o.arcs).unwrap();
        ensure!(
            xi.graph.vertex_count() == 12 && xi.graph.valency() == Some(2),
            "wrong shape"
        );
        ensure!(
            verify_action(&xi.graph, &xi.action).unwrap().is_symmetric(),
            "not symmetric"
        );
        let q = certify_quotient(&xi.graph, &xi.action, &xi.partition, false).unwrap();
        ensure!(are_isomorphic(&q.quotient, &k4()).is_some(), "quotient is not K4");
        let pe = check_condition_pe(&xi.graph, &xi.action, &xi.partition)
            .unwrap()
            .ok_or("no labelling bijection")?;
        let labels = full_labelling(&xi.action, &xi.partition, &pe).unwrap();
        ensure!(
            check_three_arc_necessity(&xi.graph, &xi.partition, &labels).unwrap(),
            "necessity fails"
        );
    }
    Ok(())
}

fn design_round_trip() -> Check {
    let (inc, _) = design_from_graph(&k4(), &s4()).unwrap();
    let d = validate_design(&inc).unwrap();
    ensure!((d.v, d.b, d.k, d.lambda, d.m) == (4, 4, 3, 3, 1), "parameters {d:?}");
    ensure!(d.v * d.lambda == d.b * d.k, "vλ ≠ bk");
    let (pet_group, _) = s5_on_pairs();
    for (graph, g) in [(k4(), s4()), (c6(), d6()), (petersen_on_pairs(), pet_group)] {
        let (inc, pol) = design_from_graph(&graph, &g).unwrap();
        let back = graph_from_design(&inc, &g, &pol).unwrap();
        ensure!(are_isomorphic(&back, &graph).is_some(), "round trip changed the graph");
    }
    Ok(())
}

fn subgraph_cube() -> Check {
    // the directed triangle on 1-based vertices 2, 3, 4
    let tri = DirectedSubgraph::from_arcs(&k4(), &[(1, 2), (2, 3), (3, 1)]).unwrap();
    let s = subgraph_graph(&k4(), &s4(), &tri, &p("(1 2)", 4)).unwrap();
    ensure!(s.graph.vertex_count() == 8, "{} vertices", s.graph.vertex_count());
    ensure!(are_isomorphic(&s.graph, &q3()).is_some(), "not the cube");
    Ok(())
}

fn quotient_dictionary() -> Check {
    let g = d6();
    let r = p("(2 6)(3 5)", 6);
    let h = g.subgroup_generated(std::slice::from_ref(&r)).unwrap();
    let k = g.subgroup_generated(&[r, p("(1 4)(2 5)(3 6)", 6)]).unwrap();
    let cq = quotient_as_coset_graph(&g, &h, &p("(1 2)(3 6)(4 5)", 6), &k).unwrap();
    ensure!(
        are_isomorphic(cq.original.graph(), &c6()).is_some(),
        "original is not C6"
    );
    ensure!(
        are_isomorphic(cq.quotient.graph(), &Graph::cycle(3)).is_some(),
        "quotient is not C3"
    );
    ensure!(
        is_isomorphism(&cq.certificate.quotient, cq.quotient.graph(), &cq.isomorphism),
        "block map"
    );
    ensure!(
        cq.certificate.symmetric && cq.certificate.homomorphism_law,
        "quotient not certified"
    );
    let degenerate = quotient_as_coset_graph(&g, &h, &p("(1 4)(2 5)(3 6)", 6), &k);
    ensure!(
        matches!(degenerate, Err(Error::DegenerateQuotient)),
        "a ∈ K accepted: {degenerate:?}"
    );
    Ok(())
}

fn invariant_suite() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let groups = [s4(), s5(), d4(), d6(), z6(), octahedron_aut()];
    let pairs = [
        (k4(), s4()),
        (c6(), d6()),
        (octahedron(), octahedron_aut()),
        (petersen_on_pairs(), s5_on_pairs().0),
    ];
    for round in 0..60 {
        let g = &groups[rng.gen_range(0..groups.len())];
        let gens: Vec<Permutation> = (0..rng.gen_range(1..3))
            .map(|_| g.element(rng.gen_range(0..g.order())).clone())
            .collect();
        let h = g.subgroup_generated(&gens).unwrap();
        let pt = rng.gen_range(0..g.degree());
        ensure!(
            orbit(&h, pt).len() * stabilizer(&h, pt).order() == h.order(),
            "orbit-stabilizer, round {round}"
        );

        let cs = right_cosets(g, &h).unwrap();
        let kernel: BTreeSet<Permutation> = g
            .elements()
            .iter()
            .filter(|x| cs.permutation_of(g, x).is_identity())
            .cloned()
            .collect();
        ensure!(set(&core(g, &h).unwrap()) == kernel, "core ≠ kernel, round {round}");

        let dc = double_cosets(g, &h).unwrap();
        for (class, &rep) in dc.classes.iter().zip(&dc.representatives) {
            let meet = h.intersection(&h.conjugate(g.element(rep))).order();
            ensure!(
                class.len() * meet == h.order() * h.order(),
                "double-coset size, round {round}"
            );
        }

        let (graph, pg) = &pairs[rng.gen_range(0..pairs.len())];
        let systems = all_block_systems(pg).unwrap();
        let sys = &systems[rng.gen_range(0..systems.len())];
        let q = certify_quotient(graph, pg, sys, true).unwrap();
        ensure!(q.homomorphism_law, "quotient homomorphism law, round {round}");
        if let Some(d) = q.design_params {
            ensure!(d.v * d.lambda == d.b * d.k, "vλ ≠ bk, round {round}");
        }

        let sd = SemidirectGroup::direct(z2(), pg.clone());
        ensure!(sd.verify().action_law, "Biggs action law, round {round}");
    }
    Ok(())
}

fn brute_force(g1: &Graph, g2: &Graph) -> bool {
    fn go(k: usize, a: &mut Vec<usize>, g1: &Graph, g2: &Graph) -> bool {
        if k == a.len() {
            return is_isomorphism(g1, g2, a);
        }
        for i in k..a.len() {
            a.swap(k, i);
            if go(k + 1, a, g1, g2) {
                return true;
            }
            a.swap(k, i);
        }
        false
    }
    g1.vertex_count() == g2.vertex_count()
        && g1.edge_count() == g2.edge_count()
        && go(0, &mut (0..g1.vertex_count()).collect(), g1, g2)
}

fn random_graph(rng: &mut StdRng, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn oracle_equivalence() -> Check {
    let mut rng = StdRng::seed_from_u64(11);
    let mut small: Vec<Graph> = [k4(), c6(), q3(), octahedron(), Graph::cycle(8), Graph::complete(6)]
        .into_iter()
        .filter(|g| g.vertex_count() <= 8)
        .collect();
    let relabelled: Vec<Graph> = small
        .iter()
        .map(|g| {
            let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
            for i in (1..perm.len()).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
            Graph::from_edges(g.vertex_count(), &edges).unwrap()
        })
        .collect();
    small.extend(relabelled);
    let randoms: Vec<Graph> = (0..100).map(|_| random_graph(&mut rng, 7)).collect();
    let mut disagreements = 0;
    for set in [&small, &randoms] {
        for (i, a) in set.iter().enumerate() {
            for b in &set[i..] {
                if are_isomorphic(a, b).is_some() != brute_force(a, b) {
                    disagreements += 1;
                }
            }
        }
    }
    ensure!(disagreements == 0, "{disagreements} disagreements");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: &[Criterion] = &[
        ("coset-graph golden", coset_graph_golden),
        ("double cosets and orbitals", lorimer_dictionary),
        ("lattice correspondence", lattice_correspondence),
        ("Biggs cover golden", biggs_golden),
        ("three-arc golden", three_arc_golden),
        ("design round trip", design_round_trip),
        ("subgraph graph of the tetrahedron", subgraph_cube),
        ("quotient as coset graph", quotient_dictionary),
        ("randomized invariants", invariant_suite),
        ("isomorphism oracle", oracle_equivalence),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({ms} ms): {e}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
