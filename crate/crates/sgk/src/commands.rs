use std::collections::BTreeSet;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use serde_json::{json, Value};

use sgk_core::constructions::{
    arc_partition_extension, biggs_cover, check_condition_pe, check_three_arc_necessity, extension_candidates,
    full_labelling, propagate_chain, reconstruct_from_quotient, subgraph_graph, three_arc_graph, three_arc_orbits,
    SemidirectGroup,
};
use sgk_core::coset_graphs::{orbital_graph, orbitals, rank, sabidussi_graph, symmetric_coset_graph, CosetGraphSpec};
use sgk_core::designs::{
    design_from_graph, design_transitivity, find_polarities, graph_from_design, validate_design, IncidenceStructure,
};
use sgk_core::formats::{
    design_to_text, graph_to_dot, graph_to_text, parse_chain, parse_design, parse_graph, parse_group, parse_twist,
};
use sgk_core::graph::{are_isomorphic, verify_action};
use sgk_core::perm::{enumerate_group, orbit, parse_generator_list, stabilizer, DEFAULT_ELEMENT_CAP};
use sgk_core::quotients::certify_quotient;
use sgk_core::subgroups::{all_block_systems, core, minimal_block, subgroup_block_lattice};
use sgk_core::{BlockSystem, DirectedSubgraph, Graph, GroupTable, Permutation, TransitivityReport};

use crate::certificate::Certificate;
use crate::{Command, DesignAction, OutFormat, Output, Via};

pub fn element_cap() -> Result<usize> {
    match std::env::var("SGK_ELEMENT_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("SGK_ELEMENT_CAP={v} is not a number")),
        Err(_) => Ok(DEFAULT_ELEMENT_CAP),
    }
}

fn read(cert: &mut Certificate, name: &str, path: &Path) -> Result<String> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    cert.input(name, text.as_bytes());
    Ok(text)
}

fn load_group(cert: &mut Certificate, name: &str, path: &Path) -> Result<GroupTable> {
    let spec = parse_group(&read(cert, name, path)?).with_context(|| format!("in {}", path.display()))?;
    Ok(enumerate_group(&spec, element_cap()?)?)
}

fn load_graph(cert: &mut Certificate, path: &Path) -> Result<Graph> {
    parse_graph(&read(cert, "graph", path)?).with_context(|| format!("in {}", path.display()))
}

fn load_blocks(cert: &mut Certificate, path: &Path, n: usize) -> Result<BlockSystem> {
    BlockSystem::parse(&read(cert, "blocks", path)?, n).with_context(|| format!("in {}", path.display()))
}

fn load_design(cert: &mut Certificate, path: &Path) -> Result<IncidenceStructure> {
    parse_design(&read(cert, "design", path)?).with_context(|| format!("in {}", path.display()))
}

fn perms(cert: &mut Certificate, name: &str, text: &str, degree: usize) -> Result<Vec<Permutation>> {
    cert.input(name, text.as_bytes());
    Ok(parse_generator_list(text, degree)?)
}

fn element(cert: &mut Certificate, name: &str, text: &str, degree: usize) -> Result<Permutation> {
    cert.input(name, text.as_bytes());
    Ok(Permutation::parse_cycles(text, degree)?)
}

fn subgroup(cert: &mut Certificate, name: &str, text: &str, group: &GroupTable) -> Result<GroupTable> {
    let gens = perms(cert, name, text, group.degree())?;
    Ok(group.subgroup_generated(&gens)?)
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_graph(out: &Output, graph: &Graph, name: &str) -> Result<()> {
    let text = match out.format {
        OutFormat::Edges => graph_to_text(graph),
        OutFormat::Dot => graph_to_dot(graph, name),
    };
    emit(out, &text)
}

fn finish(mut cert: Certificate, out: &Output) -> Result<bool> {
    cert.finish();
    if let Some(path) = &out.certificate {
        cert.write(path)?;
    }
    for c in cert.claims.iter().filter(|c| !c.pass) {
        match &c.witness {
            Some(w) => eprintln!("FAIL {}: {}", c.id, w),
            None => eprintln!("FAIL {}", c.id),
        }
    }
    for w in &cert.warnings {
        eprintln!("warning: {w}");
    }
    Ok(cert.passed())
}

fn one_based(pairs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    pairs.into_iter().map(|p| p + 1).collect()
}

fn graph_summary(cert: &mut Certificate, graph: &Graph) {
    cert.data("vertices", graph.vertex_count());
    cert.data("edges", graph.edge_count());
    cert.data("valency", graph.valency());
    cert.data("connected", graph.is_connected());
}

/// Records the transitivity report as claims, with a concrete counterexample for each failure.
fn symmetry_claims(cert: &mut Certificate, graph: &Graph, group: &GroupTable, report: &TransitivityReport) {
    cert.claim(
        "acts_as_automorphisms",
        report.acts_as_automorphisms,
        report
            .counterexample
            .map(|(g, (u, v))| json!({"generator": g + 1, "arc": [u + 1, v + 1]})),
    );
    let missing_vertex = if graph.vertex_count() == 0 {
        None
    } else {
        let reached = orbit(group, 0);
        (0..graph.vertex_count()).find(|v| !reached.contains(v))
    };
    cert.claim(
        "vertex_transitive",
        report.vertex_transitive,
        missing_vertex.map(|v| json!({"vertex": v + 1})),
    );
    let arcs = graph.arcs();
    let missing_arc = arcs.first().and_then(|&(u, v)| {
        let reached: BTreeSet<(usize, usize)> = group.elements().iter().map(|g| (g.apply(u), g.apply(v))).collect();
        arcs.iter().find(|a| !reached.contains(a)).copied()
    });
    cert.claim(
        "arc_transitive",
        report.arc_transitive,
        if report.arc_transitive {
            None
        } else {
            missing_arc.map(|(u, v)| json!({"arc": [u + 1, v + 1]}))
        },
    );
    cert.data("locally_transitive", report.locally_transitive);
    cert.data("s_arc_transitive_up_to", report.s_arc_transitive_up_to);
    cert.data("action_kernel_size", report.action_kernel_size);
}

fn design_json(p: &sgk_core::designs::DesignParams) -> Value {
    json!({"v": p.v, "b": p.b, "k": p.k, "lambda": p.lambda, "m": p.m})
}

pub fn run(command: Command) -> Result<bool> {
    match command {
        Command::Group { group, out } => cmd_group(&group, &out),
        Command::Cosetgraph {
            group,
            subgroup,
            involution,
            connectors,
            out,
        } => cmd_cosetgraph(&group, &subgroup, involution.as_deref(), connectors.as_deref(), &out),
        Command::Orbitals {
            group,
            graph_index,
            out,
        } => cmd_orbitals(&group, graph_index, &out),
        Command::Quotient {
            graph,
            group,
            blocks,
            out,
        } => cmd_quotient(&graph, &group, &blocks, &out),
        Command::Blocks { group, seed, out } => cmd_blocks(&group, seed.as_deref(), &out),
        Command::Lattice { group, base, out } => cmd_lattice(&group, base, &out),
        Command::Design { action } => cmd_design(action),
        Command::Threearc {
            graph,
            group,
            orbit_index,
            out,
        } => cmd_threearc(&graph, &group, orbit_index, &out),
        Command::Biggs {
            graph,
            group,
            n,
            twist,
            chain,
            out,
        } => cmd_biggs(&graph, &group, &n, twist.as_deref(), &chain, &out),
        Command::SubgraphGraph {
            graph,
            group,
            arcs,
            involution,
            out,
        } => cmd_subgraph(&graph, &group, &arcs, &involution, &out),
        Command::Extend {
            via: Via::Arcs,
            group,
            subgroup,
            k,
            involution,
            out,
            ..
        } => cmd_extend_arcs(
            &group,
            subgroup.as_deref().ok_or_else(|| anyhow!("--subgroup is required"))?,
            k.as_deref(),
            involution
                .as_deref()
                .ok_or_else(|| anyhow!("--involution is required"))?,
            &out,
        ),
        Command::Extend {
            via: Via::Flags,
            group,
            graph,
            blocks,
            out,
            ..
        } => cmd_extend_flags(
            graph.as_deref().ok_or_else(|| anyhow!("--graph is required"))?,
            &group,
            blocks.as_deref().ok_or_else(|| anyhow!("--blocks is required"))?,
            &out,
        ),
        Command::Verify {
            graph,
            group,
            blocks,
            out,
        } => cmd_verify(&graph, &group, blocks.as_deref(), &out),
    }
}

fn cmd_group(path: &Path, out: &Output) -> Result<bool> {
    let mut cert = Certificate::new("group");
    let g = load_group(&mut cert, "group", path)?;
    let mut text = format!("degree: {}\norder: {}\n", g.degree(), g.order());
    let orbits = sgk_core::perm::orbits(&g);
    let mut law = true;
    for o in &orbits {
        let p = *o.iter().next().unwrap();
        let st = stabilizer(&g, p).order();
        law &= o.len() * st == g.order();
        text.push_str(&format!("orbit {:?} stabilizer {}\n", one_based(o.iter().copied()), st));
    }
    cert.data("degree", g.degree());
    cert.data("order", g.order());
    cert.data(
        "orbits",
        orbits.iter().map(|o| one_based(o.iter().copied())).collect::<Vec<_>>(),
    );
    cert.data("transitive", orbits.len() == 1);
    cert.claim("orbit_stabilizer", law, None);
    emit(out, &text)?;
    finish(cert, out)
}

fn cmd_cosetgraph(
    group: &Path,
    sub: &str,
    involution: Option<&str>,
    connectors: Option<&str>,
    out: &Output,
) -> Result<bool> {
    let mut cert = Certificate::new("cosetgraph");
    let g = load_group(&mut cert, "group", group)?;
    let h = subgroup(&mut cert, "subgroup", sub, &g)?;
    let cg = if let Some(a) = involution {
        let a = element(&mut cert, "involution", a, g.degree())?;
        let s = symmetric_coset_graph(&g, &h, &a)?;
        cert.data("expected_valency", s.expected_valency);
        cert.data("arc_stabilizer_order", s.arc_stabilizer_order);
        cert.claim(
            "valency_law",
            s.valency == Some(s.expected_valency),
            Some(json!({"valency": s.valency, "expected": s.expected_valency})),
        );
        cert.claim("arc_stabilizer_law", s.arc_stabilizer_law, None);
        s.coset_graph
    } else {
        let d = perms(&mut cert, "connectors", connectors.unwrap_or(""), g.degree())?;
        sabidussi_graph(&CosetGraphSpec::new(g.clone(), h.clone(), d))?
    };
    graph_summary(&mut cert, &cg.graph);
    cert.data("kernel_order", cg.kernel_order);
    cert.data("generates", cg.generates);
    symmetry_claims(&mut cert, &cg.graph, &cg.action, &cg.report);
    let core_order = core(&g, &h)?.order();
    cert.claim(
        "core_is_kernel",
        core_order == g.order() / cg.action.order(),
        Some(json!({"core_order": core_order})),
    );
    cert.claim("connected_iff_generates", cg.connected == cg.generates, None);
    emit_graph(out, &cg.graph, "Sab")?;
    finish(cert, out)
}

fn cmd_orbitals(path: &Path, index: Option<usize>, out: &Output) -> Result<bool> {
    let mut cert = Certificate::new("orbitals");
    let g = load_group(&mut cert, "group", path)?;
    let orbs = orbitals(&g, g.degree())?;
    let stab_orbits = {
        let st = stabilizer(&g, 0);
        sgk_core::perm::orbits(&st).len()
    };
    cert.claim(
        "rank_matches",
        orbs.len() == stab_orbits && rank(&g) == orbs.len(),
        Some(json!({"rank": stab_orbits})),
    );
    cert.data(
        "orbitals",
        orbs.iter()
            .map(|o| json!({"size": o.pairs.len(), "diagonal": o.diagonal, "self_paired": o.self_paired, "paired_with": o.paired_with}))
            .collect::<Vec<_>>(),
    );
    match index {
        Some(i) => {
            let o = orbs
                .get(i)
                .ok_or_else(|| anyhow!("orbital index {i} out of range (0..{})", orbs.len()))?;
            let graph = orbital_graph(&g, g.degree(), &o.pairs)?;
            let report = verify_action(&graph, &g)?;
            symmetry_claims(&mut cert, &graph, &g, &report);
            emit_graph(out, &graph, "orbital")?;
        }
        None => {
            let mut text = String::new();
            for (i, o) in orbs.iter().enumerate() {
                let (u, v) = *o.pairs.iter().next().unwrap();
                text.push_str(&format!(
                    "{i}: size {} self_paired {} paired_with {} rep ({}, {})\n",
                    o.pairs.len(),
                    o.self_paired,
                    o.paired_with,
                    u + 1,
                    v + 1
                ));
            }
            emit(out, &text)?;
        }
    }
    finish(cert, out)
}

fn quotient_claims(cert: &mut Certificate, graph: &Graph, g: &GroupTable, part: &BlockSystem) -> Result<Graph> {
    let q = certify_quotient(graph, g, part, true)?;
    cert.claim("partition_invariant", true, None);
    cert.claim("homomorphism_law", q.homomorphism_law, None);
    cert.claim("quotient_symmetric", q.symmetric, None);
    cert.data("nontrivial", q.nontrivial);
    cert.data("cover_class", q.cover_class.map(|c| c.as_str()));
    cert.data("kernel_order", q.kernel_order);
    cert.data("kernel_fiber_transitive", q.kernel_fiber_transitive);
    cert.data("bipartite_uniform", q.bipartite_uniform);
    if let Some(p) = &q.design_params {
        cert.data("design", design_json(p));
        cert.claim("design_counting", p.v * p.lambda == p.b * p.k, Some(design_json(p)));
    }
    if q.cover_class == Some(sgk_core::quotients::CoverClass::Cover) {
        cert.claim("cover_arithmetic", q.cover_arithmetic(graph), None);
    }
    Ok(q.quotient)
}

fn cmd_quotient(graph: &Path, group: &Path, blocks: &Path, out: &Output) -> Result<bool> {
    let mut cert = Certificate::new("quotient");
    let gr = load_graph(&mut cert, graph)?;
    let g = load_group(&mut cert, "group", group)?;
    let part = load_blocks(&mut cert, blocks, gr.vertex_count())?;
    let q = quotient_claims(&mut cert, &gr, &g, &part)?;
    graph_summary(&mut cert, &q);
    emit_graph(out, &q, "quotient")?;
    finish(cert, out)
}

fn cmd_blocks(path: &Path, seed: Option<&str>, out: &Output) -> Result<bool> {
    let mut cert = Certificate::new("blocks");
    let g = load_group(&mut cert, "group", path)?;
    let systems = match seed {
        Some(s) => {
            cert.input("seed", s.as_bytes());
            let pts: Vec<usize> = s
                .split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| t.trim().parse::<usize>().map_err(|_| anyhow!("bad seed point `{t}`")))
                .collect::<Result<_>>()?;
            if pts.len() != 2 || pts.contains(&0) {
                return Err(anyhow!("--seed takes two 1-based points"));
            }
            let block = minimal_block(&g, (pts[0] - 1, pts[1] - 1))?;
            vec![BlockSystem::from_block(&g, &block)?]
        }
        None => all_block_systems(&g)?,
    };
    let invariant = systems.iter().all(|s| s.is_invariant(&g));
    cert.claim("block_systems_invariant", invariant, None);
    cert.data("count", systems.len());
    cert.data(
        "block_sizes",
        systems.iter().map(|s| s.block(0).len()).collect::<Vec<_>>(),
    );
    let text: Vec<String> = systems.iter().map(|s| s.to_text()).collect();
    emit(out, &text.join("\n"))?;
    finish(cert, out)
}

fn cmd_lattice(path: &Path, base: usize, out: &Output) -> Result<bool> {
    let mut cert = Certificate::new("lattice");
    let g = load_group(&mut cert, "group", path)?;
    if base == 0 || base > g.degree() {
        return Err(anyhow!("base point {base} outside 1..={}", g.degree()));
    }
    let pairs = subgroup_block_lattice(&g, base - 1)?;
    let stab = stabilizer(&g, base - 1).order();
    let sizes_ok = pairs.iter().all(|p| p.subgroup.order() == stab * p.block.len());
    let order_iso = pairs.iter().all(|p| {
        pairs
            .iter()
            .all(|q| p.subgroup.is_subgroup_of(&q.subgroup) == p.block.is_subset(&q.block))
    });
    cert.claim("orbit_stabilizer_sizes", sizes_ok, None);
    cert.claim("order_isomorphism", order_iso, None);
    cert.data("pairs", pairs.len());
    let mut text = String::new();
    for p in &pairs {
        text.push_str(&format!(
            "order {} block {:?}\n",
            p.subgroup.order(),
            one_based(p.block.iter().copied())
        ));
    }
    emit(out, &text)?;
    finish(cert, out)
}

fn cmd_design(action: DesignAction) -> Result<bool> {
    match action {
        DesignAction::FromGraph { graph, group, out } => {
            let mut cert = Certificate::new("design-from-graph");
            let gr = load_graph(&mut cert, &graph)?;
            let g = load_group(&mut cert, "group", &group)?;
            let (inc, pol) = design_from_graph(&gr, &g)?;
            let params = validate_design(&inc)?;
            cert.data("design", design_json(&params));
            cert.claim("design_counting", params.v * params.lambda == params.b * params.k, None);
            cert.claim(
                "flag_transitive",
                design_transitivity(&inc, &g)?.flag_transitive(),
                None,
            );
            let back = graph_from_design(&inc, &g, &pol)?;
            cert.claim("round_trip", are_isomorphic(&back, &gr).is_some(), None);
            emit(&out, &design_to_text(&inc))?;
            finish(cert, &out)
        }
        DesignAction::ToGraph {
            design,
            group,
            polarity,
            out,
        } => {
            let mut cert = Certificate::new("design-to-graph");
            let inc = load_design(&mut cert, &design)?;
            let g = load_group(&mut cert, "group", &group)?;
            let pols = find_polarities(&inc, &g)?;
            let pol = pols
                .get(polarity)
                .ok_or_else(|| anyhow!("polarity {polarity} out of range ({} found)", pols.len()))?;
            let gr = graph_from_design(&inc, &g, pol)?;
            graph_summary(&mut cert, &gr);
            let report = verify_action(&gr, &g)?;
            symmetry_claims(&mut cert, &gr, &g, &report);
            emit_graph(&out, &gr, "design")?;
            finish(cert, &out)
        }
        DesignAction::Polarities { design, group, out } => {
            let mut cert = Certificate::new("design-polarities");
            let inc = load_design(&mut cert, &design)?;
            let g = load_group(&mut cert, "group", &group)?;
            let pols = find_polarities(&inc, &g)?;
            let graphs: Vec<Graph> = pols
                .iter()
                .map(|p| graph_from_design(&inc, &g, p))
                .collect::<sgk_core::Result<_>>()?;
            // isomorphism class of each polarity's graph, by first occurrence
            let mut classes: Vec<usize> = Vec::new();
            for (i, gi) in graphs.iter().enumerate() {
                let c = (0..i)
                    .find(|&j| are_isomorphic(&graphs[j], gi).is_some())
                    .map_or(i, |j| classes[j]);
                classes.push(c);
            }
            let mut text = String::new();
            for (i, p) in pols.iter().enumerate() {
                text.push_str(&format!(
                    "polarity {i}: points->blocks {:?} graph class {}\n",
                    one_based(p.point_map.iter().copied()),
                    classes[i]
                ));
            }
            cert.data("polarities", pols.len());
            cert.data("graph_classes", classes.iter().collect::<BTreeSet<_>>().len());
            let symmetric = graphs
                .iter()
                .all(|gr| verify_action(gr, &g).map(|r| r.is_symmetric()).unwrap_or(false));
            cert.claim("graphs_symmetric", symmetric, None);
            emit(&out, &text)?;
            finish(cert, &out)
        }
        DesignAction::Validate { design, group, out } => {
            let mut cert = Certificate::new("design-validate");
            let inc = load_design(&mut cert, &design)?;
            let params = validate_design(&inc)?;
            cert.data("design", design_json(&params));
            cert.claim("design_counting", params.v * params.lambda == params.b * params.k, None);
            if let Some(group) = group {
                let g = load_group(&mut cert, "group", &group)?;
                let t = design_transitivity(&inc, &g)?;
                cert.claim(
                    "flag_transitive",
                    t.flag_transitive(),
                    Some(json!({"flag_orbits": t.flag_orbits})),
                );
            }
            emit(
                &out,
                &format!(
                    "v {} b {} k {} lambda {} m {}\n",
                    params.v, params.b, params.k, params.lambda, params.m
                ),
            )?;
            finish(cert, &out)
        }
    }
}

fn cmd_threearc(graph: &Path, group: &Path, index: Option<usize>, out: &Output) -> Result<bool> {
    let mut cert = Certificate::new("threearc");
    let gr = load_graph(&mut cert, graph)?;
    let g = load_group(&mut cert, "group", group)?;
    let orbs = three_arc_orbits(&gr, &g)?;
    cert.data(
        "orbits",
        orbs.iter()
            .map(|o| json!({"size": o.arcs.len(), "self_paired": o.self_paired}))
            .collect::<Vec<_>>(),
    );
    let Some(i) = index else {
        let mut text = String::new();
        for (i, o) in orbs.iter().enumerate() {
            let t = o.arcs.iter().next().unwrap();
            text.push_str(&format!(
                "{i}: size {} self_paired {} rep {:?}\n",
                o.arcs.len(),
                o.self_paired,
                one_based(t.iter().copied())
            ));
        }
        emit(out, &text)?;
        return finish(cert, out);
    };
    let o = orbs
        .get(i)
        .ok_or_else(|| anyhow!("orbit index {i} out of range (0..{})", orbs.len()))?;
    let xi = three_arc_graph(&gr, &g, &o.arcs)?;
    graph_summary(&mut cert, &xi.graph);
    symmetry_claims(&mut cert, &xi.graph, &xi.action, &xi.report);
    cert.claim("quotient_isomorphic", xi.quotient_isomorphic, None);
    if xi.reverse_adjacent {
        cert.warnings.push("some arc is adjacent to its own reverse".into());
    }
    if xi.certificate.nontrivial && xi.graph.valency().is_some_and(|v| v >= 2) {
        match check_condition_pe(&xi.graph, &xi.action, &xi.partition)? {
            Some(pe) => {
                cert.claim("condition_pe", true, None);
                let labels = full_labelling(&xi.action, &xi.partition, &pe)?;
                cert.claim(
                    "three_arc_necessity",
                    check_three_arc_necessity(&xi.graph, &xi.partition, &labels)?,
                    None,
                );
            }
            None => cert.claim("condition_pe", false, None),
        }
    }
    emit_graph(out, &xi.graph, "threearc")?;
    finish(cert, out)
}

fn cmd_biggs(graph: &Path, group: &Path, n: &Path, twist: Option<&Path>, chain: &Path, out: &Output) -> Result<bool> {
    let mut cert = Certificate::new("biggs");
    let gr = load_graph(&mut cert, graph)?;
    let g = load_group(&mut cert, "group", group)?;
    let ng = load_group(&mut cert, "n", n)?;
    let sd = match twist {
        Some(t) => {
            let tw = parse_twist(&read(&mut cert, "twist", t)?, ng.degree())?;
            SemidirectGroup::new(ng.clone(), g.clone(), &tw)?
        }
        None => SemidirectGroup::direct(ng.clone(), g.clone()),
    };
    let partial = parse_chain(&read(&mut cert, "chain", chain)?, &gr, &ng)?;
    let chain = propagate_chain(&gr, &g, &sd, &partial)?;
    let sd_report = sd.verify();
    cert.claim(
        "semidirect_product",
        sd_report.order == sd_report.expected_order && sd_report.associative,
        None,
    );
    cert.claim(
        "normal_with_quotient",
        sd_report.n_normal && sd_report.quotient_is_g,
        None,
    );
    cert.claim("biggs_action_law", sd_report.action_law, None);
    let cover = biggs_cover(&gr, &g, &sd, &chain)?;
    graph_summary(&mut cert, &cover.graph);
    symmetry_claims(&mut cert, &cover.graph, &cover.action, &cover.report);
    cert.claim("quotient_isomorphic", cover.quotient_isomorphic, None);
    cert.claim("fiber_matching", cover.fibers_matched, None);
    cert.claim("valency_preserved", cover.graph.valency() == gr.valency(), None);
    cert.data("cover_class", cover.certificate.cover_class.map(|c| c.as_str()));
    emit_graph(out, &cover.graph, "biggs")?;
    finish(cert, out)
}

fn parse_arcs(text: &str, n: usize) -> Result<Vec<(usize, usize)>> {
    text.split([',', ';'])
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let pts: Vec<usize> = t
                .split(|c: char| c.is_whitespace() || c == '>' || c == '-')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| anyhow!("bad vertex `{s}`")))
                .collect::<Result<_>>()?;
            match pts[..] {
                [u, v] if (1..=n).contains(&u) && (1..=n).contains(&v) => Ok((u - 1, v - 1)),
                _ => Err(anyhow!("bad arc `{}`", t.trim())),
            }
        })
        .collect()
}

fn cmd_subgraph(graph: &Path, group: &Path, arcs: &str, involution: &str, out: &Output) -> Result<bool> {
    let mut cert = Certificate::new("subgraph-graph");
    let gr = load_graph(&mut cert, graph)?;
    let g = load_group(&mut cert, "group", group)?;
    cert.input("arcs", arcs.as_bytes());
    let sub = DirectedSubgraph::from_arcs(&gr, &parse_arcs(arcs, gr.vertex_count())?)?;
    let a = element(&mut cert, "involution", involution, g.degree())?;
    let s = subgraph_graph(&gr, &g, &sub, &a)?;
    graph_summary(&mut cert, &s.graph);
    symmetry_claims(&mut cert, &s.graph, &s.action, &s.report);
    let point_stab = g.order() / s.graph.vertex_count();
    cert.claim(
        "point_stabilizer",
        point_stab == s.stabilizer_order,
        Some(json!({"stabilizer_order": s.stabilizer_order})),
    );
    emit_graph(out, &s.graph, "subgraph")?;
    finish(cert, out)
}

fn cmd_extend_arcs(group: &Path, h: &str, k: Option<&str>, a: &str, out: &Output) -> Result<bool> {
    let mut cert = Certificate::new("extend-arcs");
    let g = load_group(&mut cert, "group", group)?;
    let h = subgroup(&mut cert, "subgroup", h, &g)?;
    let a = element(&mut cert, "involution", a, g.degree())?;
    let k = match k {
        Some(k) => subgroup(&mut cert, "k", k, &g)?,
        None => extension_candidates(&g, &h, &a)?
            .into_iter()
            .next()
            .ok_or(sgk_core::Error::NoStrictChain)?,
    };
    cert.data("k_order", k.order());
    cert.data(
        "k_generators",
        k.generators().iter().map(|x| x.to_cycle_string()).collect::<Vec<_>>(),
    );
    let ext = arc_partition_extension(&g, &h, &k, &a)?;
    graph_summary(&mut cert, &ext.graph);
    cert.data("index", ext.index);
    cert.claim(
        "isomorphic_to_coset_graph",
        true,
        Some(json!({"map": one_based(ext.isomorphism.iter().copied())})),
    );
    cert.claim("counting_identities", ext.counts_hold, None);
    cert.claim("refines_tails", ext.refines_tails, None);
    let report = ext.expected.report().clone();
    symmetry_claims(
        &mut cert,
        ext.expected.graph(),
        &ext.expected.coset_graph.action,
        &report,
    );
    emit_graph(out, &ext.graph, "extension")?;
    finish(cert, out)
}

fn cmd_extend_flags(graph: &Path, group: &Path, blocks: &Path, out: &Output) -> Result<bool> {
    let mut cert = Certificate::new("extend-flags");
    let gr = load_graph(&mut cert, graph)?;
    let g = load_group(&mut cert, "group", group)?;
    let part = load_blocks(&mut cert, blocks, gr.vertex_count())?;
    let check = reconstruct_from_quotient(&gr, &g, &part)?;
    cert.data("normal_order", check.normal.order());
    cert.data("complement_order", check.complement.order());
    cert.data("orbital_size", check.data.orbital.len());
    graph_summary(&mut cert, &check.rebuilt);
    cert.claim(
        "isomorphic_to_input",
        check.isomorphic,
        Some(json!({"lift": one_based(check.lift.iter().copied())})),
    );
    cert.claim("rebuilt_symmetric", check.report.is_symmetric(), None);
    emit_graph(out, &check.rebuilt, "reconstruction")?;
    finish(cert, out)
}

fn cmd_verify(graph: &Path, group: &Path, blocks: Option<&Path>, out: &Output) -> Result<bool> {
    let mut cert = Certificate::new("verify");
    let gr = load_graph(&mut cert, graph)?;
    let g = load_group(&mut cert, "group", group)?;
    if g.degree() != gr.vertex_count() {
        return Err(sgk_core::Error::DegreeMismatch {
            expected: gr.vertex_count(),
            found: g.degree(),
        }
        .into());
    }
    let report = verify_action(&gr, &g)?;
    graph_summary(&mut cert, &gr);
    symmetry_claims(&mut cert, &gr, &g, &report);
    cert.data("symmetric", report.is_symmetric());
    if let Some(b) = blocks {
        let part = load_blocks(&mut cert, b, gr.vertex_count())?;
        if !part.is_invariant(&g) {
            let bad = g
                .generators()
                .iter()
                .position(|x| part.block_permutation(x).is_none())
                .unwrap_or(0);
            cert.claim("partition_invariant", false, Some(json!({"generator": bad + 1})));
        } else {
            quotient_claims(&mut cert, &gr, &g, &part)?;
        }
    }
    let mut text = format!("symmetric: {}\n", report.is_symmetric());
    text.push_str(&format!("s_arc_transitive_up_to: {}\n", report.s_arc_transitive_up_to));
    emit(out, &text)?;
    finish(cert, out)
}
