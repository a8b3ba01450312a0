use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sgk_core::formats::{group_to_text, parse_graph};
use sgk_core::{are_isomorphic, fixtures};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn sgk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgk"))
        .args(args)
        .output()
        .expect("sgk runs")
}

fn sgk_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgk"))
        .args(args)
        .env(key, value)
        .output()
        .expect("sgk runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn certificate(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn claim(cert: &Value, id: &str) -> bool {
    cert["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("no claim {id}"))["pass"]
        .as_bool()
        .unwrap()
}

#[test]
fn coset_graph_dot() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let o = sgk(&[
        "cosetgraph",
        "--group",
        s(&fixture("s4.grp")),
        "--subgroup",
        "(2 3),(3 4)",
        "--involution",
        "(1 2)",
        "--out",
        "dot",
        "--certificate",
        s(&cert),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dot = stdout(&o);
    assert!(dot.starts_with("graph"));
    assert_eq!(dot.matches(" -- ").count(), 6);
    let c = certificate(&cert);
    assert_eq!(c["data"]["valency"], 3);
    assert_eq!(c["data"]["arc_stabilizer_order"], 2);
    assert!(claim(&c, "valency_law") && claim(&c, "arc_transitive"));
    assert_eq!(c["inputs"].as_object().unwrap().len(), 3);
}

#[test]
fn involution_inside_subgroup() {
    let o = sgk(&[
        "cosetgraph",
        "--group",
        s(&fixture("s4.grp")),
        "--subgroup",
        "(2 3),(3 4)",
        "--involution",
        "(2 3)",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("InsideSubgroup"));
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let o = sgk(&[
            "verify",
            "--graph",
            s(&fixture("k4.graph")),
            "--group",
            s(&fixture("s4.grp")),
            "--certificate",
            s(p),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (mut ca, mut cb) = (certificate(&a), certificate(&b));
    assert_eq!(ca["data"]["symmetric"], true);
    ca["timing_ms"] = Value::Null;
    cb["timing_ms"] = Value::Null;
    assert_eq!(ca, cb);
}

#[test]
fn failed_verification_has_counterexample() {
    let dir = tempfile::tempdir().unwrap();
    let grp = dir.path().join("z5.grp");
    std::fs::write(&grp, "degree: 10\n(1 2 3 4 5)(6 7 8 9 10)\n").unwrap();
    let cert = dir.path().join("v.json");
    let o = sgk(&[
        "verify",
        "--graph",
        s(&fixture("petersen.graph")),
        "--group",
        s(&grp),
        "--certificate",
        s(&cert),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let c = certificate(&cert);
    assert!(!claim(&c, "vertex_transitive"));
    let failed: Vec<&Value> = c["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|x| x["pass"] == false)
        .collect();
    assert!(failed.iter().all(|x| x.get("witness").is_some()));
    // the witness vertex lies outside the orbit of vertex 1 under the rotation
    let v = failed[0]["witness"]["vertex"].as_u64().unwrap();
    assert!(v > 5);
}

#[test]
fn element_cap_from_environment() {
    let o = sgk_env(&["group", "--group", s(&fixture("s5.grp"))], "SGK_ELEMENT_CAP", "10");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("CapExceeded"));
    let o = sgk(&["group", "--group", s(&fixture("s5.grp"))]);
    assert!(stdout(&o).contains("order: 120"));
}

#[test]
fn orbitals_blocks_lattice() {
    let o = sgk(&["orbitals", "--group", s(&fixture("s4.grp"))]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = sgk(&["lattice", "--group", s(&fixture("d4.grp")), "--base", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = sgk(&["blocks", "--group", s(&fixture("z6.grp"))]);
    assert_eq!(stdout(&o).split("\n\n").count(), 4);
    let o = sgk(&["blocks", "--group", s(&fixture("d4.grp")), "--seed", "1,3"]);
    assert_eq!(stdout(&o), "1 3\n2 4\n");
}

#[test]
fn petersen_orbital_graph() {
    let dir = tempfile::tempdir().unwrap();
    let grp = dir.path().join("s5pairs.grp");
    let (g, _) = fixtures::s5_on_pairs();
    std::fs::write(&grp, group_to_text(10, g.generators())).unwrap();
    // orbitals of S5 on pairs: diagonal, pairs meeting in a point, disjoint pairs
    let o = sgk(&["orbitals", "--group", s(&grp), "--graph-index", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let graph = parse_graph(&stdout(&o)).unwrap();
    assert!(are_isomorphic(&graph, &fixtures::petersen()).is_some());
}

#[test]
fn quotient_of_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    let blocks = dir.path().join("b.txt");
    std::fs::write(&blocks, "1 4\n2 5\n3 6\n").unwrap();
    let cert = dir.path().join("q.json");
    let o = sgk(&[
        "quotient",
        "--graph",
        s(&fixture("c6.graph")),
        "--group",
        s(&fixture("d6.grp")),
        "--blocks",
        s(&blocks),
        "--certificate",
        s(&cert),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let q = parse_graph(&stdout(&o)).unwrap();
    assert!(are_isomorphic(&q, &sgk_core::Graph::cycle(3)).is_some());
    let c = certificate(&cert);
    assert_eq!(c["data"]["cover_class"], "cover");
    assert!(claim(&c, "cover_arithmetic"));
}

#[test]
fn design_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let design = dir.path().join("k4.design");
    let o = sgk(&[
        "design",
        "from-graph",
        "--graph",
        s(&fixture("k4.graph")),
        "--group",
        s(&fixture("s4.grp")),
        "-o",
        s(&design),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = sgk(&[
        "design",
        "validate",
        "--design",
        s(&design),
        "--group",
        s(&fixture("s4.grp")),
    ]);
    assert_eq!(stdout(&o), "v 4 b 4 k 3 lambda 3 m 1\n");
    let o = sgk(&[
        "design",
        "to-graph",
        "--design",
        s(&design),
        "--group",
        s(&fixture("s4.grp")),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(are_isomorphic(&parse_graph(&stdout(&o)).unwrap(), &fixtures::k4()).is_some());
    let o = sgk(&[
        "design",
        "polarities",
        "--design",
        s(&design),
        "--group",
        s(&fixture("s4.grp")),
    ]);
    assert!(stdout(&o).starts_with("polarity 0"));
}

#[test]
fn biggs_then_reconstruct() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain.txt");
    std::fs::write(&chain, "# one arc; the rest follows by propagation\narc 1 2 (1 2)\n").unwrap();
    let cover = dir.path().join("cover.graph");
    let cert = dir.path().join("b.json");
    let o = sgk(&[
        "biggs",
        "--graph",
        s(&fixture("k4.graph")),
        "--group",
        s(&fixture("s4.grp")),
        "--n",
        s(&fixture("z2.grp")),
        "--chain",
        s(&chain),
        "-o",
        s(&cover),
        "--certificate",
        s(&cert),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let g = parse_graph(&std::fs::read_to_string(&cover).unwrap()).unwrap();
    assert!(are_isomorphic(&g, &fixtures::q3()).is_some());
    let c = certificate(&cert);
    assert!(claim(&c, "fiber_matching") && claim(&c, "biggs_action_law") && claim(&c, "quotient_isomorphic"));

    // the cover group on 8 points, for the reconstruction
    let sd = sgk_core::constructions::SemidirectGroup::direct(fixtures::z2(), fixtures::s4());
    let grp = dir.path().join("cover.grp");
    std::fs::write(&grp, group_to_text(8, sd.action_group().generators())).unwrap();
    let blocks = dir.path().join("fibers.txt");
    std::fs::write(&blocks, "1 2\n3 4\n5 6\n7 8\n").unwrap();
    let cert = dir.path().join("r.json");
    let o = sgk(&[
        "extend",
        "--via",
        "flags",
        "--graph",
        s(&cover),
        "--group",
        s(&grp),
        "--blocks",
        s(&blocks),
        "--certificate",
        s(&cert),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let c = certificate(&cert);
    assert!(claim(&c, "isomorphic_to_input"));
    assert_eq!(c["data"]["normal_order"], 4);
}

#[test]
fn incompatible_chain_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain.txt");
    std::fs::write(&chain, "arc 1 2 (1 2)\narc 1 3 ()\n").unwrap();
    let o = sgk(&[
        "biggs",
        "--graph",
        s(&fixture("k4.graph")),
        "--group",
        s(&fixture("s4.grp")),
        "--n",
        s(&fixture("z2.grp")),
        "--chain",
        s(&chain),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NotCompatible"));
}

#[test]
fn three_arc_graph_of_k4() {
    let o = sgk(&[
        "threearc",
        "--graph",
        s(&fixture("k4.graph")),
        "--group",
        s(&fixture("s4.grp")),
    ]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("t.json");
    let o = sgk(&[
        "threearc",
        "--graph",
        s(&fixture("k4.graph")),
        "--group",
        s(&fixture("s4.grp")),
        "--orbit-index",
        "0",
        "--certificate",
        s(&cert),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let c = certificate(&cert);
    assert_eq!(c["data"]["vertices"], 12);
    assert!(claim(&c, "condition_pe") && claim(&c, "three_arc_necessity"));
}

#[test]
fn subgraph_graph_cube() {
    let o = sgk(&[
        "subgraph-graph",
        "--graph",
        s(&fixture("k4.graph")),
        "--group",
        s(&fixture("s4.grp")),
        "--arcs",
        "2 3,3 4,4 2",
        "--involution",
        "(1 2)",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(are_isomorphic(&parse_graph(&stdout(&o)).unwrap(), &fixtures::q3()).is_some());
}

#[test]
fn arc_partition_extension_of_octahedron() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("e.json");
    let o = sgk(&[
        "extend",
        "--via",
        "arcs",
        "--group",
        s(&fixture("octahedron-aut.grp")),
        "--subgroup",
        "(3 4),(3 5)(4 6),(5 6)",
        "--involution",
        "(1 3)(2 4)",
        "--certificate",
        s(&cert),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let c = certificate(&cert);
    assert_eq!(c["data"]["vertices"], 12);
    assert_eq!(c["data"]["valency"], 2);
    assert!(claim(&c, "counting_identities"));
    let o = sgk(&[
        "extend",
        "--via",
        "arcs",
        "--group",
        s(&fixture("s4.grp")),
        "--subgroup",
        "(2 3),(3 4)",
        "--involution",
        "(1 2)",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NoStrictChain"));
}
