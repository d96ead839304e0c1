//! End-to-end checks of the published results, one line of output per
//! criterion. Criteria run one after another so their timings do not compete.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::fs;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Stdio};
use std::thread::sleep;
use std::time::{Duration, Instant};

use serde_json::Value;

use common::{
    all_circuits, corpus, naive_circuit_multicover, naive_min_cover, naive_perfect_matchings,
    random_cubic, rng,
};
use snark_forge::constructions::{
    build_family, build_four_cover, cube, decode_three_coloring, extend_bf_cover, hagglund,
    hagglund_triple, k33, k4, np_reduction, petersen, prism, tietze, FamilyRecipe,
    DEFAULT_HAGGLUND_EDGES,
};
use snark_forge::covers::{
    excessive_index, find_bf_coloring, tietze_triangle_property, verify_bf_coloring, verify_cover,
    ExcessiveIndex,
};
use snark_forge::cyclecover::{
    decompose_circuits, forbidden_center_check, h_type, scc_classify, verify_cycle_cover, HType,
    Multiplicity, SccClass,
};
use snark_forge::graph::{
    check_cut_parity, cut_boundary, cyclically_edge_connected_at_least, girth, is_bridgeless,
};
use snark_forge::matching::{enumerate_perfect_matchings, three_edge_color};
use snark_forge::{CubicGraph, EdgeSet};

const BIN: &str = env!("CARGO_BIN_EXE_snark-forge");

type Check = Result<(), String>;

/// Name, time limit in seconds, and the check itself.
type Criterion = (&'static str, u64, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, what: &str, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    ensure!(took <= limit, "{what} took {took:?}, limit {limit:?}");
    Ok(())
}

fn named() -> Vec<(&'static str, CubicGraph)> {
    vec![
        ("k4", k4()),
        ("k33", k33()),
        ("prism", prism()),
        ("cube", cube()),
        ("petersen", petersen()),
        ("tietze", tietze()),
    ]
}

fn excessive_indices() -> Check {
    for (name, g, want) in [
        ("petersen", petersen(), 5),
        ("tietze", tietze(), 4),
        ("k4", k4(), 3),
    ] {
        within(Duration::from_secs(1), name, || {
            let ExcessiveIndex::Exact { value, witness } =
                excessive_index(&g, None).map_err(|e| e.to_string())?
            else {
                return Err(format!("{name}: no value"));
            };
            ensure!(
                value == want,
                "{name}: excessive index {value}, expected {want}"
            );
            ensure!(
                verify_cover(&g, &witness).unwrap().is_valid(),
                "{name}: witness does not verify"
            );
            Ok(())
        })?;
    }
    Ok(())
}

fn windmill_excessive_index() -> Check {
    let (h, _) = hagglund();
    let no_four = excessive_index(&h, Some(4)).map_err(|e| e.to_string())?;
    ensure!(
        no_four == ExcessiveIndex::ExceedsBudget { budget: 4 },
        "got {no_four:?} with budget 4"
    );
    let ExcessiveIndex::Exact { value, witness } =
        excessive_index(&h, None).map_err(|e| e.to_string())?
    else {
        return Err("no value".into());
    };
    ensure!(value == 5 && witness.len() == 5, "excessive index {value}");
    ensure!(
        verify_cover(&h, &witness).unwrap().is_valid(),
        "5-cover does not verify"
    );
    Ok(())
}

fn triangle_property() -> Check {
    ensure!(
        tietze_triangle_property(),
        "some 4-cover of the Tietze graph breaks the triangle property"
    );
    Ok(())
}

/// Two random 3-edge-colorable cubic graphs of order at most 12.
fn colorable_samples() -> Vec<CubicGraph> {
    let mut r = rng(2024);
    let mut out = Vec::new();
    for n in [10, 12] {
        loop {
            let g = random_cubic(n, &mut r);
            if three_edge_color(&g).is_some() {
                out.push(g);
                break;
            }
        }
    }
    out
}

fn reduction_roundtrip() -> Check {
    let mut inputs: Vec<(String, CubicGraph)> = vec![
        ("k4".into(), k4()),
        ("k33".into(), k33()),
        ("prism".into(), prism()),
    ];
    for (i, g) in colorable_samples().into_iter().enumerate() {
        inputs.push((format!("random {i} (n = {})", g.n()), g));
    }
    for (name, g) in inputs {
        within(Duration::from_secs(60), &name, || {
            let r = np_reduction(&g);
            ensure!(
                r.graph.n() == 39 * g.n(),
                "{name}: {} vertices",
                r.graph.n()
            );
            ensure!(
                three_edge_color(&r.graph).is_none(),
                "{name}: reduced graph is 3-edge-colorable"
            );
            let coloring = three_edge_color(&g).ok_or(format!("{name}: input not colorable"))?;
            let cover = build_four_cover(&r, &coloring).map_err(|e| e.to_string())?;
            ensure!(
                cover.len() == 4,
                "{name}: cover has {} members",
                cover.len()
            );
            ensure!(
                verify_cover(&r.graph, &cover).unwrap().is_valid(),
                "{name}: 4-cover does not verify"
            );
            let back = decode_three_coloring(&r, &cover).map_err(|e| e.to_string())?;
            let mut seen = vec![0; g.m()];
            for class in back.classes() {
                for e in class.to_vec() {
                    seen[e] += 1;
                }
                for v in 0..g.n() {
                    let hits = g.incident(v).iter().filter(|&&e| class.contains(e)).count();
                    ensure!(hits == 1, "{name}: decoded class is not a perfect matching");
                }
            }
            ensure!(
                seen.iter().all(|&k| k == 1),
                "{name}: decoded classes do not partition the edges"
            );
            Ok(())
        })?;
    }
    Ok(())
}

fn has_cycle(g: &CubicGraph, side: &[usize]) -> bool {
    let inside = |v: usize| side.contains(&v);
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| inside(u) && inside(v))
        .count();
    edges >= side.len()
}

fn windmill_structure() -> Check {
    let (h, labels) = hagglund();
    ensure!(h.n() == 34, "{} vertices", h.n());
    ensure!(girth(&h) >= 5, "girth {}", girth(&h));
    ensure!(is_bridgeless(&h), "has a bridge");
    ensure!(
        cyclically_edge_connected_at_least(&h, 4).unwrap().holds,
        "not cyclically 4-edge-connected"
    );
    let five = cyclically_edge_connected_at_least(&h, 5).unwrap();
    ensure!(
        !five.holds && five.witness.is_some(),
        "cyclically 5-edge-connected"
    );
    for i in 0..3 {
        let cut = cut_boundary(&h, &labels.blocks[i]).unwrap();
        ensure!(
            cut.boundary == labels.boundary[i] && cut.size() == 4,
            "boundary of block {i}"
        );
        let rest: Vec<usize> = (0..h.n())
            .filter(|v| !labels.blocks[i].contains(v))
            .collect();
        ensure!(
            has_cycle(&h, &labels.blocks[i]) && has_cycle(&h, &rest),
            "boundary of block {i} is not cyclic"
        );
    }
    let triple = hagglund_triple(DEFAULT_HAGGLUND_EDGES).map_err(|e| e.to_string())?;
    ensure!(
        triple.graph.n() == 106,
        "{} vertices in the triple",
        triple.graph.n()
    );
    Ok(())
}

fn bf_pipeline() -> Check {
    let p = petersen();
    let cp = find_bf_coloring(&p)
        .unwrap()
        .ok_or("Petersen graph has no coloring")?;
    ensure!(
        verify_bf_coloring(&p, &cp).unwrap().is_valid(),
        "Petersen coloring does not verify"
    );
    let one = build_family(&FamilyRecipe::depth_one()).map_err(|e| e.to_string())?;
    let labels = one.labels.as_ref().unwrap();
    let ch = extend_bf_cover(&one.graph, labels, [(&p, &cp), (&p, &cp), (&p, &cp)])
        .map_err(|e| e.to_string())?;
    ensure!(
        verify_bf_coloring(&one.graph, &ch).unwrap().is_valid(),
        "34-vertex coloring does not verify"
    );
    let two = hagglund_triple(DEFAULT_HAGGLUND_EDGES).map_err(|e| e.to_string())?;
    let h = &one.graph;
    let c106 = extend_bf_cover(
        &two.graph,
        two.labels.as_ref().unwrap(),
        [(h, &ch), (h, &ch), (h, &ch)],
    )
    .map_err(|e| e.to_string())?;
    ensure!(
        verify_bf_coloring(&two.graph, &c106).unwrap().is_valid(),
        "106-vertex coloring does not verify"
    );
    Ok(())
}

fn small_classification() -> Check {
    let v = scc_classify(&k4()).map_err(|e| e.to_string())?;
    ensure!(
        v.class == SccClass::Exact43m && v.length() == Some(8),
        "K4: {:?} {:?}",
        v.class,
        v.length()
    );
    let p = petersen();
    let v = scc_classify(&p).map_err(|e| e.to_string())?;
    ensure!(
        v.class == SccClass::Exact43mPlus1 && v.length() == Some(21),
        "Petersen: {:?} {:?}",
        v.class,
        v.length()
    );
    ensure!(
        verify_cycle_cover(&p, v.witness.as_ref().unwrap())
            .unwrap()
            .valid,
        "Petersen witness"
    );
    ensure!(v.exhausted.pms, "matchings not recorded as exhausted");
    let pms = enumerate_perfect_matchings(&p).unwrap();
    ensure!(pms.len() == 6, "{} perfect matchings", pms.len());
    for m in &pms {
        let mult = Multiplicity::from_doubled(&p, m.edges()).unwrap();
        ensure!(
            decompose_circuits(&p, &mult).unwrap().is_none(),
            "matching {:?} is feasible",
            m.to_vec()
        );
    }
    Ok(())
}

fn windmill_classification() -> Check {
    let (h, labels) = hagglund();
    let v = scc_classify(&h).map_err(|e| e.to_string())?;
    ensure!(
        v.class == SccClass::Exact43mPlus1 && v.length() == Some(69),
        "{:?} {:?}",
        v.class,
        v.length()
    );
    ensure!(
        verify_cycle_cover(&h, v.witness.as_ref().unwrap())
            .unwrap()
            .valid,
        "witness does not verify"
    );
    ensure!(
        forbidden_center_check(&h, &labels).map_err(|e| e.to_string())?,
        "a junction center is feasible"
    );
    Ok(())
}

fn cli(args: &[&str]) -> (i32, Value) {
    let out = Command::new(BIN).args(args).output().expect("run binary");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

fn read_json(path: &Path) -> Option<Value> {
    serde_json::from_str(&fs::read_to_string(path).ok()?).ok()
}

/// Classifies the 106-vertex graph through the binary, killing the first
/// run once it has saved progress and finishing from the saved state.
fn triple_classification() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("triple.g6");
    let state = dir.path().join("state.json");
    let cert = dir.path().join("cert.json");
    let (code, _) = cli(&["gen", "hagglund-triple", "--out", graph.to_str().unwrap()]);
    ensure!(code == 0, "gen exited with {code}");
    let scc_args = |extra: &[&str]| {
        let mut a = vec![
            "scc",
            "--graph",
            graph.to_str().unwrap(),
            "--checkpoint",
            "1",
            "--state",
            state.to_str().unwrap(),
            "--cert",
            cert.to_str().unwrap(),
        ];
        a.extend_from_slice(extra);
        a.into_iter().map(String::from).collect::<Vec<_>>()
    };

    let mut child = Command::new(BIN)
        .args(scc_args(&[]))
        .stdout(Stdio::null())
        .spawn()
        .unwrap();
    let saved = loop {
        if let Some(s) = read_json(&state) {
            if s["exhausted"]["parity"]
                .as_array()
                .is_some_and(|p| p.len() >= 2)
            {
                break s;
            }
        }
        if let Some(status) = child.try_wait().unwrap() {
            return Err(format!(
                "first run ended before it could be interrupted: {status}"
            ));
        }
        sleep(Duration::from_millis(100));
    };
    child.kill().unwrap();
    child.wait().unwrap();
    ensure!(
        saved["exhausted"]["pms"] == true,
        "matchings not exhausted in the saved state"
    );
    let done = saved["exhausted"]["parity"].as_array().unwrap().len();
    ensure!(done < 106, "nothing left to resume");

    let resumed = scc_args(&["--resume", state.to_str().unwrap()]);
    let (code, out) = cli(&resumed.iter().map(String::as_str).collect::<Vec<_>>());
    ensure!(code == 0, "resumed run exited with {code}");
    ensure!(
        out["class"] == "AT_LEAST_43M_PLUS_2",
        "class {}",
        out["class"]
    );
    ensure!(
        out["length"].as_u64() == Some(214) && out["length_is_lower_bound"] == true,
        "length {}",
        out["length"]
    );
    ensure!(
        out["nodes"].as_u64() > saved["nodes"].as_u64(),
        "resumed run did not continue the count"
    );
    let (code, check) = cli(&[
        "verify",
        "--graph",
        graph.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    ensure!(
        code == 0 && check["valid"] == true,
        "certificate does not verify: {check}"
    );
    Ok(())
}

fn odd_subgraphs(g: &CubicGraph) -> Vec<Vec<usize>> {
    (0u32..1 << g.m())
        .filter(|mask| {
            (0..g.n()).all(|v| {
                g.incident(v)
                    .iter()
                    .filter(|&&e| mask >> e & 1 == 1)
                    .count()
                    % 2
                    == 1
            })
        })
        .map(|mask| (0..g.m()).filter(|&e| mask >> e & 1 == 1).collect())
        .collect()
}

fn property_suites() -> Check {
    for (name, g) in named() {
        let pms = enumerate_perfect_matchings(&g).unwrap();
        for mask in 1u32..(1 << g.n()) - 1 {
            let side: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
            let cut = cut_boundary(&g, &side).unwrap();
            for m in &pms {
                ensure!(
                    check_cut_parity(&g, m.edges(), &cut).unwrap(),
                    "{name}: parity fails on {side:?}"
                );
            }
        }
    }

    let (h, labels) = hagglund();
    let pms = enumerate_perfect_matchings(&h).unwrap();
    ensure!(!pms.is_empty(), "no perfect matchings of the windmill");
    for m in &pms {
        let types: Vec<HType> = (0..3)
            .map(|i| h_type(m.edges(), &labels, i).unwrap())
            .collect();
        let count = |t: HType| types.iter().filter(|&&x| x == t).count();
        ensure!(count(HType::T4) == 0, "type 4 matching {:?}", m.to_vec());
        ensure!(count(HType::T0) == 1, "types {types:?}");
        ensure!(count(HType::T2) <= 1, "types {types:?}");
        ensure!(count(HType::T1) >= 1, "types {types:?}");
    }

    let mut graphs: Vec<CubicGraph> = named().into_iter().map(|(_, g)| g).collect();
    graphs.extend(corpus(14, 3, 101));
    for g in &graphs {
        let pms = naive_perfect_matchings(g);
        let naive = naive_min_cover(g, &pms, 5);
        let fast = excessive_index(g, None).unwrap().value();
        match naive {
            Some(k) => ensure!(fast == Some(k), "graph {}: {fast:?} vs {k}", g.id()),
            None => ensure!(fast.is_some_and(|k| k > 5), "graph {}: {fast:?}", g.id()),
        }
    }

    graphs.retain(|g| g.m() <= 18);
    graphs.extend(corpus(12, 2, 103));
    for g in &graphs {
        let circuits = all_circuits(g);
        for doubled in odd_subgraphs(g) {
            let set = EdgeSet::from_indices(g, doubled.iter().copied()).unwrap();
            let mult = Multiplicity::from_doubled(g, &set).unwrap();
            let fast = decompose_circuits(g, &mult).unwrap();
            let slow = naive_circuit_multicover(g, &circuits, mult.target());
            ensure!(
                fast.is_some() == slow,
                "graph {} doubled {doubled:?}",
                g.id()
            );
        }
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        (
            "excessive index of Petersen, Tietze and K4",
            3,
            excessive_indices,
        ),
        (
            "excessive index 5 of the 34-vertex windmill",
            600,
            windmill_excessive_index,
        ),
        (
            "Tietze triangle property over all 4-covers",
            60,
            triangle_property,
        ),
        ("reduction roundtrip", 300, reduction_roundtrip),
        ("windmill structure", 10, windmill_structure),
        ("Berge-Fulkerson extension pipeline", 60, bf_pipeline),
        (
            "cycle cover classes of K4 and Petersen",
            60,
            small_classification,
        ),
        (
            "cycle cover class of the 34-vertex windmill",
            7200,
            windmill_classification,
        ),
        (
            "106-vertex graph needs 4m/3 + 2, with kill and resume",
            4 * 3600,
            triple_classification,
        ),
        ("property suites", 1200, property_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()))
            .and_then(|()| {
                let took = start.elapsed();
                if took > Duration::from_secs(limit) {
                    Err(format!("took {took:?}, limit {limit} s"))
                } else {
                    Ok(())
                }
            });
        let took = start.elapsed().as_secs_f64();
        let line = match result {
            Ok(()) => format!("criterion {:>2}: PASS  {name} ({took:.2} s)\n", i + 1),
            Err(e) => {
                failed.push(i + 1);
                format!("criterion {:>2}: FAIL  {name} ({took:.2} s): {e}\n", i + 1)
            }
        };
        // straight to the stream, so the line shows even when output is captured
        std::io::stderr().write_all(line.as_bytes()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
