mod common;

use common::{fixture_path, json, stderr, stdout, zlq};
use zlq::format::parse_family;
use zlq::lp::parse_lp;
use zlq_core::ilp::{IlpModel, RowKind};
use zlq_core::CandidateMode;

fn path_str(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_exit_codes() {
    for q in 3..=7 {
        let o = zlq(&["verify", path_str(&fixture_path(q))]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"));
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.zlq");
    std::fs::write(&bad, "# zlq-family v1\nq 3\nedge 0 1 2 ; 2 3 0\n").unwrap();
    let o = zlq(&["verify", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("FAIL q=3 edges=1"));
    assert!(out.contains("\nC2 edge=0 cells=(0,1|0),(2,3|2)\n"), "{out}");

    std::fs::write(&bad, "q 3\nedge 0 1 0 ; 2 3 1\n").unwrap();
    let o = zlq(&["verify", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let d = json(&stderr(&o));
    assert_eq!(d["error"], "parse");
    assert_eq!(d["line"], 2);

    let o = zlq(&["verify", "/nonexistent/f.zlq"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&stderr(&o))["error"], "io");
}

#[test]
fn verify_json_report() {
    let o = zlq(&["verify", "--json", path_str(&fixture_path(5))]);
    let v = json(&stdout(&o));
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["edges"], 13);
    assert_eq!(v["bound"], 43);
    assert_eq!(v["nondegenerate"], true);
}

#[test]
fn solve_exact_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.zlq");
    let log = dir.path().join("log.jsonl");
    let o = zlq(&["--quiet", "solve-exact", "--q", "3", "--out", path_str(&cert), "--log", path_str(&log)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "optimal |E2|=2, z_L(6,4)=14\n");
    assert!(stderr(&o).is_empty());
    let family = parse_family(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(family.len(), 2);
    let events: Vec<serde_json::Value> = std::fs::read_to_string(&log).unwrap().lines().map(json).collect();
    assert!(events.iter().any(|e| e["event"] == "bound"));
    assert!(events.iter().any(|e| e["event"] == "incumbent"));
    assert_eq!(events.last().unwrap()["event"], "done");

    let o = zlq(&["--quiet", "solve-exact", "--q", "4", "--node-limit", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("bounded |E2|>="));

    let o = zlq(&["solve-exact", "--q", "3", "--mode", "sideways"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&stderr(&o))["error"], "usage");
}

#[test]
fn search_summary_and_files() {
    let dir = tempfile::tempdir().unwrap();
    let best = dir.path().join("best.zlq");
    let log = dir.path().join("restarts.jsonl");
    let o = zlq(&[
        "--quiet",
        "search",
        "--q",
        "4",
        "--seed",
        "5",
        "--restarts",
        "4",
        "--out",
        path_str(&best),
        "--log",
        path_str(&log),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&stdout(&o));
    for key in ["q", "mode", "seed", "restarts", "best_size", "bound", "verified"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["verified"], true);
    let family = parse_family(&std::fs::read_to_string(&best).unwrap()).unwrap();
    assert_eq!(v["best_size"], family.len());
    assert_eq!(std::fs::read_to_string(&log).unwrap().lines().count(), 4);

    let o = zlq(&["search", "--q", "4", "--seed", "5", "--restarts", "4", "--time-limit", "0"]);
    assert_eq!(json(&stdout(&o))["best_size"], 0);
    assert_eq!(json(&stdout(&o))["completed"], 0);
}

#[test]
fn warm_start_rejections() {
    let o = zlq(&[
        "--quiet",
        "search",
        "--q",
        "5",
        "--seed",
        "1",
        "--restarts",
        "1",
        "--warm-start",
        path_str(&fixture_path(4)),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&stderr(&o))["error"], "input");
}

#[test]
fn export_and_reread_lp() {
    let dir = tempfile::tempdir().unwrap();
    for (q, prune) in [(2, false), (3, false), (3, true), (4, false)] {
        let lp = dir.path().join(format!("q{q}.lp"));
        let mut args = vec![
            "export-ilp",
            "--q",
            if q == 2 {
                "2"
            } else if q == 3 {
                "3"
            } else {
                "4"
            },
            "--out",
            path_str(&lp),
        ];
        if prune {
            args.push("--prune");
        }
        let o = zlq(&args);
        assert_eq!(o.status.code(), Some(0));
        let summary = json(&stdout(&o));
        let text = std::fs::read_to_string(&lp).unwrap();
        let doc = parse_lp(&text).unwrap();
        let model = IlpModel::build(q, CandidateMode::Full, prune).unwrap();
        assert_eq!(doc.rows.len(), model.constraints().len());
        assert_eq!(doc.objective.len(), model.candidates().len());
        assert_eq!(doc.binaries.len(), model.variable_count());
        let count = |prefix: &str| doc.rows.iter().filter(|r| r.name.starts_with(prefix)).count();
        assert_eq!(count("s_"), model.count_rows(|k| matches!(k, RowKind::S { .. })));
        assert_eq!(count("c2_"), model.count_rows(|k| matches!(k, RowKind::C2 { .. })));
        assert_eq!(count("c3_"), model.count_rows(|k| matches!(k, RowKind::C3 { .. })));
        assert_eq!(summary["rows"], doc.rows.len());
        let again = zlq(&args);
        assert_eq!(std::fs::read_to_string(&lp).unwrap(), text);
        assert_eq!(again.stdout, o.stdout);
        if q == 2 {
            assert_eq!(doc.binaries.iter().filter(|v| v.starts_with("o_")).count(), 3);
        }
        if q == 4 {
            assert_eq!(doc.binaries.iter().filter(|v| v.starts_with("x_")).count(), 435);
        }
    }
}

#[test]
fn import_solution_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let model = IlpModel::build(3, CandidateMode::Full, false).unwrap();
    let family = zlq::fixtures::reference_family(3).unwrap();
    let asg = model.assignment_for(&family).unwrap();
    let mut text = String::from("# solver: hand-made\n# objective 2\n");
    for v in model.variables() {
        text.push_str(&format!("{} {}\n", model.var_name(v), model.value(&asg, v)));
    }
    let sol = dir.path().join("sol.txt");
    let out = dir.path().join("fam.zlq");
    std::fs::write(&sol, &text).unwrap();
    let o = zlq(&["import-solution", "--model-q", "3", "--solution", path_str(&sol), "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&stdout(&o));
    assert_eq!(v["objective"], 2);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["agree"], true);
    assert_eq!(parse_family(&std::fs::read_to_string(&out).unwrap()).unwrap(), family);

    // flip one occupancy variable: the S rows no longer hold
    let flipped = text.replacen(" 1\n", " 0\n", 1);
    std::fs::write(&sol, flipped).unwrap();
    let o = zlq(&["import-solution", "--model-q", "3", "--solution", path_str(&sol)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&stdout(&o))["s_consistent"], false);

    std::fs::write(&sol, "x_0 1\n").unwrap();
    let o = zlq(&["import-solution", "--model-q", "3", "--solution", path_str(&sol)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn families_and_ratios() {
    let o = zlq(&["families"]);
    assert_eq!(o.status.code(), Some(0));
    let sizes: Vec<u64> = stdout(&o).lines().map(|l| json(l)["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, [2, 6, 13, 22, 32]);
    let o = zlq(&["families", "--q", "6", "--emit"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture_path(6)).unwrap());
    assert_eq!(zlq(&["families", "--emit"]).status.code(), Some(2));
    assert_eq!(zlq(&["families", "--q", "9"]).status.code(), Some(2));

    let v = json(&stdout(&zlq(&["ratios"])));
    let gaps: Vec<&str> = v["table"].as_array().unwrap().iter().filter_map(|r| r["gap_ratio"].as_str()).collect();
    assert_eq!(gaps, ["30.0%", "≥43.3%", "≥52.4%", "≥57.1%"]);
    assert_eq!(v["k4t"][0]["bound"], 14);
    assert_eq!(v["k4t"][1]["bound"], 68);
}

#[test]
fn recognize_graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    // K_4 incidence with left vertices listed in reverse
    let mut text = String::from("6 4\n");
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    for (x, (i, j)) in pairs.iter().rev().enumerate() {
        text.push_str(&format!("{x} {i}\n{x} {j}\n"));
    }
    std::fs::write(&g, &text).unwrap();
    let o = zlq(&["recognize", "--graph", path_str(&g)]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&stdout(&o));
    assert_eq!(v["result"], "incidence");
    assert_eq!(v["left"][0], "2,3");
    assert_eq!(v["checked"], true);

    std::fs::write(&g, "6 4\n0 0\n1 1\n").unwrap();
    let o = zlq(&["recognize", "--graph", path_str(&g)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&stdout(&o))["reason"], "edge_count");

    std::fs::write(&g, "6 4\n0 9\n").unwrap();
    assert_eq!(zlq(&["recognize", "--graph", path_str(&g)]).status.code(), Some(2));
}

#[test]
fn lift_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q4.zlq");
    let o = zlq(&["--quiet", "lift", "--input", path_str(&fixture_path(3)), "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&stdout(&o));
    assert_eq!((v["from_q"].as_u64(), v["to_q"].as_u64(), v["target"].as_u64()), (Some(3), Some(4), Some(3)));
    assert_eq!(v["achieved"], true);
    let lifted = parse_family(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["bound"], 20 + lifted.len() as u64);
    assert_eq!(zlq(&["verify", path_str(&out)]).status.code(), Some(0));
}

#[test]
fn stats_and_help() {
    let v = json(&stdout(&zlq(&["stats", "--q", "4"])));
    assert_eq!((v["full"].as_u64(), v["available"].as_u64()), (Some(435), Some(30)));
    let o = zlq(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("solve-exact"));
    assert_eq!(zlq(&[]).status.code(), Some(2));
}

#[test]
fn threads_from_environment() {
    let o = std::process::Command::new(env!("CARGO_BIN_EXE_zlq"))
        .args(["solve-exact", "--q", "3"])
        .env("ZLQ_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("threads=3"));
}

#[test]
fn lift_shortfall_is_reported_even_when_quiet() {
    let input = fixture_path(4);
    let o = zlq(&["--quiet", "lift", "--input", path_str(&input), "--restarts", "0", "--oracle", "never"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("target 8 NOT met"), "{}", stderr(&o));
    let v = json(&stdout(&o));
    assert_eq!(v["achieved"], false);
    assert_eq!(v["size"], 6);
    assert_eq!(v["target_bound"], 38);
}
