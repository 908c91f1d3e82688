use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn cclique(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cclique"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stats(o: &Output) -> Value {
    let text = String::from_utf8_lossy(&o.stdout);
    serde_json::from_str(text.lines().last().unwrap()).unwrap()
}

#[test]
fn generate_prints_summary_and_writes_header() {
    let dir = tempfile::tempdir().unwrap();
    let o = cclique(&["generate", "--family", "grid", "--rows", "4", "--cols", "4", "--out", "g.txt"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("m=24"));
    let text = std::fs::read_to_string(dir.path().join("g.txt")).unwrap();
    assert_eq!(text.lines().next(), Some("p cc 16 24"));

    let o = cclique(&["generate", "--family", "forest-union", "--n", "8", "--k", "1", "--seed", "7", "--out", "f.txt"], dir.path());
    assert_eq!(code(&o), 0);
    let g = cclique::graph::load(dir.path().join("f.txt")).unwrap();
    assert!(g.m() <= 7);

    let o = cclique(&["generate", "--family", "grid", "--rows", "0", "--cols", "3", "--out", "x.txt"], dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn every_algorithm_output_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    cclique(&["generate", "--family", "forest-union", "--n", "300", "--k", "16", "--seed", "2", "--out", "g.txt"], d);
    for (alg, kind, extra) in [
        ("forest-decomp", "forests", vec!["--a", "16"]),
        ("color-a2", "proper", vec![]),
        ("color-a2eps", "proper", vec!["--eps", "1"]),
        ("color-a1eps", "proper", vec!["--a", "16", "--p", "8"]),
        ("color-oa", "proper", vec!["--a", "16", "--eps", "2.5"]),
        ("mis", "mis", vec!["--a", "16"]),
        ("universal", "proper", vec![]),
    ] {
        let mut args = vec!["run", "--algorithm", alg, "--graph", "g.txt", "--solution", "s.txt", "--csv", "runs.csv"];
        args.extend(extra.iter().copied());
        let o = cclique(&args, d);
        assert_eq!(code(&o), 0, "{alg}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stats(&o)["verified"], true);
        let mut vargs = vec!["verify", "--graph", "g.txt", "--solution", "s.txt", "--kind", kind];
        if kind == "forests" {
            vargs.extend(["--a", "16"]);
        }
        let o = cclique(&vargs, d);
        assert_eq!(code(&o), 0, "{alg} verify: {}", String::from_utf8_lossy(&o.stdout));
    }
    let csv = std::fs::read_to_string(d.join("runs.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "algorithm,n,m,a,eps,p,k,t,rounds,lenzen_calls,palette_or_mis,verified");
    assert_eq!(lines.len(), 8);
}

#[test]
fn forest_decomp_rounds_match_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let o = cclique(
        &["run", "--algorithm", "forest-decomp", "--family", "grid", "--rows", "6", "--cols", "6", "--a", "2", "--eps", "2", "--stats", "st.json"],
        dir.path(),
    );
    assert_eq!(code(&o), 0);
    let s: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("st.json")).unwrap()).unwrap();
    // one peeling iteration, one announcement, nothing left to ship
    assert_eq!(s["extra"]["peel_rounds"], 1);
    assert_eq!(s["extra"]["residual_edges"], 0);
    assert_eq!(s["rounds"], 2);
    for key in ["algorithm", "n", "m", "a", "rounds", "lenzen_calls", "total_bits", "max_message_bits", "palette"] {
        assert!(s.get(key).is_some(), "{key}");
    }
}

#[test]
fn mis_on_edgeless_graph_takes_everyone() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("e.txt"), "p cc 10 0\n").unwrap();
    let o = cclique(&["run", "--algorithm", "mis", "--graph", "e.txt", "--a", "2"], dir.path());
    assert_eq!(code(&o), 0);
    assert_eq!(stats(&o)["mis_size"], 10);
}

#[test]
fn invalid_parameters_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = cclique(
        &["run", "--algorithm", "color-oa", "--family", "forest-union", "--n", "200", "--forests", "16", "--eps", "1.5"],
        dir.path(),
    );
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid parameters"));
    let o = cclique(&["run", "--algorithm", "mis", "--graph", "missing.txt"], dir.path());
    assert_eq!(code(&o), 2);
    // an arboricity promise far too small
    let o = cclique(&["run", "--algorithm", "forest-decomp", "--family", "complete", "--n", "40", "--a", "1"], dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn tampered_solutions_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    cclique(&["generate", "--family", "cycle", "--n", "12", "--out", "c.txt"], d);
    cclique(&["run", "--algorithm", "color-a2", "--graph", "c.txt", "--solution", "col.txt"], d);
    let text = std::fs::read_to_string(d.join("col.txt")).unwrap();
    let c1 = text.lines().nth(1).unwrap().split(' ').nth(2).unwrap().to_string();
    let tampered = text.replacen(text.lines().next().unwrap(), &format!("v 0 {c1}"), 1);
    std::fs::write(d.join("bad.txt"), tampered).unwrap();
    let o = cclique(&["verify", "--graph", "c.txt", "--solution", "bad.txt", "--kind", "proper"], d);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("Monochromatic"));

    cclique(&["run", "--algorithm", "mis", "--graph", "c.txt", "--solution", "m.txt"], d);
    let text = std::fs::read_to_string(d.join("m.txt")).unwrap();
    let line = text.lines().find(|l| l.ends_with(" 1")).unwrap();
    let removed = text.replacen(line, &line.replace(" 1", " 0"), 1);
    std::fs::write(d.join("m2.txt"), removed).unwrap();
    let o = cclique(&["verify", "--graph", "c.txt", "--solution", "m2.txt", "--kind", "mis"], d);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("NotMaximal"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(
        d.join("run.cfg"),
        "# plain key=value\nalgorithm=color-a2\nfamily=forest-union\nn=128\nforests=3\ngraph_seed=4\neps=2\n",
    )
    .unwrap();
    let o = cclique(&["run", "--config", "run.cfg"], d);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stats(&o)["algorithm"], "color-a2");
    assert_eq!(stats(&o)["a"], 3);
    let o = cclique(&["run", "--config", "run.cfg", "--algorithm", "mis"], d);
    assert_eq!(code(&o), 0);
    assert_eq!(stats(&o)["algorithm"], "mis");
    std::fs::write(d.join("bad.cfg"), "algorithm=mis\n").unwrap();
    assert_eq!(code(&cclique(&["run", "--config", "bad.cfg"], d)), 2);
}

#[test]
fn bench_rows_and_empty_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let o = cclique(&["bench", "--algorithm", "mis", "--a-values", "4,16,64", "--n-values", "512"], dir.path());
    assert_eq!(code(&o), 0);
    let out = String::from_utf8_lossy(&o.stdout).to_string();
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[1..].iter().all(|r| r.ends_with(",1")));

    let o = cclique(&["bench", "--algorithm", "color-a2eps", "--csv", "b.csv"], dir.path());
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(dir.path().join("b.csv")).unwrap();
    assert_eq!(text, "algorithm,n,m,a,eps,p,k,t,rounds,lenzen_calls,palette_or_mis,verified\n");
}
