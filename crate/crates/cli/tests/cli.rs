use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::Command;
use tempfile::TempDir;

fn avgreg(dir: &Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_avgreg")).current_dir(dir).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn ok(dir: &Path, args: &[&str]) {
    let (code, err) = avgreg(dir, args);
    assert_eq!(code, 0, "{args:?}: {err}");
}

fn json(path: PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn without_wall_time(path: PathBuf) -> String {
    std::fs::read_to_string(path).unwrap().lines().filter(|l| !l.contains("\"wall_time_ms\"")).collect()
}

/// A random average system and its profile partition, which verifies.
fn passing(dir: &Path) {
    ok(dir, &["generate", "--kind", "random-average", "--seed", "3", "--sizes", "4,4,4", "--omega", "6", "--out", "inst.json", "--report", "gen.json"]);
    ok(dir, &["partition", "--input", "inst.json", "--out", "part.json", "--report", "construct.json"]);
}

#[test]
fn verify_on_passing_instance_exits_zero() {
    let t = TempDir::new().unwrap();
    passing(t.path());
    ok(t.path(), &["verify", "--input", "inst.json", "--partition", "part.json", "--epsilon", "1/10", "--budget", "const:1/10", "--report", "r.json", "--tsv", "r.tsv"]);
    let r = json(t.path().join("r.json"));
    assert_eq!(r["pass"], true);
    assert_eq!(r["command"], "verify");
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(r["config"]["command"]["verify"]["epsilon"], "1/10");
    assert!(r["wall_time_ms"].is_u64());
    let tsv = std::fs::read_to_string(t.path().join("r.tsv")).unwrap();
    let rows = tsv.lines().count() - 1;
    assert_eq!(rows, r["result"]["verification"]["cells"].as_array().unwrap().len());
    assert!(tsv.lines().skip(1).all(|l| l.ends_with("pass")));
}

#[test]
fn verify_on_corrupted_partition_exits_one_with_witness() {
    let t = TempDir::new().unwrap();
    passing(t.path());
    let mut p = json(t.path().join("part.json"));
    for side in p["sides"].as_array_mut().unwrap() {
        for a in side["assignment"].as_array_mut().unwrap() {
            *a = 1.into();
        }
    }
    std::fs::write(t.path().join("bad.json"), p.to_string()).unwrap();
    let (code, _) = avgreg(t.path(), &["verify", "--input", "inst.json", "--partition", "bad.json", "--epsilon", "1/10", "--budget", "const:1/10", "--report", "r.json"]);
    assert_eq!(code, 1);
    let r = json(t.path().join("r.json"));
    assert_eq!(r["pass"], false);
    let cells = r["result"]["verification"]["cells"].as_array().unwrap();
    let failed: Vec<&Value> = cells.iter().filter(|c| c["pass"] == false).collect();
    assert!(!failed.is_empty());
    for c in failed {
        let w = c["witness"].as_array().unwrap();
        assert_ne!(w[0]["value"], w[1]["value"]);
    }
}

#[test]
fn malformed_weights_exit_two() {
    let t = TempDir::new().unwrap();
    let bad = [
        r#"{"kind":"function","parts":[{"labels":["a","b"],"weights":[[1,2],[1,3]]},{"labels":["c"],"weights":[[1,1]]}],"values":[[0,1],[1,1]]}"#,
        r#"{"kind":"function","parts":[{"labels":["a","b"],"weights":[[3,2],[-1,2]]},{"labels":["c"],"weights":[[1,1]]}],"values":[[0,1],[1,1]]}"#,
        r#"{"kind":"function","parts":[{"labels":["a"],"weights":[[1,0]]},{"labels":["c"],"weights":[[1,1]]}],"values":[[0,1]]}"#,
        r#"{"kind":"function","parts":[{"labels":["a"],"weights":["1"]},{"labels":["c"],"weights":[[1,1]]}],"values":[[0,1]]}"#,
    ];
    for (i, text) in bad.iter().enumerate() {
        std::fs::write(t.path().join("bad.json"), text).unwrap();
        let (code, err) = avgreg(t.path(), &["stability", "--input", "bad.json", "--delta", "1/10"]);
        assert_eq!(code, 2, "case {i}: {err}");
    }
}

#[test]
fn usage_errors_exit_two() {
    let t = TempDir::new().unwrap();
    passing(t.path());
    let cases: [&[&str]; 4] = [
        &["verify", "--input", "inst.json", "--epsilon", "1/10", "--budget", "const:1/10"],
        &["verify", "--input", "inst.json", "--partition", "part.json", "--epsilon", "x", "--budget", "const:1/10"],
        &["verify", "--input", "inst.json", "--partition", "part.json", "--epsilon", "1/10", "--budget", "lin:1/2"],
        &["verify", "--input", "missing.json", "--partition", "part.json", "--epsilon", "1/10", "--budget", "1/10"],
    ];
    for args in cases {
        assert_eq!(avgreg(t.path(), args).0, 2, "{args:?}");
    }
}

#[test]
fn generation_is_deterministic() {
    let t = TempDir::new().unwrap();
    for kind in ["average", "random-average", "parity", "gs", "halfsimplex", "gs-sample"] {
        for out in ["a.json", "b.json"] {
            ok(t.path(), &["generate", "--kind", kind, "--seed", "5", "--out", out, "--report", "g.json"]);
        }
        let (a, b) = (t.path().join("a.json"), t.path().join("b.json"));
        assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap(), "{kind}");
    }
}

#[test]
fn reports_are_identical_up_to_wall_time() {
    let t = TempDir::new().unwrap();
    ok(t.path(), &["generate", "--kind", "gs-sample", "--seed", "1", "--n", "3", "--sizes", "5,5,5", "--out", "s.json", "--report", "g.json"]);
    let mut runs = Vec::new();
    for threads in ["1", "1", "4"] {
        ok(t.path(), &["--threads", threads, "gs3", "verify", "--input", "s.json", "--report", "r.json"]);
        runs.push(without_wall_time(t.path().join("r.json")).replace(&format!("\"threads\": {threads}"), ""));
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn gs3_pipeline_and_negative_control() {
    let t = TempDir::new().unwrap();
    ok(t.path(), &["generate", "--kind", "gs-sample", "--seed", "4", "--n", "3", "--sizes", "5,5,5", "--out", "s.json", "--report", "g.json"]);
    ok(t.path(), &["gs3", "verify", "--input", "s.json", "--report", "v.json"]);
    let v = json(t.path().join("v.json"));
    assert_eq!(v["result"]["orders_source"], "file");
    assert_eq!(v["result"]["homogeneity"]["strict_failures"].as_array().unwrap().len(), 0);
    ok(t.path(), &["gs3", "analyze", "--input", "s.json", "--report", "a.json", "--tsv", "census.tsv"]);
    let a = json(t.path().join("a.json"));
    assert_eq!(a["result"]["families"].as_array().unwrap().len(), 3);
    let census = std::fs::read_to_string(t.path().join("census.tsv")).unwrap();
    assert!(census.starts_with("u\tv\tclass\tcount\n"));
    ok(t.path(), &["gs3", "partition", "--input", "s.json", "--out", "p.json", "--report", "p_report.json"]);
    assert_eq!(json(t.path().join("p.json"))["d"], 2);

    ok(t.path(), &["generate", "--kind", "gs", "--n", "2", "--out", "full.json", "--report", "g.json"]);
    let (code, _) = avgreg(t.path(), &["gs3", "verify", "--input", "full.json", "--report", "f.json"]);
    assert_eq!(code, 1);
    let f = json(t.path().join("f.json"));
    let viol = f["result"]["two_direction"]["violations"].as_array().unwrap();
    let at_zero: Vec<&Value> =
        viol.iter().filter(|v| v["length"] == 1 && v["prefixes"] == serde_json::json!(["0", "0", "0"])).collect();
    assert_eq!(at_zero.len(), 3);
    assert!(at_zero.iter().all(|v| v["kind"] == "directions" && v["directions"].as_array().unwrap().len() == 3));
}

#[test]
fn embed_writes_witnesses() {
    let t = TempDir::new().unwrap();
    ok(t.path(), &["generate", "--kind", "halfsimplex", "--points", "4", "--out", "h.json", "--report", "g.json"]);
    ok(t.path(), &["embed", "monotone", "--input", "h.json", "--witness", "m.json", "--report", "r.json"]);
    assert_eq!(json(t.path().join("m.json"))["verdict"], "MONOTONE");
    ok(t.path(), &["embed", "halfsimplex", "--input", "h.json", "--witness", "w.json", "--report", "r.json"]);
    let w = json(t.path().join("w.json"));
    assert_eq!(w["verdict"], "REALIZABLE");
    assert_eq!(w["values"].as_array().unwrap().len(), 3);

    ok(t.path(), &["generate", "--kind", "gs", "--n", "2", "--out", "full.json", "--report", "g.json"]);
    let (code, _) = avgreg(t.path(), &["embed", "monotone", "--input", "full.json", "--witness", "o.json", "--report", "r.json"]);
    assert_eq!(code, 1);
    assert_eq!(json(t.path().join("o.json"))["verdict"], "NOT_MONOTONE");
    ok(t.path(), &["embed", "gs3", "--input", "full.json", "--n", "2", "--witness", "e.json", "--report", "r.json"]);
    assert_eq!(json(t.path().join("e.json"))["verdict"], "EMBEDDED");
}

#[test]
fn stability_reports_a_valid_witness() {
    let t = TempDir::new().unwrap();
    ok(t.path(), &["generate", "--kind", "average", "--seed", "2", "--out", "a.json", "--report", "g.json"]);
    for mode in ["exact", "greedy"] {
        ok(t.path(), &["stability", "--input", "a.json", "--delta", "1/10", "--mode", mode, "--report", "s.json"]);
        let s = json(t.path().join("s.json"));
        assert_eq!(s["result"]["witness_valid"], true);
        assert_eq!(s["seed"], 0);
        let len = s["result"]["length"].as_u64().unwrap() as usize;
        assert_eq!(s["result"]["witness"]["xs"].as_array().unwrap().len(), len);
        assert!(s["result"]["witness"]["alpha"].as_str().unwrap().contains('/'));
    }
}

#[test]
fn config_runs_match_flag_runs() {
    let t = TempDir::new().unwrap();
    passing(t.path());
    let cfg = "command = \"verify\"\ninput = \"inst.json\"\npartition = \"part.json\"\nepsilon = \"1/10\"\nbudget = \"exp:1/2\"\nreport = \"c.json\"\nthreads = 2\n";
    std::fs::write(t.path().join("run.toml"), cfg).unwrap();
    ok(t.path(), &["run", "--config", "run.toml"]);
    let from_config = without_wall_time(t.path().join("c.json"));
    ok(t.path(), &["--threads", "2", "verify", "--input", "inst.json", "--partition", "part.json", "--epsilon", "1/10", "--budget", "exp:1/2", "--report", "c.json"]);
    assert_eq!(from_config, without_wall_time(t.path().join("c.json")));
    let c = json(t.path().join("c.json"));
    assert_eq!(c["config"]["threads"], 2);
    assert_eq!(c["result"]["verification"]["budget_fn"], "exp:1/2");

    std::fs::write(t.path().join("typo.toml"), cfg.replace("epsilon", "epsilonn")).unwrap();
    assert_eq!(avgreg(t.path(), &["run", "--config", "typo.toml"]).0, 2);
    std::fs::write(t.path().join("wrong.toml"), format!("{cfg}delta = \"1/2\"\n")).unwrap();
    assert_eq!(avgreg(t.path(), &["run", "--config", "wrong.toml"]).0, 2);
}
