use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use undirectify::exact::GraphDistribution;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_undirectify"));
    c.env_remove("UNDIRECTIFY_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const DGIL: &str = r#"{"class":"IAG","instance":"directed-gilbert","params":{"p":0.5},"n":2}"#;

#[test]
fn phi_of_directed_gilbert_on_two_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "dgil.json", DGIL);
    let out = dir.path().join("dist.json");
    let o = run(&["phi", "--spec", &spec, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let d = GraphDistribution::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(d.pmf(), &[0.25, 0.75]);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"1\": 0.75") && text.contains("\"0\": 0.25"), "{text}");
}

#[test]
fn tv_of_a_file_with_itself_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "dgil.json", DGIL);
    let d = dir.path().join("d.json");
    assert_eq!(code(&run(&["phi", "--spec", &spec, "--out", d.to_str().unwrap()])), 0);
    let o = run(&["tv", "--a", d.to_str().unwrap(), "--b", d.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn tv_against_the_undirected_law() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"class":"IAG","instance":"directed-gilbert","params":{"p":0.3},"n":3}"#);
    let b = write(dir.path(), "b.json", r#"{"class":"IEG","instance":"gilbert","params":{"p":0.51},"n":3}"#);
    let (da, db) = (dir.path().join("da.json"), dir.path().join("db.json"));
    assert_eq!(code(&run(&["phi", "--spec", &a, "--out", da.to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["phi", "--spec", &b, "--out", db.to_str().unwrap()])), 0);
    let o = run(&["tv", "--a", da.to_str().unwrap(), "--b", db.to_str().unwrap()]);
    let tv: f64 = stdout(&o).trim().parse().unwrap();
    assert!(tv <= 1e-12, "{tv}");
}

#[test]
fn tv_rejects_mismatched_spaces() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"n":2,"kind":"graph","pmf":{"0":1}}"#);
    let b = write(dir.path(), "b.json", r#"{"n":3,"kind":"graph","pmf":{"0":1}}"#);
    assert_eq!(code(&run(&["tv", "--a", &a, "--b", &b])), 2);
}

#[test]
fn verify_gilbert_phi_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["verify", "--suite", "gilbert-phi", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["base_seed"], 0xDEAD_BEEFu64);
}

#[test]
fn failing_suite_exits_one() {
    let o = run(&["-q", "verify", "--suite", "growth-bound", "--format", "csv"]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.starts_with("suite,n,statistic,estimate,ci_low,ci_high,bound\n"));
    assert_eq!(text.lines().count(), 1 + 240);
}

#[test]
fn pipeline_series_has_one_block_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", r#"{"replicates": 200, "n_grid": [6, 8, 10, 12]}"#);
    let o = run(&["verify", "--suite", "pipeline", "--config", &cfg, "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = undirectify_cli::parse_series(&o.stdout).unwrap();
    assert_eq!(rows.len(), 4 * 8);
    for n in [6, 8, 10, 12] {
        assert_eq!(rows.iter().filter(|r| r.n == Some(n)).count(), 8);
    }
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["bogus"]);
    assert_eq!(code(&o), 2);
    let o = run(&["verify", "--suite", "nope"]);
    assert_eq!(code(&o), 2);
    let o = run(&["generate", "--spec", "x.json", "--seed", "-4"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn input_errors_have_distinct_messages() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"class\": ");
    let o = run(&["phi", "--spec", &bad]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("malformed JSON"), "{}", stderr(&o));

    let infeasible = write(
        dir.path(),
        "inf.json",
        r#"{"class":"ESRG","instance":"classical-er","params":{"m":4},"n":2}"#,
    );
    let o = run(&["generate", "--spec", &infeasible]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("infeasible"), "{}", stderr(&o));

    let wrong = write(dir.path(), "w.json", r#"{"class":"IEG","instance":"directed-gilbert","params":{"p":0.5},"n":2}"#);
    let o = run(&["generate", "--spec", &wrong]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("invalid model spec"), "{}", stderr(&o));

    let o = run(&["phi", "--spec", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cannot read"));
}

#[test]
fn failed_run_leaves_no_output() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "[]");
    let out = dir.path().join("out.json");
    assert_eq!(code(&run(&["phi", "--spec", &bad, "--out", out.to_str().unwrap()])), 2);
    assert!(!out.exists());
}

#[test]
fn generate_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "g.json", r#"{"class":"IEG","instance":"gilbert","params":{"p":0.5},"n":6}"#);
    let a = run(&["generate", "--spec", &spec, "--count", "20"]);
    let b = run(&["generate", "--spec", &spec, "--count", "20", "--seed", "0xDEADBEEF"]);
    let c = run(&["generate", "--spec", &spec, "--count", "20", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));
    assert_eq!(stdout(&a).lines().count(), 20);
    for line in stdout(&a).lines() {
        undirectify::graph::GraphJson::parse(line).unwrap();
    }
    let threaded = bin().env("UNDIRECTIFY_THREADS", "1").args(["generate", "--spec", &spec, "--count", "20"]).output().unwrap();
    assert_eq!(stdout(&threaded), stdout(&a));
}

#[test]
fn spec_seed_is_used_unless_overridden() {
    let dir = tempfile::tempdir().unwrap();
    let seeded = write(dir.path(), "s.json", r#"{"class":"IEG","instance":"gilbert","params":{"p":0.5},"n":6,"seed":7}"#);
    let plain = write(dir.path(), "p.json", r#"{"class":"IEG","instance":"gilbert","params":{"p":0.5},"n":6}"#);
    let a = run(&["generate", "--spec", &seeded, "--count", "5"]);
    let b = run(&["generate", "--spec", &plain, "--count", "5", "--seed", "7"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn bad_thread_count_is_rejected() {
    let o = bin().env("UNDIRECTIFY_THREADS", "zero").args(["verify", "--suite", "gilbert-phi"]).output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn validate_only_does_not_run() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "dgil.json", DGIL);
    let out = dir.path().join("o.json");
    let o = run(&["--validate-only", "phi", "--spec", &spec, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(!out.exists());
    let cfg = write(dir.path(), "c.json", r#"{"replicates": 0}"#);
    assert_eq!(code(&run(&["verify", "--suite", "martingale", "--config", &cfg, "--validate-only"])), 2);
}

#[test]
fn couple_reports_errors_and_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "a.json", r#"{"class":"IAG","instance":"directed-gilbert","params":{"p":0.1},"n":4}"#);
    let out = dir.path().join("r.json");
    let o = run(&[
        "couple", "--pair", "iag-ieg-approx", "--spec", &spec, "--replicates", "5000", "--keep", "10", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["xi"].as_array().unwrap().len(), 10);
    assert_eq!(v["aggregates"]["total_xi2"], 0);
    assert_eq!(v["pass"], true);

    let spec = write(dir.path(), "s.json", r#"{"class":"ASRG","instance":"directed-classical-er","params":{"m":5},"n":10}"#);
    let o = run(&["couple", "--pair", "asrg-esrg", "--spec", &spec, "--replicates", "2000"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v["aggregates"]["rule_counts"];
    let total = r["I"].as_u64().unwrap() + r["II"].as_u64().unwrap() + r["III"].as_u64().unwrap();
    assert_eq!(total, 5 * 2000);
    assert_eq!(v["aggregates"]["total_xi1"], r["III"]);

    let o = run(&["couple", "--pair", "asrg-esrg", "--spec", &spec, "--replicates", "100", "--format", "csv"]);
    assert!(stdout(&o).starts_with("suite,n,statistic"));
}

#[test]
fn couple_rejects_summed_probability_above_one() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "a.json", r#"{"class":"IAG","instance":"directed-gilbert","params":{"p":0.6},"n":3}"#);
    let o = run(&["couple", "--pair", "iag-ieg-approx", "--spec", &spec]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("pi(v,w)+pi(w,v)"), "{}", stderr(&o));
    assert_eq!(code(&run(&["couple", "--pair", "iag-ieg-exact", "--spec", &spec, "--replicates", "100"])), 0);
}
