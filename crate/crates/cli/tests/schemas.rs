//! Every artifact the CLI reads or writes validates against its shipped schema.

use std::path::{Path, PathBuf};
use std::process::Command;

use jsonschema::{Retrieve, Uri, Validator};
use serde_json::Value;

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

struct LocalSchemas;

impl Retrieve for LocalSchemas {
    fn retrieve(&self, uri: &Uri<String>) -> Result<Value, Box<dyn std::error::Error + Send + Sync>> {
        let name = uri.path().as_str().rsplit('/').next().unwrap_or_default().to_string();
        Ok(serde_json::from_str(&std::fs::read_to_string(schema_dir().join(name))?)?)
    }
}

fn validator(name: &str) -> Validator {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_dir().join(name)).unwrap()).unwrap();
    jsonschema::options()
        .with_base_uri("file:///schemas/")
        .with_retriever(LocalSchemas)
        .build(&schema)
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(v: &Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}\n{doc}");
}

fn run(args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_undirectify")).args(args).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap())
}

const SPECS: &[&str] = &[
    r#"{"class":"IAG","instance":"directed-gilbert","params":{"p":0.5},"n":2}"#,
    r#"{"class":"IEG","instance":"gilbert","params":{"p":0.2},"n":5,"seed":3}"#,
    r#"{"class":"ESRG","instance":"classical-er","params":{"m":3},"n":5}"#,
    r#"{"class":"ASRG","instance":"directed-classical-er","params":{"m":4},"n":5}"#,
    r#"{"class":"IAG","instance":"ird","params":{"type_pmf":[0.5,0.5],"kernel":[[1,2],[0.5,1]]},"n":6}"#,
    r#"{"class":"IEG","instance":"girg","params":{"alpha":2.5,"lambda":0.5,"dim":2,"weights":{"law":"pareto","exponent":2.5,"scale":1}},"n":6}"#,
    r#"{"class":"ASRG","instance":"custom","params":{"mu":[[0,0.5,0],[0,0,0.25],[0.25,0,0]],"m":2},"n":3}"#,
    r#"{"class":"ASRG","instance":"cci","params":{"tau":2,"q":[0.5,0.5],"l":1,"r":1,"p":[[1]],"I":[[1],[1]],"J":[[1],[1]],"alpha":0.5},"n":8}"#,
];

#[test]
fn specs_accepted_by_the_library_validate() {
    let v = validator("model-spec.schema.json");
    for s in SPECS {
        undirectify::models::ModelSpec::from_json(s).unwrap().validate().unwrap();
        assert_valid(&v, &serde_json::from_str(s).unwrap());
    }
}

#[test]
fn malformed_specs_are_rejected() {
    let v = validator("model-spec.schema.json");
    for s in [
        r#"{"class":"IAG","instance":"directed-gilbert","params":{"p":1.5},"n":2}"#,
        r#"{"class":"DAG","instance":"gilbert","params":{"p":0.5},"n":2}"#,
        r#"{"class":"IEG","instance":"gilbert","params":{"p":0.5}}"#,
        r#"{"class":"IEG","instance":"gilbert","params":{"p":0.5},"n":2,"extra":1}"#,
        r#"{"class":"ESRG","instance":"classical-er","params":{},"n":3}"#,
    ] {
        assert!(!v.is_valid(&serde_json::from_str(s).unwrap()), "{s}");
    }
}

#[test]
fn generated_structures_validate() {
    let dir = tempfile::tempdir().unwrap();
    let (g, d) = (validator("graph.schema.json"), validator("digraph.schema.json"));
    for (k, s) in SPECS.iter().enumerate() {
        let p = dir.path().join(format!("{k}.json"));
        std::fs::write(&p, s).unwrap();
        let (code, out) = run(&["generate", "--spec", p.to_str().unwrap(), "--count", "5"]);
        assert_eq!(code, 0);
        for line in out.lines() {
            let doc: Value = serde_json::from_str(line).unwrap();
            assert_valid(if doc.get("arcs").is_some() { &d } else { &g }, &doc);
        }
    }
    assert_valid(&g, &serde_json::json!({"n": 3, "code": "0x5"}));
    assert!(!g.is_valid(&serde_json::json!({"n": 3, "edges": [[0, 1]]})));
    assert!(!g.is_valid(&serde_json::json!({"n": 3, "edges": [], "code": "0"})));
}

#[test]
fn distributions_validate() {
    let dir = tempfile::tempdir().unwrap();
    let v = validator("distribution.schema.json");
    for s in &SPECS[..4] {
        let p = dir.path().join("s.json");
        let out = dir.path().join("d.json");
        std::fs::write(&p, s).unwrap();
        let (code, _) = run(&["phi", "--spec", p.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_valid(&v, &serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap());
    }
}

#[test]
fn couple_reports_validate() {
    let dir = tempfile::tempdir().unwrap();
    let v = validator("couple-report.schema.json");
    for (pair, spec) in [("iag-ieg-exact", SPECS[0]), ("iag-ieg-approx", SPECS[4]), ("asrg-esrg", SPECS[3])] {
        let p = dir.path().join("s.json");
        std::fs::write(&p, spec).unwrap();
        let (_, out) = run(&["couple", "--pair", pair, "--spec", p.to_str().unwrap(), "--replicates", "500"]);
        assert_valid(&v, &serde_json::from_str(&out).unwrap());
    }
}

#[test]
fn verify_reports_and_configs_validate() {
    let dir = tempfile::tempdir().unwrap();
    let (report, config) = (validator("verify-report.schema.json"), validator("experiment-config.schema.json"));
    let series = validator("series.schema.json");
    let cfg = r#"{"replicates": 300, "tail_replicates": 300, "oracle_replicates": 300, "instances": 3, "m_max": 20,
                  "omegas": [{"kind": "log"}, {"kind": "constant", "c": 2}], "pipeline": {"family": "gilbert-er", "alpha": 1}}"#;
    assert_valid(&config, &serde_json::from_str(cfg).unwrap());
    let p = dir.path().join("cfg.json");
    std::fs::write(&p, cfg).unwrap();
    for suite in undirectify::montecarlo::Suite::ALL {
        let (_, out) = run(&["-q", "verify", "--suite", suite.name(), "--config", p.to_str().unwrap()]);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_valid(&report, &doc);
        let (_, csv) = run(&["-q", "verify", "--suite", suite.name(), "--config", p.to_str().unwrap(), "--format", "csv"]);
        for row in undirectify_cli::parse_series(csv.as_bytes()).unwrap() {
            assert_valid(&series, &serde_json::to_value(&row).unwrap());
        }
    }
    assert!(!config.is_valid(&serde_json::json!({"replicates": 0})));
    assert!(!config.is_valid(&serde_json::json!({"unknown": 1})));
}
