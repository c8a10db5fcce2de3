use std::fs;
use std::process::{Command, Output};

use quadbound::lab::ExperimentResult;
use quadbound::map::MapJson;

fn quadbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadbound")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = quadbound(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn sample_is_deterministic() {
    let a = ok(&["sample", "--n", "10", "--sigma", "3", "--seed", "7"]);
    let b = ok(&["sample", "--n", "10", "--sigma", "3", "--seed", "7"]);
    assert_eq!(a, b);
    let m: MapJson = serde_json::from_str(a.trim()).unwrap();
    assert_eq!((m.n, m.sigma, m.version.as_str()), (10, 3, "bmap-v1"));
    assert!(m.pointed.is_some());
    let c = ok(&["sample", "--n", "10", "--sigma", "3", "--seed", "8"]);
    assert_ne!(a, c);
    assert_eq!(ok(&["sample", "--n", "5", "--sigma", "2", "--reps", "4"]).lines().count(), 4);
}

#[test]
fn encode_decode_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let maps = dir.path().join("maps.jsonl");
    let enc = dir.path().join("enc.jsonl");
    let back = dir.path().join("back.jsonl");
    let p = |x: &std::path::Path| x.to_str().unwrap().to_string();
    ok(&["sample", "--n", "40", "--sigma", "6", "--reps", "5", "--seed", "1", "--out", &p(&maps)]);
    ok(&["encode", &p(&maps), "--out", &p(&enc)]);
    ok(&["decode", &p(&enc), "--out", &p(&back)]);
    assert_eq!(fs::read_to_string(&maps).unwrap(), fs::read_to_string(&back).unwrap());
    let direct = ok(&["sample", "--n", "40", "--sigma", "6", "--reps", "5", "--seed", "1", "--encoding"]);
    assert_eq!(direct, fs::read_to_string(&enc).unwrap());
}

#[test]
fn saw_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let maps = dir.path().join("maps.jsonl");
    let saw = dir.path().join("saw.jsonl");
    let p = |x: &std::path::Path| x.to_str().unwrap().to_string();
    ok(&["sample", "--n", "30", "--sigma", "5", "--reps", "3", "--out", &p(&maps)]);
    ok(&["saw-encode", &p(&maps), "--out", &p(&saw)]);
    let back = ok(&["saw-decode", &p(&saw)]);
    let original = fs::read_to_string(&maps).unwrap();
    for (a, b) in original.lines().zip(back.lines()) {
        let mut a: MapJson = serde_json::from_str(a).unwrap();
        let b: MapJson = serde_json::from_str(b).unwrap();
        a.pointed = None;
        assert_eq!(a, b);
    }
    assert_eq!(back.lines().count(), 3);
}

#[test]
fn enumerate_and_verify() {
    assert_eq!(ok(&["enumerate", "--n", "1", "--sigma", "1", "--kind", "Q"]), "2\n");
    assert_eq!(ok(&["enumerate", "--n", "0", "--sigma", "2", "--kind", "B"]), "6\n");
    assert_eq!(ok(&["enumerate", "--n", "1", "--sigma", "1", "--kind", "F"]), "3\n");
    let dump = ok(&["enumerate", "--n", "1", "--sigma", "2", "--kind", "Q", "--dump"]);
    let lines: Vec<&str> = dump.lines().collect();
    assert_eq!(lines[0], "9");
    assert_eq!(lines.len(), 10);
    let codes: Vec<String> = lines[1..]
        .iter()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["code"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = codes.clone();
    sorted.sort();
    assert_eq!(codes, sorted);
    let report = ok(&["verify", "roundtrip", "--n", "4", "--sigma", "2", "--exhaustive"]);
    assert!(report.contains("\"failures\":0"));
    for suite in ["labels", "bounds", "saw", "counts", "census"] {
        ok(&["verify", suite, "--n", "2", "--sigma", "2", "--exhaustive"]);
    }
    ok(&["verify", "bounds", "--n", "300", "--sigma", "10", "--reps", "3"]);
}

#[test]
fn experiments_write_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let args = |threads: &str, j: &str, c: &str| {
        vec![
            "--threads".to_string(),
            threads.into(),
            "experiment".into(),
            "sigma-zero".into(),
            "--n".into(),
            "256,1024".into(),
            "--reps".into(),
            "6".into(),
            "--seed".into(),
            "2".into(),
            "--out".into(),
            j.into(),
            "--csv".into(),
            c.into(),
        ]
    };
    let run = |threads: &str| {
        let a = args(threads, json.to_str().unwrap(), csv.to_str().unwrap());
        ok(&a.iter().map(String::as_str).collect::<Vec<_>>());
        (ExperimentResult::from_json(&fs::read_to_string(&json).unwrap()).unwrap(), fs::read_to_string(&csv).unwrap())
    };
    let (one, csv_one) = run("1");
    let (two, csv_two) = run("2");
    assert_eq!(one.points, two.points);
    assert_eq!(csv_one, csv_two);
    assert_eq!(one.params.ns, vec![256, 1024]);
    assert_eq!(one.params.sigma_rule, "quarter");
    assert!(one.rng.contains("ChaCha20"));
    assert!(one.version.starts_with("quadbound "));
    // header, 6 replicas and a mean row per size
    assert_eq!(csv_one.lines().count(), 1 + 2 * 7);
    assert!(csv_one.starts_with("experiment,n,sigma,replica,"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"version":"bmap-v1","sigma":2,"n":0,"twin":[1,0],"next":[0,1],"root":0,"pointed":0}"#).unwrap();
    assert_eq!(quadbound(&["encode", bad.to_str().unwrap()]).status.code(), Some(1));
    fs::write(&bad, "not json").unwrap();
    assert_eq!(quadbound(&["decode", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(quadbound(&["decode", dir.path().join("missing").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(quadbound(&["sample", "--n", "3"]).status.code(), Some(2));
    assert_eq!(quadbound(&["sample", "--n", "3", "--sigma", "0"]).status.code(), Some(2));
    assert_eq!(quadbound(&["verify", "nonsense", "--n", "1", "--sigma", "1"]).status.code(), Some(2));
    assert_eq!(quadbound(&["experiment", "vervaat", "--n", "100", "--sigma-rule", "cubic"]).status.code(), Some(2));
}
