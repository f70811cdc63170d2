use serde_json::Value;
use std::process::Command;

const SMALL: [&str; 4] = ["--e", "7", "--kappa", "0,2,4"];

fn blobgt(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_blobgt"));
    cmd.args(args).env_remove("BLOBGT_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn small(cmd: &str, extra: &[&str]) -> Vec<String> {
    std::iter::once(cmd).chain(SMALL).chain(extra.iter().copied()).map(String::from).collect()
}

fn json(args: &[String]) -> Value {
    let mut a: Vec<&str> = args.iter().map(String::as_str).collect();
    a.extend(["--format", "json"]);
    let (code, out, err) = blobgt(&a, &[]);
    assert!(code == 0 || code == 3, "{a:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/output.schema.json")).unwrap();
    jsonschema::JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn json_output_matches_the_schema() {
    let s = schema();
    let runs = [
        small("blocks", &["--m", "10"]),
        small("tableaux", &["--m", "10"]),
        small("tableaux", &["--m", "10", "--count-only"]),
        small("tableaux", &["--sequence", "0,0"]),
        small("gtdim", &["--m", "10", "--concrete"]),
        small("gtdim", &["--m", "10", "--prefix", "3"]),
        small("verify", &["--m", "10", "--identity", "diag-L", "--dump"]),
        small("explore-q", &["--m", "3"]),
        small("explore-q", &["--m", "3", "--classes-only"]),
    ];
    for args in &runs {
        let v = json(args);
        let ok = s.is_valid(&v);
        assert!(ok, "{args:?} violates the schema: {v}");
    }
    let mut broken = json(&runs[0]);
    broken["result"]["epsilon"] = Value::from("six");
    assert!(!s.is_valid(&broken));
}

#[test]
fn blocks_table_and_errors() {
    let args = ["blocks", "--e", "13", "--l", "4", "--kappa", "0,2,5,7", "--m", "32", "--format", "csv"];
    let (code, out, _) = blobgt(&args, &[]);
    assert_eq!(code, 0);
    let expected = "block,r,j,start,end,m_rj,residues\n\
                    N,,,1,6,,0 12 11 10 9 8\n\
                    \"B(1,0)\",1,0,7,8,7,7 6\n\
                    \"B(1,1)\",1,1,9,11,9,5 4 3\n\
                    \"B(1,2)\",1,2,12,19,12,2 1 0 12 11 10 9 8\n\
                    \"B(2,0)\",2,0,20,21,20,7 6\n\
                    \"B(2,1)\",2,1,22,24,22,5 4 3\n\
                    \"B(2,2)\",2,2,25,32,25,2 1 0 12 11 10 9 8\n";
    assert_eq!(out, expected);

    let (code, out, err) = blobgt(&["blocks", "--e", "13", "--kappa", "0,2,5,7", "--m", "31"], &[]);
    assert_eq!((code, out.as_str()), (2, ""));
    assert!(err.contains("not epsilon + k*e"), "{err}");

    let v = json(&["blocks", "--e", "13", "--base", "3", "--kappa", "0,4,6,10", "--m", "29"].map(String::from));
    assert_eq!(v["result"]["epsilon"], 2);
    assert_eq!(v["result"]["b"], serde_json::json!([4, 3, 6]));

    for bad in [
        vec!["blocks", "--e", "7", "--kappa", "0,1,4", "--m", "10"],
        vec!["blocks", "--e", "7", "--kappa", "0,2,4", "--p", "7", "--m", "10"],
        vec!["blocks", "--e", "7", "--kappa", "0,2,4", "--l", "4", "--m", "10"],
        vec!["blocks", "--e", "7", "--kappa", "0,2,4", "--lifted", "--m", "10"],
        vec!["blocks", "--e", "7", "--kappa", "0,2,4", "--base", "4", "--m", "10"],
        vec!["blocks", "--e", "7", "--m", "10"],
    ] {
        assert_eq!(blobgt(&bad, &[]).0, 2, "{bad:?}");
    }
    assert_eq!(blobgt(&["blocks", "--e", "7", "--kappa", "0,16,32", "--lifted", "--m", "10"], &[]).0, 0);
}

#[test]
fn tableaux_rows_and_counts() {
    let v = json(&small("tableaux", &["--m", "10"]));
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().any(|r| r["word"] == "1" && r["degree"] == 0));
    let (code, out, _) =
        blobgt(&small("tableaux", &["--m", "10", "--count-only"]).iter().map(String::as_str).collect::<Vec<_>>(), &[]);
    assert_eq!((code, out.as_str()), (0, "4\n"));
    let v = json(&small("tableaux", &["--sequence", "0,0"]));
    assert_eq!(v["result"]["count"], 0);
    assert_eq!(v["result"]["rows"], serde_json::json!([]));
    assert_eq!(blobgt(&["tableaux", "--e", "7", "--kappa", "0,2,4", "--sequence", "0,9"], &[]).0, 2);
}

#[test]
fn gtdim_values() {
    let r = &json(&small("gtdim", &["--m", "10", "--concrete"]))["result"];
    assert_eq!((r["n"].clone(), r["dim_abstract"].clone(), r["std_count"].clone()), (2.into(), 4.into(), 4.into()));
    assert_eq!((r["concrete_dim"].clone(), r["exact"].clone()), (4.into(), true.into()));
    let r = &json(&small("gtdim", &["--m", "10", "--prefix", "3", "--concrete"]))["result"];
    assert_eq!((r["dim_abstract"].clone(), r["concrete_dim"].clone()), (1.into(), 1.into()));
    let r = &json(&["gtdim", "--e", "13", "--kappa", "0,4,6,10", "--m", "29"].map(String::from))["result"];
    assert_eq!((r["n"].clone(), r["dim_abstract"].clone(), r["std_count"].clone()), (6.into(), 64.into(), 64.into()));
}

#[test]
fn verify_exit_codes_and_budget() {
    let args = small("verify", &["--m", "10", "--identity", "HvsH", "--point", "1,1"]);
    let a: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, out, _) = blobgt(&a, &[]);
    assert_eq!(code, 0);
    assert!(out.starts_with("HvsH (1,1): Verified\n"), "{out}");

    assert_eq!(blobgt(&a, &[("BLOBGT_BUDGET", "3")]).0, 3);
    let mut flagged = a.clone();
    flagged.extend(["--budget", "100000000"]);
    assert_eq!(blobgt(&flagged, &[("BLOBGT_BUDGET", "3")]).0, 0);

    let (code, _, err) = blobgt(&["verify", "--e", "7", "--kappa", "0,2,4", "--m", "10", "--identity", "bogus"], &[]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown identity"));
    assert_eq!(blobgt(&["verify", "--e", "7", "--kappa", "0,2,4", "--m", "10", "--point", "2,0"], &[]).0, 2);
    assert_eq!(blobgt(&["verify", "--e", "7", "--kappa", "0,2,4", "--m", "10", "--point", "x"], &[]).0, 2);

    let v = json(&small("verify", &["--m", "10"]));
    let s = &v["result"]["summary"];
    assert_eq!((s["refuted"].clone(), s["inconclusive"].clone()), (0.into(), 0.into()));
}

#[test]
fn explore_sweep_small() {
    let v = json(&small("explore-q", &["--m", "1"]));
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["concrete_dim"] == 1 && r["verdict"] == "consistent"));

    let v = json(&small("explore-q", &["--m", "4", "--classes-only"]));
    let rows = v["result"]["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r.get("verdict").is_none()));
    let reps: Vec<&str> = rows.iter().map(|r| r["sequence"].as_str().unwrap()).collect();
    let mut sorted = reps.clone();
    sorted.sort();
    assert_eq!(reps, sorted);

    let sampled =
        |seed: &str| json(&small("explore-q", &["--m", "4", "--classes-only", "--sample", "3", "--seed", seed]));
    assert_eq!(sampled("1"), sampled("1"));
    assert_eq!(sampled("1")["result"]["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn identical_arguments_give_identical_bytes() {
    for args in [small("verify", &["--m", "10", "--dump"]), small("explore-q", &["--m", "4", "--format", "csv"])] {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = blobgt(&a, &[]);
        for threads in ["1", "3"] {
            assert_eq!(blobgt(&a, &[("RAYON_NUM_THREADS", threads)]), first);
        }
    }
}
