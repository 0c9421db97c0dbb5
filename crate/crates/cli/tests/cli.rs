use serde_json::{json, Value};
use std::path::Path;
use std::process::{Command, Output};

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckecount"))
        .args(args)
        .env("HECKECOUNT_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

#[test]
fn group_reports() {
    let dir = tempfile::tempdir().unwrap();
    let f4 = json_of(&run(dir.path(), &["group", "--type", "F4"]));
    assert_eq!(f4["degrees"], json!([2, 6, 8, 12]));
    assert_eq!(f4["bad_primes"], json!([2, 3]));
    assert_eq!(f4["order"], json!(1152));
    assert_eq!(f4["schema"], json!(1));
    let e8 = json_of(&run(dir.path(), &["group", "--type", "E8"]));
    assert_eq!(e8["degrees"], json!([2, 8, 12, 14, 18, 20, 24, 30]));
    assert_eq!(e8["provenance"], json!("stored"));
    let a2 = json_of(&run(dir.path(), &["group", "--type", "A2"]));
    assert_eq!((a2["order"].clone(), a2["degrees"].clone(), a2["bad_primes"].clone()), (json!(6), json!([2, 3]), json!([])));
    assert_eq!(run(dir.path(), &["group", "--type", "Q7"]).status.code(), Some(2));
}

#[test]
fn count_examples() {
    let dir = tempfile::tempdir().unwrap();
    let a3 = json_of(&run(dir.path(), &["count", "--type", "A3", "--e", "2", "--ell", "7"]));
    assert_eq!((a3["count"].clone(), a3["method"].clone()), (json!(2), json!("rank")));
    let mx = json_of(&run(dir.path(), &["count", "--type", "G2", "--e", "2", "--ell", "5", "--method", "meataxe"]));
    let rk = json_of(&run(dir.path(), &["count", "--type", "G2", "--e", "2", "--ell", "5", "--method", "rank"]));
    assert_eq!(mx["count"], rk["count"]);
    let a1 = json_of(&run(dir.path(), &["count", "--type", "A1", "--e", "2", "--ell", "3", "--method", "rank"]));
    assert_eq!(a1["count"], json!(1));
    let d4 = json_of(&run(dir.path(), &["count", "--type", "D4", "--e", "2", "--ell", "5"]));
    assert_eq!(d4["method"], json!("meataxe"));
    let inf = json_of(&run(dir.path(), &["count", "--type", "G2", "--e", "inf"]));
    assert_eq!((inf["count"].clone(), inf["provenance"].clone()), (json!(6), json!("semisimple")));
    let csv = run(dir.path(), &["count", "--type", "A2", "--e", "2,3", "--ell", "5", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "type,e,ell,i,count,method\nA2,2,5,1,2,rank\nA2,3,5,2,2,rank\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let unreachable = run(dir.path(), &["count", "--type", "A3", "--e", "4", "--ell", "2"]);
    assert_eq!(unreachable.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unreachable.stderr).contains("unreachable"));
    assert_eq!(run(dir.path(), &["count", "--type", "E6", "--e", "2", "--ell", "5"]).status.code(), Some(3));
    assert_eq!(run(dir.path(), &["count", "--type", "A5", "--e", "2", "--ell", "5", "--max-order", "100"]).status.code(), Some(3));
    assert_eq!(run(dir.path(), &["count", "--type", "D4", "--e", "2", "--ell", "5", "--method", "rank"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["count", "--type", "A2", "--e", "2", "--ell", "4"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["chartable", "--type", "F4"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["count", "--type", "A2", "--e", "2", "--method", "guess"]).status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["verify", "--type", "G2", "--e", "2,3,6", "--ell", "5,7,13"]);
    let reports = json_of(&out);
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for r in reports {
        for row in r["rows"].as_array().unwrap() {
            assert_eq!(row["status"], json!("EQUAL"));
        }
    }
    let bad = run(dir.path(), &["verify", "--type", "G2", "--e", "2,3", "--ell", "2,3", "--expect-bad-strict"]);
    let bad = json_of(&bad);
    for r in bad.as_array().unwrap() {
        let e = r["e"].as_u64().unwrap();
        let row = r["rows"].as_array().unwrap().iter().find(|row| row["ell"] == json!(e)).unwrap();
        assert_eq!(row["status"], json!("STRICTLY_LESS"));
    }
    let a3 = run(dir.path(), &["verify", "--type", "A3", "--e", "4", "--ell", "2,5"]);
    assert_eq!(a3.status.code(), Some(0));
}

#[test]
fn tables() {
    let dir = tempfile::tempdir().unwrap();
    let t = json_of(&run(dir.path(), &["chartable", "--type", "A1"]));
    assert_eq!(t["values"], json!([["1", "u"], ["1", "-1"]]));
    let s = json_of(&run(dir.path(), &["schur", "--type", "A1"]));
    assert_eq!(s["schur"], json!({"index": "u+1", "sign": "u^-1+1"}));
    let f = json_of(&run(dir.path(), &["classpoly", "--type", "A2"]));
    assert_eq!(f["rows"]["sts"], json!({"C1": "0", "Cs": "u", "Cst": "u-1"}));
    let csv = run(dir.path(), &["chartable", "--type", "A1", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "label,dim,C1,Cs\nindex,1,1,u\nsign,1,1,-1\n");
    let out = dir.path().join("b2.csv");
    let o = run(dir.path(), &["classpoly", "--type", "B2", "--format", "csv", "--output", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(out).unwrap().lines().count(), 9);
}

#[test]
fn deterministic_and_cache_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let commands: [&[&str]; 4] = [
        &["verify", "--type", "G2", "--e", "2,3,6", "--ell", "2,3,5,7,13"],
        &["schur", "--type", "B3"],
        &["classpoly", "--type", "A3"],
        &["count", "--type", "D4", "--e", "2,3"],
    ];
    for args in commands {
        let plain = run(dir.path(), &[args, &["--no-cache"]].concat());
        let cold = run(dir.path(), args);
        let warm = run(dir.path(), args);
        let again = run(dir.path(), &[args, &["--no-cache"]].concat());
        assert!(plain.status.success());
        assert_eq!(plain.stdout, cold.stdout, "{args:?}: cache-cold differs");
        assert_eq!(plain.stdout, warm.stdout, "{args:?}: cache-warm differs");
        assert_eq!(plain.stdout, again.stdout, "{args:?}: repeated run differs");
    }
    // corrupt every cached payload; results must be rebuilt unchanged
    let before = run(dir.path(), commands[0]);
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, text.replacen("1", "2", 1)).unwrap();
    }
    let after = run(dir.path(), commands[0]);
    assert_eq!(before.stdout, after.stdout);
    let seeded = run(dir.path(), &["count", "--type", "B3", "--e", "2", "--ell", "3", "--method", "meataxe", "--seed", "17"]);
    let unseeded = run(dir.path(), &["count", "--type", "B3", "--e", "2", "--ell", "3", "--method", "meataxe"]);
    assert_eq!(json_of(&seeded)["count"], json_of(&unseeded)["count"]);
}
