use std::fs;
use std::process::{Command, Output};

fn cblocks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cblocks"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = cblocks(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

#[test]
fn rank_examples() {
    assert_eq!(ok(&["rank", "--family", "sl2", "--level", "5", "--weights", "4,4,4,4"]), "2\n");
    assert_eq!(ok(&["rank", "--family", "spc", "--level", "7", "--weights", "5,4,3,2,1,1"]), "10\n");
    assert_eq!(ok(&["rank", "--family", "sl2", "--level", "1", "--weights", "0,0"]), "1\n");
    // order does not matter for ranks
    assert_eq!(ok(&["rank", "--family", "spc", "--level", "7", "--weights", "1,2,3,4,5,1"]), "10\n");
}

#[test]
fn degree_and_intersection() {
    assert_eq!(ok(&["degree4", "--family", "sl2", "--level", "5", "--weights", "4,4,4,4"]), "6\n");
    assert_eq!(ok(&["degree4", "--family", "spc", "--level", "5", "--weights", "4,4,4,4"]), "7\n");
    assert_eq!(
        ok(&["intersect", "--family", "spc", "--level", "5", "--weights", "4,4,4,4", "--curve", "1|2|3|4"]),
        "7\n"
    );
    let out = cblocks(&["intersect", "--family", "spc", "--level", "5", "--weights", "4,4,4,4", "--curve", "1|2|34"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn six_point_coordinates() {
    let base = ["divisor", "--level", "5", "--weights", "4,4,3,4,4,3", "--labeled", "--family"];
    let mut spc = base.to_vec();
    spc.push("spc");
    assert_eq!(ok(&spc), "14,8,14,14,8,14,14,3,14,4,4,8,28,4,4,8\n");
    let mut sl2 = base.to_vec();
    sl2.push("sl2");
    assert_eq!(ok(&sl2), "12,6,12,12,6,12,12,0,12,2,2,6,24,2,2,6\n");
    let json = r#"{"family":"spc","level":5,"weights":[4,4,3,4,4,3]}"#;
    assert_eq!(ok(&["divisor", "--bundle", json]), "14,8,14,14,8,14,14,3,14,4,4,8,28,4,4,8\n");
}

#[test]
fn sorted_input_relabels_points() {
    let sorted = ok(&["divisor", "--family", "spc", "--level", "5", "--weights", "4,4,4,4,3,3"]);
    let shuffled = ok(&["divisor", "--family", "spc", "--level", "5", "--weights", "3,4,4,3,4,4"]);
    assert_eq!(sorted, shuffled);
    assert_ne!(sorted, "14,8,14,14,8,14,14,3,14,4,4,8,28,4,4,8\n");
}

#[test]
fn vacuum_fvec_is_zero() {
    let text = ok(&["divisor", "--family", "sl2", "--level", "2", "--weights", "0,0,0,0,0", "--format", "fvec"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("blocks,degree"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|r| r.ends_with(",0")));
}

#[test]
fn custom_basis_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.txt");
    let lines = "# nonadjacent basis\n1 3\n1 4\n1 5\n2 4\n2 5\n2 6\n3 5\n3 6\n4 6\n1,2,4\n1 2 5\n1 3 4\n1 3 5\n1 3 6\n1 4 5\n1 4 6\n";
    fs::write(&path, lines).unwrap();
    let p = path.to_str().unwrap();
    let out_path = dir.path().join("coords.txt");
    ok(&[
        "divisor", "--family", "sl2", "--level", "5", "--weights", "4,4,3,4,4,3", "--labeled", "--basis", p,
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(fs::read_to_string(&out_path).unwrap(), "12,6,12,12,6,12,12,0,12,2,2,6,24,2,2,6\n");

    // a dependent list of subsets is a capability failure
    fs::write(&path, "1 2\n3 4\n").unwrap();
    let out = cblocks(&["divisor", "--family", "sl2", "--level", "2", "--weights", "1,1,1,1,1,1", "--basis", p]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| cblocks(args).status.code();
    assert_eq!(code(&["rank", "--family", "sl2", "--level", "5", "--weights", "3,3,x"]), Some(2));
    assert_eq!(code(&["rank", "--family", "sl2", "--level", "5", "--weights", "3,2"]), Some(2));
    assert_eq!(code(&["rank", "--family", "sl2", "--level", "2", "--weights", "3,3"]), Some(2));
    assert_eq!(code(&["rank", "--family", "sl2", "--level", "5", "--weights", "2,4", "--strict-order"]), Some(2));
    assert_eq!(code(&["rank", "--family", "sl2", "--level", "5", "--weights", "4,2", "--strict-order"]), Some(0));
    assert_eq!(code(&["rank", "--bundle", "{\"family\":\"sl2\"}"]), Some(2));
    assert_eq!(code(&["divisor", "--family", "spc", "--level", "2", "--weights", "1,1,1,1,2"]), Some(3));
    assert_eq!(code(&["verify", "stab"]), Some(2));
    assert_eq!(code(&["verify", "bogus"]), Some(2));
    assert_eq!(code(&["scan", "--n", "3", "--lmax", "2"]), Some(2));
}

#[test]
fn verify_reports() {
    let text = ok(&["verify", "examples"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["proposition_id"], "examples");
    assert_eq!(v["passed"], true);
    assert!(v.get("elapsed_ms").is_none());
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 6);

    let text = ok(&["verify", "main", "--n", "4", "--lmax", "5"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(!v["witnesses"].as_array().unwrap().is_empty());

    ok(&["verify", "stab", "--weights", "5,4,3,2,1,1", "--extra", "3"]);
    ok(&["verify", "mono", "--weights", "5,4,3,2,1,1", "--rhi", "10"]);
    ok(&["verify", "plussing", "--n", "4", "--level", "3"]);

    let timed = ok(&["verify", "stab", "--weights", "2,2,1,1", "--timing"]);
    let v: serde_json::Value = serde_json::from_str(&timed).unwrap();
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn verify_is_deterministic() {
    let a = ok(&["verify", "all", "--n", "4", "--lmax", "3"]);
    let b = ok(&["verify", "all", "--n", "4", "--lmax", "3"]);
    assert_eq!(a, b);
}

#[test]
fn scan_table() {
    let text = ok(&["scan", "--n", "4", "--lmax", "2"]);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["weights", "family", "level", "rank", "trivial", "class_hash"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    // 3 vectors at level 1, 9 at level 2, both families
    assert_eq!(rows.len(), 24);
    for pair in rows.chunks(2) {
        let (a, b) = (&pair[0], &pair[1]);
        assert_eq!((&a[0], &a[2], &a[3]), (&b[0], &b[2], &b[3]));
        if a[3] == *"0" || a[3] == *"1" {
            assert_eq!(a[5], b[5], "rank <= 1 classes collide: {a:?}");
        }
    }
    assert!(text.contains("\"2,2,2,2\",spc,2,"));
    assert_eq!(text, ok(&["scan", "--n", "4", "--lmax", "2"]));

    assert_eq!(ok(&["scan", "--n", "5", "--lmax", "0"]), "weights,family,level,rank,trivial,class_hash\n");
}

#[test]
fn bundle_round_trip() {
    let json = r#"{"family":"spc","level":5,"weights":[4,4,3,4,4,3]}"#;
    assert_eq!(ok(&["bundle", "--bundle", json]).trim(), json);
    assert_eq!(
        ok(&["bundle", "--family", "sl2", "--level", "3", "--weights", "1,3,2"]).trim(),
        r#"{"family":"sl2","level":3,"weights":[3,2,1]}"#
    );
}

#[test]
fn thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_cblocks"))
        .env("CBLOCKS_THREADS", "1")
        .args(["verify", "main", "--n", "5", "--lmax", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), ok(&["verify", "main", "--n", "5", "--lmax", "3"]));
    let out = Command::new(env!("CARGO_BIN_EXE_cblocks"))
        .env("CBLOCKS_THREADS", "lots")
        .args(["rank", "--family", "sl2", "--level", "1", "--weights", "1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
