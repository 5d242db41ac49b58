use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyspaces"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn membership_exit_codes() {
    let o = run(&["membership", "--space", "sp", "--d", "4", "--n", "3", "--poly", "z^4 - z^3"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["member"], false);
    assert_eq!(json(&o)["certificate"]["multiplicity"], 3);

    let o = run(&["membership", "--space", "q", "--d", "1", "--n", "2", "--tuple", "z; z + 1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["member"], true);

    let o = run(&["membership", "--space", "sp", "--d", "2", "--n", "2", "--poly", "z^^2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn membership_real_spaces_and_constraints() {
    let o = run(&[
        "membership", "--space", "p", "--d", "6", "--n", "2", "--x", "R", "--y", "R", "--poly", "(x^2 + 1)^3",
    ]);
    // parenthesized powers are not part of the grammar
    assert_eq!(o.status.code(), Some(2));

    let o = run(&[
        "membership", "--space", "qy", "--d", "2", "--n", "2", "--x", "R", "--y", "R", "--tuple", "z^2 + 1; z^2 + 1",
    ]);
    assert_eq!(o.status.code(), Some(0));

    let spec = r#"{"n":2,"degrees":[1,1],"coprime_sets":[[0,1]],"mult_bounds":["inf","inf"]}"#;
    let o = run(&["membership", "--constraints", spec, "--tuple", "z; z"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["violations"][0]["clause"], "ii");
}

#[test]
fn e1_page_csv() {
    let o = run(&["e1-page", "--d", "2", "--n", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "p,q,total_degree,rank,torsion\n1,2,1,1,\n");
    let o = run(&["e1-page", "--d", "2", "--n", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "p,q,total_degree,rank,torsion\n");
    let o = run(&["e1-page", "--d", "40", "--n", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn outputs_are_reproducible_with_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = run(&["e1-page", "--d", "9", "--n", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "e1-page");
    assert_eq!(manifest["parameters"]["d"], 9);

    let x = run(&["jet-degree", "--poly", "z^3 - 1", "--n", "2", "--seed", "5"]);
    let y = run(&["jet-degree", "--poly", "z^3 - 1", "--n", "2", "--seed", "5"]);
    assert_eq!(x.stdout, y.stdout);
    assert_eq!(json(&x)["degree"], 3);
}

#[test]
fn stability_and_bounds() {
    let o = run(&["verify-stability", "--d", "5", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["bound"], 2);
    let o = run(&["verify-stability", "--d", "4", "--n", "2"]);
    assert_eq!(json(&o)["bound"], "inf");
    assert_eq!(json(&o)["identical_pages"], true);
    let o = run(&["betti-bounds", "--d", "2", "--n", "2"]);
    assert_eq!(json(&o)["bounds"]["1"], 1);
}

#[test]
fn conf_homology_and_maps() {
    let o = run(&["conf-homology", "--p", "4"]);
    assert_eq!(json(&o)["homology"][2]["display"], "Z/2");
    assert_eq!(run(&["conf-homology", "--p", "11"]).status.code(), Some(3));

    let o = run(&["parity", "--poly", "x^2 - 1", "--n", "2"]);
    assert_eq!(json(&o)["parity"], 0);
    // z^2 is not in SP^2_2
    assert_eq!(run(&["jet-degree", "--poly", "z^2", "--n", "2"]).status.code(), Some(1));
    assert_eq!(json(&run(&["jet-degree", "--poly", "z^2", "--n", "3"]))["degree"], 2);
}

#[test]
fn poly_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.txt");
    fs::write(&f, "x^3 - x\n").unwrap();
    let o = run(&["parity", "--poly", f.to_str().unwrap(), "--n", "2"]);
    assert_eq!(json(&o)["parity"], 1);
}

#[test]
fn suites() {
    let o = run(&["suite", "oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["passed"], true);
    assert_eq!(run(&["suite", "bogus"]).status.code(), Some(2));
}
