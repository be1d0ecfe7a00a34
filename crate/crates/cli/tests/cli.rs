use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn algmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algmat"))
        .args(args)
        .output()
        .expect("runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--output", "json"]);
    let out = algmat(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}{}",
            stdout(&out),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (code(&out), v)
}

fn spec_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn table1_matroids() {
    let out = algmat(&["matroid", "--builtin", "table1-X1"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("rank 4, 141 bases"));
    let out = algmat(&["matroid", "--builtin", "table1-X3"]);
    assert!(stdout(&out).contains("rank 4, 210 bases"));
}

#[test]
fn toric_file_input() {
    let f = spec_file(r#"{"type": "toric", "exponents": [[0, 1, 2]]}"#);
    let (c, v) = json(&["matroid", f.path().to_str().unwrap(), "--bases"]);
    assert_eq!(c, 0);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["base_count"], 3);
    assert_eq!(v["bases"].as_array().unwrap().len(), 3);
}

#[test]
fn secants() {
    let (_, v) = json(&["secant", "--builtin", "veronese", "-s", "2"]);
    assert_eq!(v["matroid"]["rank"], 6);
    assert_eq!(v["matroid"]["base_count"], 207);
    assert_eq!(v["defect"]["defect"], 0);
    let (_, v) = json(&[
        "secant",
        "--builtin",
        "sym_rank_one",
        "--param",
        "n=8",
        "-s",
        "2",
    ]);
    assert_eq!(v["matroid"]["rank"], 15);
    assert_eq!(v["matroid"]["base_count"], Value::Null);
    assert_eq!(v["defect"]["defect"], 1);
    // s = 1 is the matroid of the variety itself
    let (_, one) = json(&["secant", "--builtin", "p1xp2_12", "-s", "1"]);
    let (_, m) = json(&["matroid", "--builtin", "p1xp2_12"]);
    assert_eq!(one["matroid"], m);
}

#[test]
fn union_check_exit_codes() {
    let (c, v) = json(&["union-check", "--builtin", "veronese", "-s", "2"]);
    assert_eq!(c, 3);
    assert_eq!(v["missing_bases"].as_array().unwrap().len(), 3);
    assert_eq!(v["is_terracini_union"], false);
    let (c, v) = json(&["union-check", "--builtin", "coloop_extension", "-s", "2"]);
    assert_eq!(c, 0);
    assert_eq!(v["is_terracini_union"], true);
    let out = algmat(&["union-check", "--builtin", "p1xp1_23", "-s", "2"]);
    assert_eq!(code(&out), 3);
    let out = algmat(&[
        "union-check",
        "--builtin",
        "veronese",
        "-s",
        "2",
        "--cap",
        "8",
    ]);
    assert_eq!(code(&out), 5);
}

#[test]
fn subset_ranks() {
    let block: Vec<String> = (1..=4)
        .flat_map(|i| (5..=8).map(move |j| format!("a{i}_{j}")))
        .collect();
    let block = block.join(",");
    let (c, v) = json(&[
        "rank",
        "--builtin",
        "sym_rank_one",
        "-s",
        "2",
        "--subset",
        &block,
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["rank"], 12);
    assert_eq!(v["projected"]["defect"], 2);
    let (_, v) = json(&["rank", "--builtin", "veronese", "-s", "2"]);
    assert_eq!(v["rank"], 6);
    let (_, v) = json(&["rank", "--builtin", "veronese", "-s", "2", "--subset", "z3"]);
    assert_eq!(v["rank"], 1);
    let out = algmat(&["rank", "--builtin", "veronese", "--subset", "nope"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn scans() {
    for (poly, count) in [
        (r#"{"type":"simplex","dim":2,"degree":3}"#, 3),
        (r#"{"type":"simplex","dim":2,"degree":4}"#, 6),
    ] {
        let (c, v) = json(&["scan", "--polytope", poly]);
        assert_eq!(c, 0);
        let matches = v["matches"].as_array().unwrap();
        assert_eq!(matches.len(), count);
        assert!(matches.iter().all(|m| m["missing_basis"] == true));
    }
    let (_, v) = json(&["scan", "--polytope", r#"{"type":"grid","box":[3,2]}"#]);
    assert!(!v["matches"].as_array().unwrap().is_empty());
}

#[test]
fn partitions() {
    let (c, v) = json(&[
        "partition",
        "--builtin",
        "veronese",
        "-s",
        "2",
        "--subset",
        "z0,z1,z2,z4,z5,z7",
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["independent"], true);
    let parts = v["parts"].as_array().unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(
        parts
            .iter()
            .map(|p| p.as_array().unwrap().len())
            .sum::<usize>(),
        6
    );
    let (_, v) = json(&[
        "partition",
        "--builtin",
        "veronese",
        "-s",
        "2",
        "--subset",
        "z0,z1,z2,z3,z4,z5,z6",
    ]);
    assert_eq!(v["independent"], false);
    assert_eq!(v["union_rank"], 6);
}

#[test]
fn golden_examples() {
    let out = algmat(&["examples", "laface"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS laface"));
    let out = algmat(&["examples", "table1"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = algmat(&["examples", "bolker-roth"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(code(&algmat(&["examples", "no-such-example"])), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&algmat(&["matroid"])), 2);
    assert_eq!(code(&algmat(&["matroid", "--builtin", "nope"])), 2);
    assert_eq!(
        code(&algmat(&[
            "matroid",
            "--builtin",
            "veronese",
            "--trials",
            "0"
        ])),
        2
    );
    assert_eq!(
        code(&algmat(&[
            "matroid",
            "--builtin",
            "veronese",
            "--prime",
            "12"
        ])),
        2
    );
    let f = spec_file(r#"{"type": "toric"}"#);
    assert_eq!(code(&algmat(&["matroid", f.path().to_str().unwrap()])), 2);
}

#[test]
fn json_independent_of_workers() {
    let run = |w: &str| {
        algmat(&[
            "union-check",
            "--builtin",
            "p1xp2_12",
            "-s",
            "2",
            "--output",
            "json",
            "--workers",
            w,
        ])
        .stdout
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("4"));
}

#[test]
fn polymap_join_file() {
    let f = spec_file(
        r#"{"type": "join", "summands": [
            {"type": "polymap", "vars": ["t"], "components": ["t", "t", "t"]},
            {"type": "polymap", "vars": ["t"], "components": ["t", "-t", "2*t"]}
        ]}"#,
    );
    let (c, v) = json(&["join", f.path().to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["summands"], 2);
    assert_eq!(v["matroid"]["rank"], 2);
    assert_eq!(v["matroid"]["base_count"], 3);
}
