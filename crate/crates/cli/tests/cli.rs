use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbicover")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn invariants_of_apollonius_file() {
    let o = run(&["invariants", &fixture("a4.cfg")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "c1sq=9/16 e=3/16 2e-c1sq=-3/16 3e-c1sq=0 class=BallCandidate\n");
}

#[test]
fn invariants_of_empty_plane() {
    let o = run(&["invariants", &fixture("empty.cfg")]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("c1sq=9 ") && s.contains("e=3 "), "{s}");
}

#[test]
fn json_fractions() {
    let o = run(&["--format", "json", "invariants", &fixture("a4.cfg")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["c1sq"], serde_json::json!({"num": 9, "den": 16}));
    assert_eq!(v["rows"][0]["class"], "BallCandidate");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["invariants", &fixture("a2.pres")]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "/nonexistent.cfg"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", &fixture("inadmissible.cfg")]).status.code(), Some(3));
    assert_eq!(run(&["invariants", &fixture("power5.cfg")]).status.code(), Some(5));
    assert_eq!(run(&["lift", &fixture("a4.cfg"), "--triple", "T1,T2"]).status.code(), Some(3));
    assert_eq!(run(&["tables", "cuspidal", "--dmax", "17", "--data", "/nonexistent", "--check-paper"]).status.code(), Some(4));
}

#[test]
fn lift_prints_document_and_checks() {
    let o = run(&["lift", &fixture("a4.cfg"), "--triple", "T1,T2,T3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.starts_with("component ")).count(), 7);
    assert!(s.contains("c1sq_ok=true euler_ok=true"), "{s}");
    let c = run(&["lift", &fixture("cuspidal_cubic.cfg"), "--triple", "X,Y,Z"]);
    assert!(c.status.success());
    assert!(stdout(&c).contains("lift_e=20/3"));
}

#[test]
fn tower_iterates() {
    let o = run(&["--format", "csv", "lift", "--iterate", "5"]);
    assert!(o.status.success());
    let degrees: Vec<u64> = stdout(&o).lines().skip(1).map(|l| l.split(',').rev().nth(3).unwrap().parse().unwrap()).collect();
    assert_eq!(degrees.len(), 5);
    for (r, d) in degrees.iter().enumerate() {
        assert!(*d >= 1 << (r + 1));
    }
}

#[test]
fn group_commands() {
    assert!(stdout(&run(&["groups", "order", "--modular", "4", "2", "2", "2"])).contains("order=256"));
    assert!(stdout(&run(&["groups", "abelianize", "--coordinate-triangle", "5"])).contains("invariants=Z/5 + Z/5"));
    assert!(stdout(&run(&["groups", "order", "--file", &fixture("a2.pres")])).contains("order=18"));
    let v = run(&["groups", "verify", "--max-weight", "5"]);
    assert!(v.status.success());
    assert!(stdout(&v).contains(", 0 failed, 0 overflowed"));
    // Overflow is informative unless asked otherwise.
    let free = ["groups", "order", "--apollonius", "2", "--max-cosets", "200"];
    let o = run(&free);
    assert!(o.status.success());
    assert!(stdout(&o).contains("status=overflow"));
    let strict: Vec<&str> = free.iter().copied().chain(["--strict"]).collect();
    assert_eq!(run(&strict).status.code(), Some(1));
}

#[test]
fn cuspidal_tables() {
    let o = run(&["tables", "cuspidal", "--dmax", "17", "--check-paper"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("30/30 listed rows"));
    let low = stdout(&run(&["--format", "csv", "tables", "cuspidal", "--dmax", "5", "--b", "2"]));
    assert!(low.lines().skip(1).all(|l| l.split(',').nth(1) == Some("0")), "{low}");
}

#[test]
fn shards_partition_the_table() {
    let all = stdout(&run(&["--format", "csv", "tables", "cuspidal", "--dmax", "14"]));
    let mut merged: Vec<String> = (0..3)
        .flat_map(|i| {
            let s = stdout(&run(&["--format", "csv", "tables", "cuspidal", "--dmax", "14", "--shard", &format!("{i}/3")]));
            s.lines().skip(1).map(String::from).collect::<Vec<_>>()
        })
        .collect();
    let mut full: Vec<String> = all.lines().skip(1).map(String::from).collect();
    merged.sort();
    full.sort();
    assert_eq!(merged, full);
    assert_eq!(run(&["tables", "cuspidal", "--shard", "3/3"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for fmt in ["csv", "json"] {
        let args = ["--format", fmt, "tables", "parabolic", "--cap", "8"];
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn parabolic_check_against_reference_data() {
    let dir = std::env::temp_dir().join(format!("orbicover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let shipped = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/prop4_sets.txt")).unwrap();
    let without_ball: String = shipped.lines().filter(|l| !l.starts_with("ball:")).map(|l| format!("{l}\n")).collect();
    std::fs::write(dir.join("prop4_sets.txt"), without_ball).unwrap();
    let data = dir.display().to_string();
    let o = run(&["tables", "parabolic", "--cap", "12", "--check-paper", "--data", &data]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no `ball` line"));
    std::fs::remove_dir_all(&dir).ok();
}
