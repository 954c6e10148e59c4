use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use linkoid::corpus::fixture;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkoid")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_fixture(dir: &TempDir, name: &str) -> PathBuf {
    let p = dir.path().join(format!("{name}.lkd"));
    std::fs::write(&p, fixture(name).unwrap().document).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn map_of_k1() {
    let dir = TempDir::new().unwrap();
    let k1 = write_fixture(&dir, "K1");
    let o = run(&["map", s(&k1)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-W^3 + W - W^-1 + W^-3 + W^-4\n");
    let o = run(&["potential", s(&k1)]);
    assert_eq!(stdout(&o), "-W^3 + W^2*B - W*B^2 + B^4 + B^3\n");
}

#[test]
fn info_of_the_clasp() {
    let dir = TempDir::new().unwrap();
    let f = write_fixture(&dir, "clasp");
    let o = run(&["info", s(&f)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next().unwrap(), "kappa=2 ell=0 omega=0 genus=0");
    assert!(text.lines().nth(1).unwrap().starts_with("omega_star=0 omega_g=0 crossings=1 faces=1"));
}

#[test]
fn skein_residual_vanishes() {
    let dir = TempDir::new().unwrap();
    let k1 = write_fixture(&dir, "K1");
    let o = run(&["skein", s(&k1), "--crossing", "c2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).ends_with("residual 0\n"));
    let o = run(&["skein", s(&k1), "--crossing", "t"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn potential_json_and_matrix() {
    let dir = TempDir::new().unwrap();
    let k1 = write_fixture(&dir, "K1");
    let o = run(&["potential", s(&k1), "--json"]);
    let text = stdout(&o);
    assert!(text.contains("\"mock_alexander\": \"-W^3 + W - W^-1 + W^-3 + W^-4\""));
    assert!(text.contains("\"state_count\": 5"));
    let o = run(&["potential", s(&k1), "--matrix"]);
    let text = stdout(&o);
    assert!(text.starts_with("rows=4 cols=4\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn close_writes_a_file_and_canonical_reads_it() {
    let dir = TempDir::new().unwrap();
    let clasp = write_fixture(&dir, "clasp");
    let out = dir.path().join("closed.lkd");
    let o = run(&["close", s(&clasp), "--components", "0,1", "--style", "shadow", "--pos", "under", "--orient", "anti", "-o", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["info", s(&out)]);
    assert!(stdout(&o).starts_with("kappa=0 ell=2 omega=-2 genus=0\n"));
    let o = run(&["canonical", s(&out)]);
    assert_eq!(stdout(&o), "-W + W^-1\n");
    let o = run(&["canonical", s(&clasp), "--variant", "theta"]);
    assert_eq!(stdout(&o), "-W + 2 + W^-1\n");
    let o = run(&["theta", s(&clasp), "--components", "t0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(" v3 ")).count(), 2);
}

#[test]
fn generators_and_random_output_are_deterministic() {
    let a = stdout(&run(&["gen", "random", "--knotoidal", "2", "--loops", "1", "--seed", "7"]));
    let b = stdout(&run(&["gen", "random", "--knotoidal", "2", "--loops", "1", "--seed", "7"]));
    assert_eq!(a, b);
    assert!(a.starts_with("linkoid v1\n"));
    let g = stdout(&run(&["gen", "gn", "3"]));
    assert_eq!(g.lines().filter(|l| l.contains(" crossing ")).count(), 5);
}

#[test]
fn fuzz_and_scan() {
    let dir = TempDir::new().unwrap();
    let k2 = write_fixture(&dir, "K2");
    let o = run(&["fuzz", s(&k2), "--moves", "200", "--seed", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("ok moves=200 "));
    let o = run(&["scan-conjecture", "--crossings", "5", "--count", "20", "--seed", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 21);
    assert!(text.lines().last().unwrap().starts_with("scanned 20 counterexamples "));
    assert_eq!(text, stdout(&run(&["scan-conjecture", "--crossings", "5", "--count", "20", "--seed", "1"])));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["map"]).status.code(), Some(2));
    assert_eq!(run(&["map", "x.lkd", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["map", "/nonexistent/x.lkd"]).status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.lkd");
    std::fs::write(&bad, "linkoid v1\nsurface sphere\nnode t tail e9.s\n").unwrap();
    let o = run(&["info", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    let k = write_fixture(&dir, "K");
    assert_eq!(run(&["map", s(&k)]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
