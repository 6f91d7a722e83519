use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdmmn")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn solve_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "t.txt", "# staircase\n5\n0 0\n1 4\n2 3\n3 2\n4 1\n");
    let svg = dir.path().join("t.svg");
    let out = bin(&["solve", &inst, "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("# length "));
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let net = write(dir.path(), "n.txt", &text);
    let v = bin(&["verify", &net, &inst]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).contains("all 20 ordered pairs"));
}

#[test]
fn lengths_of_the_five_terminal_staircase() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "t.txt", "5\n0 0\n1 4\n2 3\n3 2\n4 1\n");
    assert!(stdout(&bin(&["baseline", &inst])).starts_with("# length 34\n"));
    assert!(stdout(&bin(&["exact", &inst])).starts_with("# length 32 "));
    assert!(stdout(&bin(&["ratio", &inst])).starts_with("1/1 "));
}

#[test]
fn infeasible_network_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "t.txt", "2\n0 0\n3 2\n");
    let net = write(dir.path(), "n.txt", "0 0 3 0\n3 0 3 2\n");
    let out = bin(&["verify", &net, &inst]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("from t1 to t0"));
}

#[test]
fn bad_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let dup = write(dir.path(), "d.txt", "2\n0 0\n0 5\n");
    let out = bin(&["solve", &dup]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x coordinate 0"));

    let garbled = write(dir.path(), "g.txt", "2\n0 0\n3 y\n");
    let out = bin(&["solve", &garbled]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    assert_eq!(bin(&["solve", "/nonexistent/instance.txt"]).status.code(), Some(1));
}

#[test]
fn gen_is_deterministic_and_parseable() {
    let a = stdout(&bin(&["gen", "--n", "7", "--seed", "3"]));
    assert_eq!(a, stdout(&bin(&["gen", "--n", "7", "--seed", "3"])));
    assert_eq!(a.lines().count(), 8);
    let s = stdout(&bin(&["gen", "--staircase", "2"]));
    assert_eq!(s, "5\n0 0\n1 4\n2 3\n3 2\n4 1\n");
    assert!(!bin(&["gen", "--n", "3"]).status.success());
}

#[test]
fn bench_prints_header_records_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "b.toml",
        "workers = 2\n[[random]]\nsizes = [3, 4]\nseeds = 2\noracle = true\n[staircase]\nks = [2]\noracle_max_k = 2\n",
    );
    let out = bin(&["bench", "--config", &cfg]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("instance\tfamily\tn"));
    assert_eq!(lines.len(), 1 + 5 + 1);
    assert!(lines[6].contains("ratio_violations=0"));
}
