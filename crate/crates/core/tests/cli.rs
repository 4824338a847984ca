//! The command line, driven in-process and through the built binary.

use fatsph::cli::dispatch_to;
use std::path::PathBuf;
use std::process::Command;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut o = Vec::new();
    let mut e = Vec::new();
    let code = dispatch_to(std::iter::once("fatsph").chain(args.iter().copied()), &mut o, &mut e);
    (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("fatsph-it-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn documented_examples() {
    let (c, o, _) = call(&["fn", "eval", "--which", "K", "--s", "3", "--t", "2"]);
    assert_eq!((c, o.as_str()), (0, "32768\n"));
    let (c, _, e) = call(&["fn", "eval", "--which", "A", "--s", "4", "--t", "4"]);
    assert_eq!(c, 3);
    assert!(e.contains("magnitude guard"), "{e}");
    let s = tmp("s12.json");
    let sp = s.to_str().unwrap();
    assert_eq!(call(&["build", "S", "--s", "1", "--t", "2", "--out", sp]).0, 0);
    let (c, o, _) = call(&["metrics", "--in", sp]);
    assert_eq!(c, 0);
    assert!(o.starts_with("f-vector (11, 35, 44, 20)\n"), "{o}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fatsph");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = run(&["fn", "eval", "--which", "Kp", "--s", "2", "--t", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "43\n");
    assert_eq!(run(&["fn", "eval", "--which", "A", "--s", "4", "--t", "4"]).status.code(), Some(3));
    assert_eq!(run(&["fn", "eval", "--which", "A", "--s", "0", "--t", "4"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["metrics", "--in", "/nonexistent/x.json"]).status.code(), Some(2));
    // a tighter guard from the environment
    let o = Command::new(bin)
        .args(["fn", "eval", "--which", "A", "--s", "3", "--t", "4"])
        .env("FATSPH_MAX_BITS", "64")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(bin)
        .args(["fn", "eval", "--which", "K", "--s", "3", "--t", "3"])
        .env("FATSPH_MAX_BITS", "64")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(bin).args(["fn", "eval", "--which", "K", "--s", "1", "--t", "1"]).env("FATSPH_MAX_BITS", "x").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verification_failures_report_json() {
    let s = tmp("s13.json");
    let sp = s.to_str().unwrap();
    assert_eq!(call(&["build", "S", "--s", "1", "--t", "3", "--out", sp]).0, 0);
    let sph = fatsph::build::build_s(1, 3).unwrap();
    let good = fatsph::shelling::shelling_order(&sph).unwrap();
    let tops: Vec<u32> = sph.meta.boundary_top.iter().filter_map(|&f| sph.pyramid_over(f)).collect();
    let far = *good.iter().rev().find(|f| tops.contains(f)).unwrap();
    let mut bad: Vec<u32> = good.iter().copied().filter(|&f| f != far).collect();
    bad.insert(1, far);
    let order = tmp("order.txt");
    let write = |o: &[u32]| std::fs::write(&order, o.iter().map(u32::to_string).collect::<Vec<_>>().join("\n")).unwrap();
    write(&good);
    assert_eq!(call(&["verify", "shelling", "--in", sp, "--order", order.to_str().unwrap()]).0, 0);
    write(&bad);
    let (c, _, e) = call(&["verify", "shelling", "--in", sp, "--order", order.to_str().unwrap()]);
    assert_eq!(c, 1);
    let v: serde_json::Value = serde_json::from_str(e.trim()).unwrap();
    assert_eq!(v["index"], 2);
    assert_eq!(v["id"], far);
    // a ball file has no properties of a sphere to check
    assert_eq!(call(&["verify", "properties", "--in", sp]).0, 2);
}

#[test]
fn outputs_are_deterministic() {
    let a = tmp("d1.json");
    let b = tmp("d2.json");
    for p in [&a, &b] {
        assert_eq!(call(&["build", "X", "--s", "2", "--t", "3", "--out", p.to_str().unwrap()]).0, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let m1 = call(&["metrics", "--in", a.to_str().unwrap(), "--json"]);
    let m2 = call(&["metrics", "--in", b.to_str().unwrap(), "--json"]);
    assert_eq!(m1, m2);
    let v: serde_json::Value = serde_json::from_str(&m1.1).unwrap();
    assert_eq!(v["schema"], "fatness-report/1");
    assert_eq!(v["euler"], 1);
}

#[test]
fn realize_and_matrix_commands() {
    let (c, o, _) = call(&["realize", "s1t", "--t", "3"]);
    assert_eq!(c, 0);
    assert!(o.starts_with("S(1,3) realized: 13 vertices, f = [13, 45, 60, 28]"), "{o}");
    let pts = tmp("pts.txt");
    std::fs::write(&pts, fatsph::realize::S12_POINTS).unwrap();
    assert_eq!(call(&["realize", "s1t", "--t", "2", "--points", pts.to_str().unwrap()]).0, 0);
    assert_eq!(call(&["realize", "s1t", "--t", "3", "--points", pts.to_str().unwrap()]).0, 1);
    let m = tmp("m.txt");
    assert_eq!(call(&["matrix", "build", "--s", "3", "--t", "3", "--out", m.to_str().unwrap()]).0, 0);
    let (c, o, _) = call(&["matrix", "check", "--in", m.to_str().unwrap(), "--pattern", "N"]);
    assert_eq!((c, o.as_str()), (0, "contains N: false\n"));
    let (_, o, _) = call(&["matrix", "stats", "--in", m.to_str().unwrap()]);
    assert!(o.contains("weight 50"));
    assert_eq!(call(&["matrix", "check", "--in", m.to_str().unwrap(), "--pattern", "Q"]).0, 2);
    let (c, o, _) = call(&["moment", "--s", "4", "--t", "2", "--json"]);
    assert_eq!(c, 0);
    let v: serde_json::Value = serde_json::from_str(&o).unwrap();
    assert_eq!(v["f03"], 8);
}

#[test]
fn accept_suite_by_name() {
    let (c, o, _) = call(&["accept", "--suite", "realize"]);
    assert_eq!(c, 0, "{o}");
    assert!(o.contains("criterion 11"));
    let (c, o, _) = call(&["accept", "--suite", "arith-lemmas", "--json"]);
    assert_eq!(c, 0);
    let v: serde_json::Value = serde_json::from_str(&o).unwrap();
    assert_eq!(v[0]["pass"], true);
    assert_eq!(call(&["accept", "--suite", "nope"]).0, 2);
}
