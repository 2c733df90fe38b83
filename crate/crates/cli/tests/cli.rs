use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn burnside(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burnside"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p: PathBuf = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn p2(&self) -> String {
        self.write("p2.fan", "# projective plane\n1 0\n0 1\n-1 -1\n")
    }
}

#[test]
fn quotient_n2_is_trivial() {
    let o = burnside(&["quotient", "--N", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sector group: trivial"), "{}", stdout(&o));
}

#[test]
fn quotient_json() {
    let o = burnside(&["quotient", "--N", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["group_order"], 5);
    assert!(!v["generators"].as_array().unwrap().is_empty());
    assert!(v["invariant_factors"].is_array());
    assert!(v["free_rank"].is_u64());
}

#[test]
fn quotient_rejects_out_of_range() {
    assert_eq!(burnside(&["quotient", "--N", "1"]).status.code(), Some(2));
    assert_eq!(burnside(&["quotient", "--N", "61"]).status.code(), Some(2));
    assert_eq!(burnside(&["quotient", "--N", "61", "--bound", "61"]).status.code(), Some(0));
}

#[test]
fn class_on_the_plane() {
    let f = Files::new();
    let o = burnside(&["class", "--fan", &f.p2(), "--N", "5", "--embed", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("  +1 (C5, pt,")).count(), 3, "{out}");
    assert!(out.contains("(1, X, ())"));
    assert!(!out.contains("P1⟳"));

    let o = burnside(&["class", "--fan", &f.p2(), "--N", "4", "--embed", "1,2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let display = v["display"].as_str().unwrap();
    assert!(display.contains("(C2, P1⟳C2^±1, (1))"), "{display}");
}

#[test]
fn class_reports_bad_fan_line() {
    let f = Files::new();
    let bad = f.write("bad.fan", "1 0\n0 x\n-1 -1\n");
    let o = burnside(&["class", "--fan", &bad, "--N", "5", "--embed", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let not_smooth = f.write("ns.fan", "1 0\n1 2\n-1 -1\n");
    assert_eq!(
        burnside(&["class", "--fan", &not_smooth, "--N", "5", "--embed", "1,2"]).status.code(),
        Some(2)
    );
    let o = burnside(&["class", "--fan", &f.p2(), "--N", "4", "--embed", "2,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cg_dp6_vanishes() {
    let f = Files::new();
    let w = f.write("dp6.word", "up 2\nup 1\nup 0\ndown 1 0\ndown 0 1\ndown -1 -1\n");
    let o = burnside(&["cg", "--fan", &f.p2(), "--word", &w, "--N", "5", "--embed", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("C_G = 0") && out.contains("C_orb = 0") && out.contains("c = 0"), "{out}");
    assert_eq!(out.matches("contracted by φ)").count(), 3);
    assert_eq!(out.matches("contracted by φ⁻¹)").count(), 3);
}

#[test]
fn cg_single_blowup_and_excluded_ray() {
    let f = Files::new();
    let w = f.write("up.word", "up 0\n");
    let o = burnside(&["cg", "--fan", &f.p2(), "--word", &w, "--N", "5", "--embed", "1,2"]);
    assert!(stdout(&o).contains("C_G = [P1⟳C5^±1]"), "{}", stdout(&o));

    // c(1,1) = 3 - 1 = 2 has a stabilizer of order 2 in C4
    let o = burnside(&["cg", "--fan", &f.p2(), "--word", &w, "--N", "4", "--embed", "1,3"]);
    let out = stdout(&o);
    assert!(out.contains("excluded"), "{out}");
    assert!(out.contains("C_G = 0") && out.contains("c = [P1]"), "{out}");
}

#[test]
fn cg_rejects_illegal_word() {
    let f = Files::new();
    let w = f.write("bad.word", "down 1 0\n");
    let o = burnside(&["cg", "--fan", &f.p2(), "--word", &w, "--N", "5", "--embed", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not contractible"), "{}", stderr(&o));
}

#[test]
fn verify_harnesses_pass() {
    for (kind, trials, seed) in [("composition", "200", "7"), ("blowup-invariance", "100", "3"), ("snf-oracle", "20", "1")] {
        let o = burnside(&["verify", kind, "--trials", trials, "--seed", seed]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stdout(&o));
        assert!(stdout(&o).contains(&format!("{trials}/{trials} pass")), "{}", stdout(&o));
    }
    assert_eq!(burnside(&["verify", "lemma-step1", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(burnside(&["verify", "bogus"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "verify", "lemma-step1", "--trials", "30", "--seed", "9"];
    assert_eq!(burnside(&args).stdout, burnside(&args).stdout);
    let args = ["scenario", "dp6", "--N", "7", "--a", "2", "--b", "3", "--format", "json"];
    assert_eq!(burnside(&args).stdout, burnside(&args).stdout);
}

#[test]
fn scenario_dp6() {
    let o = burnside(&["scenario", "dp6", "--N", "5", "--a", "1", "--b", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("relabel check (g -> g^-1 maps after to before): pass"));

    let o = burnside(&["scenario", "dp6", "--N", "5", "--a", "1", "--b", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("a ≠ b required"));

    let o = burnside(&["scenario", "dp6", "--N", "7", "--a", "2", "--b", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["relabel_check"], true);
    assert_eq!(v["weights_match_pattern"], true);
    assert_eq!(v["c_g"], serde_json::json!([]));
}

#[test]
fn scenario_lsh() {
    let o = burnside(&["scenario", "lsh"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("C_G nonzero: true"));
    let o = burnside(&["scenario", "lsh", "--identify", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["c_g_nonzero"], false);
}
