use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nf_pairing::io::Instance;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nf-pairing"))
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn builtin_gen_matches_golden_instance() {
    let out = run(&["gen", "--builtin", "elliptic12"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), std::fs::read_to_string(golden("elliptic12_instance.json")).unwrap());
}

#[test]
fn fixture_verifies_to_golden_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = run(&["verify", golden("elliptic12_instance.json").to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(
        std::fs::read(&report).unwrap(),
        std::fs::read(golden("elliptic12_report.json")).unwrap()
    );
}

#[test]
fn gen_verify_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for name in ["a", "b"] {
        let inst = dir.path().join(format!("{name}.json"));
        let report = dir.path().join(format!("{name}-report.json"));
        let g = run(&["gen", "--genus", "1", "--half-length", "3", "--seed", "7", "--out", inst.to_str().unwrap()]);
        assert!(g.status.success(), "{}", stderr(&g));
        let v = run(&["verify", inst.to_str().unwrap(), "--out", report.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{}", stderr(&v));
        texts.push((std::fs::read(&inst).unwrap(), std::fs::read(&report).unwrap()));
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn genus_zero_is_a_parameter_error() {
    let out = run(&["gen", "--genus", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("genus"));
}

#[test]
fn corrupted_monodromy_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(golden("elliptic12_instance.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();

    // T_1 = [[1,1],[0,1]] replaced by [[1,2],[0,1]]: still symplectic, breaks the relation
    doc["monodromies"][0][0][1] = 2.into();
    let broken = dir.path().join("relation.json");
    std::fs::write(&broken, doc.to_string()).unwrap();
    let out = run(&["verify", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not the identity"), "{}", stderr(&out));

    doc["monodromies"][3][1][1] = 5.into();
    let broken = dir.path().join("symplectic.json");
    std::fs::write(&broken, doc.to_string()).unwrap();
    let out = run(&["inspect", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("monodromy 3 is not symplectic"), "{}", stderr(&out));
}

#[test]
fn empty_file_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let out = run(&["inspect", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("parse error"));
}

#[test]
fn missing_file_and_unwritable_output_are_io_errors() {
    assert_eq!(run(&["verify", "/nonexistent/x.json"]).status.code(), Some(3));
    assert_eq!(run(&["gen", "--out", "/nonexistent/dir/x.json"]).status.code(), Some(3));
}

#[test]
fn inspect_fixture() {
    let out = run(&["inspect", golden("elliptic12_instance.json").to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cocycle space dimension 22"));
    assert!(text.contains("relation     ok"));
    assert_eq!(text.matches("parabolic    yes").count(), 2);
}

#[test]
fn zero_pair_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let mut inst = Instance::builtin_elliptic12();
    for entry in &mut inst.cocycles {
        entry.cocycle = nf_pairing::cohomology::TwistedCocycle::zero(inst.pencil.clone(), entry.cocycle.ring());
        entry.potentials = None;
    }
    let path = dir.path().join("zero.json");
    inst.write(&path).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["lhs"], "0");
    assert_eq!(report["rhs"], "0");
}

#[test]
fn non_parabolic_cocycle_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let mut inst = Instance::builtin_elliptic12();
    let p = inst.pencil.clone();
    let mut rng = nf_pairing::random::Rng::from_seed(4);
    let generic = loop {
        let c = nf_pairing::cohomology::random_cocycle(&p, nf_pairing::symplectic::Ring::Integers, &mut rng);
        if !nf_pairing::cohomology::non_parabolic_punctures(&c, c.ring()).is_empty() {
            break c;
        }
    };
    inst.cocycles[0].cocycle = generic;
    inst.cocycles[0].potentials = None;
    let path = dir.path().join("generic.json");
    inst.write(&path).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not parabolic"), "{}", stderr(&out));
}

#[test]
fn suite_smoke_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = run(&["suite", "--trials", "3", "--seed", "5", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
    let pass = |p: &Path| -> Vec<(serde_json::Value, serde_json::Value)> {
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v["outcomes"].as_array().unwrap().iter().map(|o| (o["checks"].clone(), o["pairing"].clone())).collect()
    };
    assert_eq!(pass(&a), pass(&b));
    assert_eq!(run(&["suite", "--trials", "1"]).status.code(), Some(0));
    assert_eq!(run(&["suite", "--trials", "0"]).status.code(), Some(2));
}
