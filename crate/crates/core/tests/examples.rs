//! Runs every example binary built alongside the tests and checks key lines of its output.

use std::path::PathBuf;
use std::process::Command;

fn run(name: &str) -> String {
    let mut dir = std::env::current_exe().unwrap();
    dir.pop();
    if dir.ends_with("deps") {
        dir.pop();
    }
    let exe: PathBuf = dir.join("examples").join(name);
    let out = Command::new(&exe).output().unwrap_or_else(|e| panic!("{}: {e}", exe.display()));
    assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn groups() {
    let out = run("groups");
    assert!(out.contains("S4: order 24, 5 classes, 7 classes of 2-subgroups"));
    assert!(out.contains("Q8: order 8, 5 classes"));
}

#[test]
fn decompose() {
    let out = run("decompose");
    assert_eq!(out.matches("summand of dimension 2").count(), 3);
}

#[test]
fn blocks() {
    let out = run("blocks");
    assert!(out.contains("S3 at p = 2: 2 blocks, defect orders [1, 2]"));
    assert!(out.contains("A4 at p = 2: 1 blocks, defect orders [4]"));
}

#[test]
fn mackey() {
    let out = run("mackey");
    assert!(out.contains("Brauer characters agree: true") && out.contains("isomorphic: true"));
}

#[test]
fn characters() {
    let out = run("characters");
    assert!(out.contains("class of order 2 (size 3): lifted 0"));
}

#[test]
fn ghost() {
    let out = run("ghost");
    let lines: Vec<&str> = out.lines().map(|l| l.split(": ").nth(1).unwrap()).collect();
    for i in 0..lines.len() {
        for j in 0..i {
            assert_ne!(lines[i], lines[j]);
        }
    }
}

#[test]
fn verify_ppeq() {
    let out = run("verify_ppeq");
    assert!(out.contains("[A] − Δ(C4): left true, right true, orthogonal true"));
    assert!(out.contains("[A] + Δ(C4): left false, right false, orthogonal false"));
}

#[test]
fn gamma_pairs() {
    let out = run("gamma_pairs");
    assert!(out.contains("ideal true, maximal classes 1"));
    assert!(out.contains("fusion systems agree: true"));
}

#[test]
fn local_equivalence() {
    let out = run("local_equivalence");
    assert!(out.contains("local equation true, equivalence true"));
    assert!(!out.contains("transported false"));
}

#[test]
fn morita() {
    let out = run("morita");
    assert!(out.contains("Morita true") && out.contains("F S3 ⊕ F S3: Morita false"));
}

#[test]
fn rickard() {
    let out = run("rickard");
    assert!(out.contains("dimension 0") && out.contains("rejected: true"));
}

#[test]
fn isotypy() {
    let out = run("isotypy");
    assert!(out.contains("compatible true") && out.contains("after flipping one sign: compatible false"));
}

#[test]
fn session() {
    let out = run("session");
    assert!(out.contains("exit code 0"));
}
