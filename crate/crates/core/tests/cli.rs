//! End-to-end runs of the `emberlin` binary: outputs and exit codes.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_emberlin"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("emberlin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn generate(family: &[&str], file: &str) -> String {
    let p = tmp(file);
    let mut args = vec!["generate"];
    args.extend_from_slice(family);
    args.extend(["-o", p.to_str().unwrap()]);
    assert_eq!(run(&args).0, 0);
    p.to_str().unwrap().to_string()
}

#[test]
fn dip4_embed_then_verify() {
    let g = generate(&["dip4"], "dip4.g");
    let e = tmp("dip4.e");
    let (code, _, err) = run(&["embed", "--orientable", &g, "-o", e.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = run(&["verify", &g, e.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("faces=2") && out.contains("bi_eulerian=yes") && out.contains("orientable=yes"), "{out}");
}

#[test]
fn corrupted_rotation_fails_verification() {
    let g = generate(&["dip4"], "dip4b.g");
    let e = tmp("dip4b.e");
    assert_eq!(run(&["embed", &g, "-o", e.to_str().unwrap()]).0, 0);
    let text = std::fs::read_to_string(&e).unwrap();
    let bad = text.replacen("rot u : a1.0 b2.1 a2.0 b1.1", "rot u : b2.1 a1.0 a2.0 b1.1", 1);
    assert_ne!(bad, text);
    std::fs::write(&e, bad).unwrap();
    let (code, out, _) = run(&["verify", &g, e.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(out.contains("at vertex u"), "{out}");
}

#[test]
fn one_face_directed_verifies() {
    let g = generate(&["ddc", "3"], "ddc3.g");
    let e = tmp("ddc3.e");
    assert_eq!(run(&["embed", "--nonorientable", "--faces", "1", &g, "-o", e.to_str().unwrap()]).0, 0);
    let (code, out, _) = run(&["verify", &g, e.to_str().unwrap()]);
    assert_eq!(code, 0);
    // m − n + 1 = 6 − 3 + 1
    assert!(out.contains("faces=1") && out.contains("orientable=no") && out.contains("euler_genus=4"), "{out}");
}

#[test]
fn nonorientable_bieulerian_on_obstructed_host() {
    let g = generate(&["fst", "1", "2"], "fst.g");
    let (code, out, _) = run(&["analyze", &g]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict=obstructed") && out.contains("parity_ok=true") && out.contains("bad_cuts=0"), "{out}");
    let e = tmp("fst.e");
    assert_eq!(run(&["embed", "--nonorientable", &g, "-o", e.to_str().unwrap()]).0, 0);
    let (_, out, _) = run(&["verify", &g, e.to_str().unwrap()]);
    assert!(out.contains("bi_eulerian=yes") && out.contains("euler_genus=6") && out.contains("orientable=no"), "{out}");
}

#[test]
fn exit_codes() {
    // four vertices of degree 0 mod 4 and no pattern host
    let g = generate(&["ddc", "4"], "ddc4.g");
    assert_eq!(run(&["embed", &g]).0, 2);
    // a malformed graph file
    let bad = tmp("bad.g");
    std::fs::write(&bad, "a x p q\ne y q p\n").unwrap();
    let (code, _, err) = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    // budget override
    let out = bin().args(["enumerate", &g]).env("EMBERLIN_BUDGET", "10").output().unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn enumerate_and_euler() {
    let g = generate(&["ddc", "3"], "ddc3e.g");
    let (code, out, _) = run(&["enumerate", &g]);
    assert_eq!(code, 0);
    assert!(out.contains("min_faces=3") && out.contains("orientable faces 3: 6") && out.contains("orientable faces 5: 2"), "{out}");
    let g = generate(&["ddc", "4"], "ddc4e.g");
    let (code, out, _) = run(&["euler", &g, "--interlace", "v0,v2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("circuit : "), "{out}");
}
