use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use chisynth::building::parse_graph_json;
use chisynth::gates::Gate;
use chisynth::matrix::Mat3;
use chisynth::wire::{parse_word_file, MatrixDocument};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chisynth"))
        .args(args)
        .env_remove("CHISYNTH_MAX_DEPTH")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write_doc(p: &str, m: &Mat3<chisynth::arith::ChiFraction>) {
    fs::write(p, MatrixDocument::from_matrix(m, None).to_json()).unwrap();
}

#[test]
fn random_synth_verify_chain() {
    let dir = TempDir::new().unwrap();
    let lengths = [0, 1, 3, 10, 25, 50, 100, 200];
    for seed in 0..20u64 {
        let len = lengths[seed as usize % lengths.len()].to_string();
        let m = path(&dir, &format!("m{seed}.json"));
        let w = path(&dir, &format!("w{seed}.txt"));
        let o = run(&[
            "random",
            "--length",
            &len,
            "--seed",
            &seed.to_string(),
            "--out",
            &m,
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let orig = path(&dir, &format!("m{seed}.word"));
        assert_eq!(code(&run(&["verify", "--word", &orig, "--in", &m])), 0);
        let o = run(&["synth", "--in", &m, "--out", &w]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(
            code(&run(&["verify", "--word", &w, "--in", &m])),
            0,
            "seed {seed}"
        );
    }
}

#[test]
fn synth_identity_is_empty() {
    let dir = TempDir::new().unwrap();
    let m = path(&dir, "id.json");
    write_doc(&m, &Mat3::identity());
    let o = run(&["synth", "--in", &m]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("# length: 0\n# sde: 0\n# steps: 0\n"));
    assert!(parse_word_file(&text).unwrap().is_empty());
}

#[test]
fn synth_h() {
    let dir = TempDir::new().unwrap();
    let m = path(&dir, "h.json");
    let w = path(&dir, "h.word");
    write_doc(&m, Gate::H.matrix().matrix());
    assert_eq!(code(&run(&["synth", "--in", &m, "--out", &w])), 0);
    let text = fs::read_to_string(&w).unwrap();
    assert!(text.contains("# sde: 1\n# steps: 1\n"));
    assert_eq!(parse_word_file(&text).unwrap().eval(), Gate::H.matrix());
    assert_eq!(code(&run(&["verify", "--word", &w, "--in", &m])), 0);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let two = path(&dir, "two.json");
    write_doc(&two, &Mat3::identity().scale_chi(-1));
    assert_eq!(code(&run(&["synth", "--in", &two])), 2);

    let junk = path(&dir, "junk.json");
    fs::write(&junk, "{\"entries\": 3}").unwrap();
    assert_eq!(code(&run(&["synth", "--in", &junk])), 3);
    assert_eq!(
        code(&run(&["synth", "--in", &path(&dir, "missing.json")])),
        3
    );

    let s = path(&dir, "s.json");
    write_doc(&s, Gate::S.matrix().matrix());
    let h = path(&dir, "h.word");
    fs::write(&h, "H\n").unwrap();
    assert_eq!(code(&run(&["verify", "--word", &h, "--in", &s])), 1);
    let bad = path(&dir, "bad.word");
    fs::write(&bad, "HX\n").unwrap();
    assert_eq!(code(&run(&["verify", "--word", &bad, "--in", &s])), 3);

    let id = path(&dir, "id.json");
    write_doc(&id, &Mat3::identity());
    let empty = path(&dir, "empty.word");
    fs::write(&empty, "").unwrap();
    assert_eq!(code(&run(&["verify", "--word", &empty, "--in", &id])), 0);

    assert_eq!(code(&run(&["explore", "--depth", "9"])), 5);
    let o = Command::new(env!("CARGO_BIN_EXE_chisynth"))
        .args(["explore", "--depth", "3"])
        .env("CHISYNTH_MAX_DEPTH", "2")
        .output()
        .unwrap();
    assert_eq!(code(&o), 5);
}

#[test]
fn explore_outputs() {
    let o = run(&["explore", "--depth", "0"]);
    assert_eq!(code(&o), 0);
    let dot = String::from_utf8(o.stdout).unwrap();
    assert_eq!(dot.matches("color=").count(), 1);
    assert!(!dot.contains("--"));

    let a = run(&["explore", "--depth", "4", "--format", "json"]);
    let b = run(&["explore", "--depth", "4", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let g = parse_graph_json(&String::from_utf8(a.stdout).unwrap()).unwrap();
    assert_eq!(g.sphere_sizes(), vec![1, 4, 12, 36, 108]);
}

#[test]
fn explore_matches_core_fixture() {
    let o = run(&["explore", "--depth", "6"]);
    let fixture =
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/building_depth6.dot");
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        fs::read_to_string(fixture).unwrap()
    );
}

#[test]
fn random_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    run(&["random", "--length", "30", "--seed", "5", "--out", &a]);
    run(&["random", "--length", "30", "--seed", "5", "--out", &b]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(
        fs::read(path(&dir, "a.word")).unwrap(),
        fs::read(path(&dir, "b.word")).unwrap()
    );

    let z = path(&dir, "z.json");
    run(&["random", "--length", "0", "--out", &z]);
    let doc = MatrixDocument::parse(&fs::read_to_string(&z).unwrap()).unwrap();
    assert!(doc.to_matrix().unwrap().is_identity());
}

#[test]
fn selftest_reports() {
    let o = run(&["selftest"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("monomial group order: 1296\n"));
    assert!(out.contains("isotropic lines per symmetric form: 4\n"));
    assert!(out.contains("orbit x stabilizer: 12 x 108 = 1296\n"));
}
