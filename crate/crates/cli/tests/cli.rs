use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/water_tank")
}

fn desred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_desred"))
        .args(args)
        .output()
        .unwrap()
}

fn system_args(extra: &[&str]) -> Vec<String> {
    let f = fixtures();
    let mut v: Vec<String> = Vec::new();
    for (flag, file) in [
        ("--plant", "plant.fsa"),
        ("--sup", "supervisor.fsa"),
        ("--alphabet", "alphabet.txt"),
    ] {
        v.push(flag.into());
        v.push(f.join(file).to_string_lossy().into_owned());
    }
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn run_with(cmd: &str, extra: &[&str]) -> Output {
    let mut args = vec![cmd.to_string()];
    args.extend(system_args(extra));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    desred(&refs)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn attacker() -> String {
    fixtures().join("attacker.fsa").to_string_lossy().into_owned()
}

#[test]
fn pipeline_writes_identical_artifacts_twice() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = run_with(
            "pipeline",
            &["--attacker", &attacker(), "--out", dir.path().to_str().unwrap()],
        );
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let report = stdout(&out);
        assert!(report.contains("14 -> 3"));
        assert!(report.contains("ratio 14/3 (4.67)"));
    }
    for name in [
        "bts.fsa",
        "bts_attacked.fsa",
        "ce.fsa",
        "ac.fsa",
        "reduced_attacker.fsa",
        "report.txt",
        "reduced_attacker.dot",
    ] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
}

#[test]
fn pipeline_rejects_invalid_attacker_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fsa");
    std::fs::write(
        &bad,
        "automaton Bad\nstates: w x y\ninitial: w\nmarked: *\ntransitions:\nw H x\nx L# y\ny L# w\n",
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = run_with(
        "pipeline",
        &[
            "--attacker",
            bad.to_str().unwrap(),
            "--out",
            out_dir.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    let report = std::fs::read_to_string(out_dir.join("report.txt")).unwrap();
    assert!(report.contains("FAIL containment"));
    assert!(report.contains("H L# L#"));
}

#[test]
fn usage_and_parse_errors_exit_1() {
    assert_eq!(desred(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run_with("check", &[]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.fsa");
    std::fs::write(&junk, "automaton J\nstates: a\ninitial: a\nwhat is this\n").unwrap();
    let out = desred(&["export-dot", junk.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));
    assert_eq!(desred(&["--help"]).status.code(), Some(0));
}

#[test]
fn check_and_verify() {
    let out = run_with("check", &["--attacker", &attacker()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), 4);

    let expected = fixtures().join("reduced_expected.fsa");
    let out = run_with(
        "verify",
        &[
            "--attacker",
            &attacker(),
            "--candidate",
            expected.to_str().unwrap(),
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "attack-equivalent");

    let dir = tempfile::tempdir().unwrap();
    let silent = dir.path().join("silent.fsa");
    std::fs::write(&silent, "automaton Z\nstates: z\ninitial: z\nmarked: *\n").unwrap();
    let out = run_with(
        "verify",
        &["--attacker", &attacker(), "--candidate", silent.to_str().unwrap()],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("not attack-equivalent"));
}

#[test]
fn transform_reduce_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_with("transform", &["--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("CE 5 / AC 2"));
    assert!(dir.path().join("bts_attacked.fsa").exists());

    let reduced = dir.path().join("reduced.fsa");
    let out = run_with(
        "reduce",
        &[
            "--attacker",
            &attacker(),
            "--out",
            reduced.to_str().unwrap(),
            "--brute",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("reduction: 14 -> 3"));
    assert!(text.contains("brute-force minimum: 3 cells"));

    let out = desred(&["export-dot", reduced.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("shape=doublecircle").count(), 3);
}
