mod common;

use std::fs;
use std::path::{Path, PathBuf};

use mcycles::cli::{run, EXIT_IMPOSSIBLE, EXIT_INPUT, EXIT_OK, EXIT_VERIFY_FAILED};
use mcycles::seqfile::parse_sequence_file;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn mcycles(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("mcycles").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn read_symbols(path: &Path) -> Vec<u32> {
    parse_sequence_file(&fs::read_to_string(path).unwrap()).unwrap().symbols().to_vec()
}

#[test]
fn verify_golden_files() {
    for name in [
        "knuth_5_3.seq",
        "x8_8_3.seq",
        "x8_converted_original_8_3.seq",
        "base_s_4_3.seq",
        "base_st_corrected_7_3.seq",
        "assembly_corrected_10_3.seq",
        "ucycle_5_2.seq",
    ] {
        let (code, out, _) = mcycles(&["verify", "--in", golden(name).to_str().unwrap()]);
        assert_eq!(code, EXIT_OK, "{name}: {out}");
        assert!(out.contains("ok=true"), "{name}: {out}");
    }
}

#[test]
fn original_base_fails_verification() {
    let (code, out, _) = mcycles(&["verify", "--in", golden("base_st_original_7_3.seq").to_str().unwrap()]);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    assert!(out.contains("ok=false"));
    assert!(out.contains("duplicates=2 missing=2 invalid=0"), "{out}");
}

#[test]
fn transition_reproduces_knuth_cycle() {
    let (code, out, err) = mcycles(&["construct", "--method", "transition", "--n", "5", "--t", "3"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out, fs::read_to_string(golden("knuth_5_3.seq")).unwrap());
    let (_, out, _) = mcycles(&["construct", "--method", "transition", "--n", "8", "--t", "3", "--kind", "u"]);
    assert_eq!(out, fs::read_to_string(golden("x8_8_3.seq")).unwrap());
}

#[test]
fn induction_uses_corrected_base() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("ten.seq");
    let (code, out, err) =
        mcycles(&["construct", "--method", "induct", "--n", "10", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("220 symbols"));
    assert_eq!(read_symbols(&out_path), read_symbols(&golden("assembly_corrected_10_3.seq")));
    let (_, out, _) = mcycles(&["construct", "--method", "induct", "--n", "4"]);
    assert_eq!(out, fs::read_to_string(golden("base_s_4_3.seq")).unwrap());
}

#[test]
fn conversion_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("m.seq");
    let (code, _, err) = mcycles(&[
        "construct", "--method", "convert", "--in", golden("x8_8_3.seq").to_str().unwrap(),
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let m = read_symbols(&out_path);
    assert_eq!(m.len(), 120);
    assert!(common::is_mcycle(&m, 8, 3));
    assert!(m.ends_with(&common::digits("111555333777444888222666")));

    let (code, out, _) =
        mcycles(&["construct", "--method", "convert", "--in", golden("ucycle_5_2.seq").to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse_sequence_file(&out).unwrap().symbols(), common::digits("112233445513524"));

    let (code, _, err) =
        mcycles(&["construct", "--method", "convert", "--in", golden("knuth_5_3.seq").to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT, "{err}");
}

#[test]
fn impossible_constructions_exit_two() {
    for args in [
        ["construct", "--method", "transition", "--n", "6", "--t", "3"],
        ["construct", "--method", "transition", "--n", "5", "--t", "4"],
        ["construct", "--method", "transition", "--n", "4", "--t", "2"],
    ] {
        let (code, _, err) = mcycles(&args);
        assert_eq!(code, EXIT_IMPOSSIBLE, "{args:?}: {err}");
        assert!(err.starts_with("error:"));
    }
}

#[test]
fn bad_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.seq");
    fs::write(&bad, "5 3 m\n1 1 1 2\n").unwrap();
    let (code, _, err) = mcycles(&["verify", "--in", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("needs 35 symbols"), "{err}");
    let (code, _, _) = mcycles(&["verify", "--in", dir.path().join("missing.seq").to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = mcycles(&["construct", "--method", "warp"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = mcycles(&["construct", "--method", "induct", "--n", "10", "--t", "4"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = mcycles(&["search", "--n", "4", "--t", "3"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, err) = mcycles(&["search", "--n", "7", "--t", "3", "--count", "--budget", "50"]);
    assert_eq!(code, EXIT_INPUT, "{err}");
    assert!(err.contains("budget"), "{err}");
    let (code, out, _) = mcycles(&["search", "--n", "9", "--t", "3", "--count"]);
    assert_eq!((code, out.starts_with("count=0 ")), (EXIT_OK, true));
}

#[test]
fn search_modes() {
    let (code, out, _) = mcycles(&["search", "--n", "4", "--t", "3", "--count"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("count=2 "), "{out}");
    let (code, out, _) = mcycles(&["search", "--n", "4", "--t", "3", "--count", "--equiv", "raw"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("count=720 "), "{out}");
    let (code, out, _) = mcycles(&["search", "--n", "4", "--t", "3", "--all"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    for line in &lines[..2] {
        let seq: Vec<u32> = line.split(' ').map(|s| s.parse().unwrap()).collect();
        assert!(common::is_mcycle(&seq, 4, 3));
    }
    let (code, out, _) = mcycles(&["search", "--n", "5", "--t", "3", "--first", "--seed", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(common::is_mcycle(parse_sequence_file(&out).unwrap().symbols(), 5, 3));
    let (code, out, _) = mcycles(&["search", "--n", "3", "--t", "3", "--first"]);
    assert_eq!(code, EXIT_IMPOSSIBLE);
    assert!(out.starts_with("no Mcycle found"));
    let (code, out, _) = mcycles(&["search", "--n", "4", "--t", "3", "--all", "--prefix", "1,1,1,2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().take_while(|l| !l.starts_with("count")).all(|l| l.starts_with("1 1 1 2")));
}

#[test]
fn graph_dot_output() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("t53.dot");
    let (code, out, _) = mcycles(&["graph", "--n", "5", "--t", "3", "--kind", "m", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("3 vertices, 7 edges"));
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph \"T(5,3)\" {"));
    assert_eq!(text.matches(" -> ").count(), 7);
    assert!(text.contains("\"1\" -> \"0\" [label=\"(1,0;4)\"];"), "{text}");
    let (code, _, _) = mcycles(&["graph", "--n", "8", "--t", "3", "--kind", "u", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(fs::read_to_string(&dot).unwrap().contains("(1,2;5)"));
}

#[test]
fn written_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (n, t, kind) in [("7", "3", "m"), ("11", "3", "u"), ("7", "4", "m")] {
        let path = dir.path().join(format!("{n}_{t}_{kind}.seq"));
        let (code, _, err) = mcycles(&[
            "construct", "--method", "transition", "--n", n, "--t", t, "--kind", kind, "--seed", "5",
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_OK, "{err}");
        let (code, out, _) = mcycles(&["verify", "--in", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(fs::read_to_string(&path).unwrap().lines().all(|l| l.len() <= 70));
    }
}
