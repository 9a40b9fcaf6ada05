use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn zb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zb")).args(args).env_remove("ZB_DATA_DIR").output().expect("run zb")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Compares against `tests/golden/<name>`; `ZB_BLESS=1` rewrites the file.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var("ZB_BLESS").is_ok_and(|v| v == "1") {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn check_kss_on_witness_graph() {
    let g = data("witness_b25_color1.txt");
    let o = zb(&["check-kss", g.to_str().unwrap(), "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "K_{2,2}-free: true\n");
    let o = zb(&["check-kss", g.to_str().unwrap(), "--s", "5", "--complement"]);
    assert_eq!(o.status.code(), Some(0));
    let o = zb(&["check-kss", g.to_str().unwrap(), "--s", "4", "--complement"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("K_{4,4}-free: false\n"));
}

#[test]
fn ramsey_upper_b25() {
    let tables = format!("{},{}", data("z2.csv").display(), data("z5.csv").display());
    let o = zb(&["ramsey-upper", "--avoid", "2,5", "--tables", &tables, "--n-max", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "b(2,5) <= 17"));
    golden("ramsey_b25.txt", &stdout(&o));
}

#[test]
fn ramsey_upper_b223_with_packaged_tables() {
    let o = zb(&["ramsey-upper", "--avoid", "2,2,3", "-q"]);
    assert_eq!(o.status.code(), Some(0));
    golden("ramsey_b223.txt", &stdout(&o));
    let o = zb(&["ramsey-upper", "--avoid", "2,2,3", "--n-max", "17", "-q"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tables_verify_passes() {
    let o = zb(&["tables", "verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    golden("tables_verify.txt", &stdout(&o));
}

#[test]
fn witnesses() {
    let o = zb(&["verify-witness", data("witness_b25.col").to_str().unwrap(), "--avoid", "2,5"]);
    assert_eq!(o.status.code(), Some(0));
    golden("witness_b25.txt", &stdout(&o));
    let o = zb(&["verify-witness", data("witness_b223.col").to_str().unwrap(), "--avoid", "2,2,3"]);
    assert_eq!(o.status.code(), Some(0));
    golden("witness_b223.txt", &stdout(&o));
    let o = zb(&["verify-witness", data("witness_b25.col").to_str().unwrap(), "--avoid", "2,4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("witness: FAIL\n"));
    let o = zb(&["verify-witness", data("witness_b25.col").to_str().unwrap(), "--avoid", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_small_z() {
    let o = zb(&["enumerate", "--spec", "(6,6,0+)_{2}"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("max edges: 16\n"));
    let o = zb(&["enumerate", "--spec", "(6,6,16+)_2"]);
    golden("enumerate_6x6.txt", &stdout(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(zb(&["enumerate", "--spec", "(6,6"]).status.code(), Some(2));
    assert_eq!(zb(&["enumerate"]).status.code(), Some(2));
    assert_eq!(zb(&["enumerate", "--spec", "(2,2,5+)"]).status.code(), Some(2));
    assert_eq!(zb(&["canon", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(zb(&["sidon", "--group", "quux", "--size", "3"]).status.code(), Some(2));
    assert_eq!(
        zb(&["bound", "--s", "2", "--max-m", "4", "--max-n", "4", "--out", "/nonexistent/dir/x.csv"]).status.code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2 2\n10\n1x\n").unwrap();
    assert_eq!(zb(&["canon", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    assert_eq!(zb(&["enumerate", "--spec", "(8,8,0+)"]).status.code(), Some(1));
}

#[test]
fn canon_and_cayley() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.txt");
    let o = zb(&["cayley", "--group", "z7", "--set", "0,1,3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = zb(&["canon", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    golden("canon_fano.txt", &stdout(&o));
    // a relabeled copy has the same canonical output
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines[1..].reverse();
    let shuffled = dir.path().join("y.txt");
    std::fs::write(&shuffled, lines.join("\n")).unwrap();
    assert_eq!(stdout(&zb(&["canon", shuffled.to_str().unwrap()])), stdout(&o));
}

#[test]
fn sidon_dic4() {
    let o = zb(&["sidon", "--group", "dic4", "--size", "4", "--complement-free", "5", "--up-to-iso", "-q"]);
    assert_eq!(o.status.code(), Some(0));
    golden("sidon_dic4.txt", &stdout(&o));
}

#[test]
fn plan_path_default() {
    let o = zb(&["plan-path", "--from", "7,7", "--target", "(16,16,189+)_{5,2}"]);
    assert_eq!(o.status.code(), Some(0));
    golden("plan_16x16.txt", &stdout(&o));
}

#[test]
fn extend_resumes_from_checkpoints() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("path.txt");
    std::fs::write(&path, "(4,4,8+)_{2}\n(5,4,10+)_{2}\n(5,5,12+)_{2}\n").unwrap();
    let ck = dir.path().join("ck");
    let out1 = dir.path().join("a.gs");
    let o = zb(&[
        "extend",
        "--path",
        path.to_str().unwrap(),
        "--checkpoint",
        ck.to_str().unwrap(),
        "--out",
        out1.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(ck.join("5x5_e12_s2.gs").exists());
    let out2 = dir.path().join("b.gs");
    let o = zb(&[
        "extend",
        "--path",
        path.to_str().unwrap(),
        "--checkpoint",
        ck.to_str().unwrap(),
        "--out",
        out2.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(checkpoint)"));
    assert_eq!(std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());

    let direct = dir.path().join("c.gs");
    zb(&["enumerate", "--spec", "(5,5,12+)_{2}", "--out", direct.to_str().unwrap()]);
    assert_eq!(std::fs::read(&out1).unwrap(), std::fs::read(&direct).unwrap());

    let o = zb(&["extend", "--path", path.to_str().unwrap(), "--max-graphs", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = zb(&["extend", "--path", path.to_str().unwrap(), "--target", "(5,5,13+)_{2}"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 4] = [
        &["enumerate", "--spec", "(6,6,12+)_{2,3}"],
        &["bound", "--s", "3", "--max-m", "18", "--max-n", "18", "--seed", "z3.csv"],
        &["sidon", "--group", "z2xdih3", "--size", "3"],
        &["verify-witness", "witness_b223.col", "--avoid", "2,2,3"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for threads in ["1", "4"] {
            let out = dir.path().join(format!("{i}_{threads}"));
            let mut full: Vec<&str> = args.to_vec();
            full.extend(["--threads", threads]);
            if !matches!(args[0], "verify-witness") {
                full.extend(["--out", out.to_str().unwrap()]);
            }
            let o = zb(&full);
            assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
            let file = std::fs::read(&out).unwrap_or_default();
            outputs.push((o.stdout, file));
        }
        assert_eq!(outputs[0], outputs[1], "{args:?}");
    }
}

#[test]
fn help_documents_formats() {
    for (cmd, needle) in [
        ("enumerate", "m lines of n characters"),
        ("canon", "m lines of n characters"),
        ("check-kss", "m lines of n characters"),
        ("extend", "(m,n,e+)_{s,t}"),
        ("bound", "m,n,s,lower,upper,exact"),
        ("sidon", "dicyclic"),
        ("verify-witness", "n lines of n digits"),
    ] {
        let o = zb(&[cmd, "--help"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains(needle), "{cmd} --help lacks {needle:?}");
    }
}

#[test]
fn data_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("z2.csv"), "m,n,s,lower,upper,exact\n1,1,2,1,1,true\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_zb"))
        .args(["bound", "--s", "2", "--max-m", "2", "--max-n", "2", "--seed", "z2.csv"])
        .current_dir(dir.path().parent().unwrap())
        .env("ZB_DATA_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("m,n,s,lower,upper,exact\n1,1,2,1,1,true\n"));
}
