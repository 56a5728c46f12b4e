use std::path::PathBuf;
use std::process::{Command, Output};

fn coreseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coreseq")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn line_with<'a>(text: &'a str, prefix: &str) -> &'a str {
    text.lines().find(|l| l.starts_with(prefix)).unwrap_or_else(|| panic!("no `{prefix}` line in:\n{text}"))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coreseq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn summand_counts_of_the_z3z3_system() {
    let out = coreseq(&["omega", "--scenario", "builtin:z3z3", "--invariant", "s", "--n", "6"]);
    assert!(out.status.success());
    assert_eq!(line_with(&stdout(&out), "#data"), "#data 1,3,9,27,81,243");
}

#[test]
fn c7_dimensions_with_a_guess() {
    let out = coreseq(&["omega", "--scenario", "builtin:c7", "--n", "30", "--guess", "cfinite"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(line_with(&text, "#data").starts_with("#data 2,4,8,16,32,57,114,193,386,639,1278,2094,4188,6829,"));
    assert_eq!(line_with(&text, "#rec"), "#rec x[n] = 5*x[n-2] - 6*x[n-4] + x[n-6]");
}

#[test]
fn published_prefixes() {
    let out = coreseq(&["guess", "cfinite", "--terms", "1,4,35,310,2789,25096", "--max-order", "3"]);
    assert!(out.status.success());
    assert_eq!(line_with(&stdout(&out), "#rec"), "#rec x[n] = 9*x[n-1] + x[n-2] - 9*x[n-3]");

    let out = coreseq(&["guess", "cfinite", "--terms", "1,4,19,94,469,2344", "--max-order", "3"]);
    assert!(out.status.success());
    assert_eq!(line_with(&stdout(&out), "#rec"), "#rec x[n] = x[n-1] + 25*x[n-2] - 25*x[n-3]");
}

#[test]
fn prefix_scenarios_print_their_terms() {
    let out = coreseq(&["omega", "--scenario", "builtin:s9-prefix", "--n", "6"]);
    assert!(out.status.success());
    assert_eq!(line_with(&stdout(&out), "#data"), "#data 1,4,35,310,2789,25096");
    let out = coreseq(&["omega", "--scenario", "builtin:s9-prefix", "--n", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_cyclic_matches_the_engine() {
    let out = coreseq(&["oracle", "cyclic", "--p", "7", "--jordan", "2", "--n", "14", "--kinds", "c,s"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("#data c 2,4,8,16,32,57,114,193,386,639,1278,2094,4188,6829"));
    assert!(text.contains("#data s 1,2,3,6,10,19,33,61,108,197,352,638,1145,2069"));
}

#[test]
fn oracle_reads_generator_files() {
    let gens = temp_file("j2.gens", "# J2 over F_7\np=7\norder=7\n1 1\n0 1\n");
    let out = coreseq(&["oracle", "elab", "--file", gens.to_str().unwrap(), "--n", "6", "--kinds", "c,d"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("#data c 2,4,8,16,32,57"));

    let out = coreseq(&["oracle", "elab", "--file", "builtin:z3z3-m", "--n", "3", "--kinds", "c"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("#data c 6,27,90"));

    let out = coreseq(&["oracle", "channels", "--file", "builtin:c7-j2", "--depth", "4", "--fit-period", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("channel dim forward prefix=[2,5,2,5,2] tail=quasipoly T=2 start=0 polys=[2;5]"));
}

#[test]
fn substitution_from_a_file() {
    let ps = temp_file("walks.ps", "coeffs: x^-1 + x\ninit: 1\n");
    let out = coreseq(&[
        "tri",
        "--polyseq",
        ps.to_str().unwrap(),
        "--a",
        "rec: ; from: 1; prefix: 1",
        "--b",
        "rec: 0; prefix: 0",
        "--n",
        "30",
        "--guess",
        "algebraic",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(line_with(&text, "#data").starts_with("#data 1,0,2,0,6,0,20,0,70,"));
    assert!(line_with(&text, "#eq").starts_with("#eq "));
}

#[test]
fn sequence_arithmetic() {
    let out = coreseq(&["seq", "dilate", "--a", "rec: 1,1; prefix: 0,1", "--d", "2", "--n", "6"]);
    assert!(out.status.success());
    assert_eq!(line_with(&stdout(&out), "#data"), "#data 0,1,3,8,21,55");
    let out = coreseq(&["seq", "partial-sums", "--a", "rec: 2; prefix: 1", "--n", "5"]);
    assert_eq!(line_with(&stdout(&out), "#data"), "#data 1,3,7,15,31");
}

#[test]
fn usage_errors_exit_with_two() {
    let out = coreseq(&["guess", "cfinite", "--terms", "1,two,3", "--max-order", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--terms"));
    let out = coreseq(&["omega", "--scenario", "builtin:nope"]);
    assert_eq!(out.status.code(), Some(2));
    let bad = temp_file("bad.scn", "[system] name=t size=1\n[matrix] T[1][1] = \"0 - w\"\n");
    let out = coreseq(&["omega", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    let out = coreseq(&["verify", "paper", "--only", "42"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["omega", "--scenario", "builtin:z3z3", "--n", "8", "--info", "--rows"];
    assert_eq!(coreseq(&args).stdout, coreseq(&args).stdout);
}

#[test]
fn verify_single_criterion() {
    let out = coreseq(&["verify", "paper", "--only", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("criterion  2: PASS"));
}
