use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use starheight::cost::fixtures;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_starheight"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn regex_file(dir: &Path, name: &str, re: &str) -> PathBuf {
    write(dir, name, &format!("alphabet: a b\n{re}\n"))
}

fn run(args: &[&Path]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(o: &Output, key: &str) -> Option<String> {
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")).map(str::to_string))
}

fn setup() -> (TempDir, PathBuf, PathBuf, PathBuf) {
    let dir = TempDir::new().unwrap();
    let ex1 = write(dir.path(), "ex1.cost", &fixtures::example1().to_text());
    let ex2 = write(dir.path(), "ex2.cost", &fixtures::example2().to_text());
    let ex3 = write(dir.path(), "ex3.cost", &fixtures::example3().to_text());
    (dir, ex1, ex2, ex3)
}

#[test]
fn star_height_of_small_languages() {
    let (dir, ..) = setup();
    for (re, h) in [("(a*b*)*", "1"), ("ab+ba", "0"), ("a*", "1")] {
        let f = regex_file(dir.path(), "l.re", re);
        let o = run(&[Path::new("star-height"), &f]);
        assert!(o.status.success(), "{re}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(field(&o, "star_height").as_deref(), Some(h), "{re}");
        assert!(field(&o, "cycle_rank_cap").is_some());
    }
}

#[test]
fn parse_errors_exit_with_two() {
    let (dir, ex1, ..) = setup();
    let f = regex_file(dir.path(), "bad.re", "(a*b");
    assert_eq!(run(&[Path::new("star-height"), &f]).status.code(), Some(2));
    let empty = write(dir.path(), "empty", "");
    assert_eq!(run(&[Path::new("export-dot"), &empty]).status.code(), Some(2));
    let o = bin().arg("evaluate").arg(&ex1).arg("abc").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_and_alphabet_exit_codes() {
    let (dir, ex1, ..) = setup();
    let f = regex_file(dir.path(), "l.re", "(ab)*");
    let o = bin()
        .args(["star-height", "--budget-states", "5"])
        .arg(&f)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let one = write(dir.path(), "one.re", "alphabet: a\na*\n");
    assert_eq!(run(&[Path::new("limitedness"), &ex1, &one]).status.code(), Some(4));
}

#[test]
fn limitedness_verdicts_and_certificates() {
    let (dir, ex1, ex2, _) = setup();
    let ab = regex_file(dir.path(), "ab.re", "(ab)*");
    let cert = dir.path().join("s.strategy");
    let o = bin()
        .arg("limitedness")
        .arg(&ex1)
        .arg(&ab)
        .arg("--cert-out")
        .arg(&cert)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(field(&o, "verdict").as_deref(), Some("limited"));
    let bound: u64 = field(&o, "bound").unwrap().parse().unwrap();
    assert!(bound >= 1);
    let sim = run(&[Path::new("simulate-strategy"), &cert, &ex1, &ab]);
    assert_eq!(field(&sim, "result").as_deref(), Some("ok"));

    let astar = regex_file(dir.path(), "a.re", "a*");
    let o = run(&[Path::new("limitedness"), &ex1, &astar]);
    assert_eq!(field(&o, "verdict").as_deref(), Some("unlimited"));
    assert_eq!(field(&o, "witness_prefix").as_deref(), Some("eps"));
    assert_eq!(field(&o, "witness_loop").as_deref(), Some("a"));
    let witness = PathBuf::from(field(&o, "certificate").unwrap());
    let prof = bin()
        .arg("value-profile")
        .arg(&ex1)
        .arg(&astar)
        .arg("--lasso")
        .arg(&witness)
        .output()
        .unwrap();
    assert_eq!(field(&prof, "strictly_increasing").as_deref(), Some("true"));

    let all = regex_file(dir.path(), "all.re", "(a+b)*");
    let o = run(&[Path::new("limitedness"), &ex2, &all]);
    assert_eq!(field(&o, "verdict").as_deref(), Some("unlimited"));
}

#[test]
fn evaluate_prints_values() {
    let (_dir, ex1, _, ex3) = setup();
    for (a, w, v) in [(&ex1, "aabaaa", "3"), (&ex3, "aabaaaaa", "2"), (&ex1, "", "0")] {
        let o = bin().arg("evaluate").arg(a).arg(w).output().unwrap();
        assert_eq!(field(&o, "value").as_deref(), Some(v), "{w}");
    }
    let mut a = fixtures::example1();
    a.finals.clear();
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "dead.cost", &a.to_text());
    let o = bin().arg("evaluate").arg(&f).arg("ab").output().unwrap();
    assert_eq!(field(&o, "value").as_deref(), Some("inf"));
}

#[test]
fn value_profile_lists_lengths() {
    let (dir, ex1, ..) = setup();
    let ab = regex_file(dir.path(), "ab.re", "(ab)*");
    let o = bin()
        .arg("value-profile")
        .arg(&ex1)
        .arg(&ab)
        .args(["--max-len", "4"])
        .output()
        .unwrap();
    assert_eq!(field(&o, "length_0").as_deref(), Some("0"));
    assert_eq!(field(&o, "length_1").as_deref(), Some("-"));
    assert_eq!(field(&o, "length_4").as_deref(), Some("1"));
}

#[test]
fn dot_exports() {
    let (dir, ex1, ..) = setup();
    let o = run(&[Path::new("export-dot"), &ex1]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("label=\"a/inc(0)\""));
    assert!(dot.contains("label=\"b/reset(0)\""));
    assert_eq!(dot.matches("shape=doublecircle").count(), 1);

    let ab = regex_file(dir.path(), "ab.re", "(ab)*");
    let cert = dir.path().join("s.strategy");
    bin()
        .arg("limitedness")
        .arg(&ex1)
        .arg(&ab)
        .arg("--cert-out")
        .arg(&cert)
        .output()
        .unwrap();
    let dot = stdout(&run(&[Path::new("export-dot"), &cert]));
    assert!(dot.contains("shape=box"));
    let dot = stdout(&run(&[Path::new("export-dot"), &ab]));
    assert!(dot.starts_with("digraph dfa"));
}
