use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn argcl(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_argcl"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn workspace() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let files = [
        ("nae3.rel", "relation NAE3 3 { 001 010 011 100 101 110 }\n"),
        ("impl.rel", "relation IMPL 2 { 00 01 11 }\n"),
        ("tf.rel", "relation T 1 { 1 }\nrelation F 1 { 0 }\n"),
        (
            "inconsistent.arg",
            "use tf.rel\nformula a = T(x)\nformula b = F(x)\nkb a b\nclaim T(x)\n",
        ),
        (
            "chain.arg",
            "use impl.rel\nformula a = IMPL(x,y)\nformula b = IMPL(y,z)\nformula c = IMPL(x,z)\n\
             kb a b c\nclaim IMPL(x,z)\nrelevant b\n",
        ),
        ("unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n"),
        ("sat.cnf", "c one clause\np cnf 3 1\n1 2 -3 0\n"),
        (
            "abd.abd",
            "relation IMPL 2 { 00 01 11 }\nformula p = IMPL(h,q)\nkb p\nhypotheses h\nobservation q\n",
        ),
    ];
    for (name, text) in files {
        fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

#[test]
fn classify_nae3() {
    let dir = workspace();
    let o = argcl(dir.path(), &["classify", "nae3.rel"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "ARG: SigmaP2-complete\nARGCHECK: DP-complete\nARGREL: SigmaP2-complete\n"
    );
}

#[test]
fn check_on_inconsistent_knowledge_base_is_no() {
    let dir = workspace();
    let o = argcl(dir.path(), &["solve", "check", "inconsistent.arg"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "NO\n");
}

#[test]
fn express_eq_from_impl() {
    let dir = workspace();
    let o = argcl(dir.path(), &["express", "eq", "impl.rel"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "IMPL(y,x) & IMPL(x,y)\nverified: true\n");
}

#[test]
fn solve_questions_on_chain() {
    let dir = workspace();
    for (q, code) in [("sat", 0), ("imp", 0), ("arg", 0), ("check", 1), ("rel", 0)] {
        let o = argcl(dir.path(), &["solve", q, "chain.arg"]);
        assert_eq!(o.status.code(), Some(code), "solve {q}");
        let generic = argcl(dir.path(), &["--engine", "generic", "solve", q, "chain.arg"]);
        assert_eq!(stdout(&o), stdout(&generic), "solve {q} engines agree");
    }
}

#[test]
fn supports_lists_labels() {
    let dir = workspace();
    let o = argcl(dir.path(), &["supports", "--all", "chain.arg"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "support: {c}\nsupport: {a, b}\n");
    let o = argcl(dir.path(), &["supports", "chain.arg"]);
    assert_eq!(stdout(&o), "support: {c}\n");
}

#[test]
fn oracle_answers() {
    let dir = workspace();
    let o = argcl(dir.path(), &["oracle", "3sat", "unsat.cnf"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "NO\n"));
    let o = argcl(dir.path(), &["oracle", "critsat", "unsat.cnf"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "YES\n"));
    let o = argcl(dir.path(), &["oracle", "abdp", "abd.abd"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "YES\n"));
}

#[test]
fn reduce_writes_a_solvable_pair() {
    let dir = workspace();
    let o = argcl(dir.path(), &["reduce", "3sat-arg-neq", "sat.cnf", "--out", "t"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(dir.path().join("t.rel")).unwrap(), "relation NEQ 2 { 01 10 }\n");
    assert!(fs::read_to_string(dir.path().join("t.arg")).unwrap().starts_with("use t.rel\n"));
    let o = argcl(dir.path(), &["solve", "arg", "t.arg"]);
    assert_eq!(stdout(&o), "YES\n");

    let o = argcl(dir.path(), &["reduce", "critsat-argcheck-impl", "unsat.cnf"]);
    assert_eq!(o.status.code(), Some(0));
    let o = argcl(dir.path(), &["solve", "check", "unsat.critsat-argcheck-impl.arg"]);
    assert_eq!(stdout(&o), "YES\n");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let dir = workspace();
    assert_eq!(argcl(dir.path(), &["bogus"]).status.code(), Some(2));
    assert_eq!(argcl(dir.path(), &["reduce", "nope", "sat.cnf"]).status.code(), Some(2));
    assert_eq!(argcl(dir.path(), &["classify", "missing.rel"]).status.code(), Some(2));
    assert_eq!(argcl(dir.path(), &["oracle", "3sat", "abd.abd"]).status.code(), Some(2));
    // no relevant formula
    fs::write(dir.path().join("norel.arg"), "use impl.rel\nformula a = IMPL(x,y)\nkb a\nclaim IMPL(x,y)\n")
        .unwrap();
    assert_eq!(argcl(dir.path(), &["solve", "rel", "norel.arg"]).status.code(), Some(2));
}

#[test]
fn budget_errors_exit_3() {
    let dir = workspace();
    let o = argcl(dir.path(), &["--engine", "generic", "--max-models", "2", "solve", "imp", "chain.arg"]);
    assert_eq!(o.status.code(), Some(3));
    let o = argcl(dir.path(), &["--max-kb", "1", "supports", "--all", "chain.arg"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let dir = workspace();
    let a = argcl(dir.path(), &["props", "nae3.rel"]);
    let b = argcl(dir.path(), &["props", "nae3.rel"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("[language]\n"));
}
