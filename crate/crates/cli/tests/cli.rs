use std::io::Write;
use std::process::{Command, Output, Stdio};

fn holonomy(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_holonomy"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn run(args: &[&str]) -> Output {
    holonomy(args, None, &[])
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn machine_value(text: &str, key: &str) -> Option<String> {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|rest| rest.strip_prefix(' ')))
        .map(str::to_string)
}

#[test]
fn x2_is_decomposable() {
    let o = run(&["--machine", "decomposable", "builtin:x2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("holonomy-report 1\ncommand decomposable\n"));
    assert_eq!(machine_value(&s, "rank_q").as_deref(), Some("10"));
    assert_eq!(machine_value(&s, "falk_bound").as_deref(), Some("10"));
    assert_eq!(machine_value(&s, "bad_primes").as_deref(), Some("-"));
    assert_eq!(machine_value(&s, "overall").as_deref(), Some("true"));
    assert!(s.ends_with("verdict true\nend\n"));
}

#[test]
fn braid4_degree_three() {
    let o = run(&["--machine", "ranks", "builtin:braid4", "--max-degree", "3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(machine_value(&s, "rank_q.3").as_deref(), Some("10"));
    assert_eq!(machine_value(&s, "bound.3").as_deref(), Some("8"));
    assert_eq!(machine_value(&s, "verdict").as_deref(), Some("false"));
}

#[test]
fn assert_flag_sets_exit_status() {
    assert_eq!(run(&["--assert", "decomposable", "builtin:braid4"]).status.code(), Some(1));
    assert_eq!(run(&["--assert", "decomposable", "builtin:x3"]).status.code(), Some(0));
    assert_eq!(run(&["decomposable", "builtin:braid4"]).status.code(), Some(0));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["flats", "builtin:nope"]).status.code(), Some(2));
    assert_eq!(run(&["flats", "/nonexistent/file.json"]).status.code(), Some(2));
    let o = holonomy(&["flats", "-"], Some(r#"{"normals": [[1,0]], "builtin": "x2"}"#), &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = holonomy(&["flats", "-"], Some(r#"{"normals": [[1,0],[2,0]]}"#), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["ranks", "builtin:x3", "--field", "6"]).status.code(), Some(2));
    assert_eq!(run(&["graph", "kappa", "builtin:x3"]).status.code(), Some(2));
    assert_eq!(run(&["graph", "graphic-lcs", "builtin:braid4"]).status.code(), Some(2));
}

#[test]
fn guard_from_environment() {
    let o = holonomy(&["ranks", "builtin:x2"], None, &[("HOLONOMY_GUARD", "20")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
    let o = holonomy(&["ranks", "builtin:x2", "--max-degree", "2"], None, &[("HOLONOMY_GUARD", "1000")]);
    assert!(o.status.success());
}

#[test]
fn family_pipes_into_graphic_lcs() {
    let doc = stdout(&run(&["graph", "family", "--i", "1"]));
    let o = holonomy(&["--machine", "graph", "graphic-lcs", "-"], Some(&doc), &[]);
    assert!(o.status.success());
    // (1 - 2t)^5 through t^6
    assert_eq!(machine_value(&stdout(&o), "series").as_deref(), Some("1,-10,40,-80,80,-32,0"));
}

#[test]
fn flats_round_trip() {
    for name in ["x2", "braid4", "wheel", "pencil4"] {
        let doc = stdout(&run(&["flats", &format!("builtin:{name}"), "--emit-doc"]));
        for cmd in ["flats", "lcs"] {
            let direct = stdout(&run(&["--machine", cmd, &format!("builtin:{name}")]));
            let via = stdout(&holonomy(&["--machine", cmd, "-"], Some(&doc), &[]));
            assert_eq!(direct, via, "{name} {cmd}");
        }
    }
}

#[test]
fn machine_output_is_deterministic() {
    for args in [
        vec!["--machine", "ranks", "builtin:wheel", "--max-degree", "4"],
        vec!["--machine", "chen", "builtin:x3", "--direct"],
        vec!["--machine", "oracle", "builtin:pencil4"],
    ] {
        let a = stdout(&run(&args));
        let b = stdout(&run(&args));
        assert_eq!(a, b);
        assert!(a.starts_with("holonomy-report 1\n"));
    }
}

#[test]
fn cone_adds_a_triangle() {
    let doc = stdout(&run(&["graph", "cone", "builtin:braid3", "--edge", "1,2"]));
    let o = holonomy(&["--machine", "graph", "kappa", "-"], Some(&doc), &[]);
    let s = stdout(&o);
    assert_eq!(machine_value(&s, "kappa.1").as_deref(), Some("5"));
    assert_eq!(machine_value(&s, "kappa.2").as_deref(), Some("2"));
    assert_eq!(run(&["graph", "cone", "builtin:braid3", "--edge", "1,9"]).status.code(), Some(2));
}

#[test]
fn hs_check_on_a_triangle() {
    let ok = run(&["--assert", "hs-check", "builtin:braid3", "--exponents", "1,2"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&["--assert", "hs-check", "builtin:braid3", "--exponents", "1,1,2"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn examples_lists_builtins() {
    let s = stdout(&run(&["--machine", "examples"]));
    for name in ["x2", "x3", "braid6", "pencil5", "wheel", "gfam-3"] {
        assert!(s.lines().any(|l| l.ends_with(&format!(" {name}"))), "{name}");
    }
}
