use std::path::PathBuf;
use std::process::{Command, Output};

use petri_bound::multiset::Multiset;
use petri_bound::net::parse_net_unchecked;

fn n0() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/n0.net")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_petri-bound"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ms(s: &str) -> Multiset {
    s.parse().unwrap()
}

#[test]
fn simulate_prints_the_trace() {
    let o = run(&[
        "simulate",
        n0().to_str().unwrap(),
        "--fire",
        "t1",
        "--fire",
        "t2",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{a:1, b:1, c:1}\n{c:2}\n{b:2, c:1}\n");
}

#[test]
fn bound_writes_the_bounded_net() {
    let o = run(&["bound", n0().to_str().unwrap(), "--capacity", "c=2"]);
    assert!(o.status.success());
    let (net, m) = parse_net_unchecked(&stdout(&o)).unwrap();
    let t1 = &net.transitions()[0];
    assert_eq!(t1.pre, ms("{a+:1,b+:1,c-:1}"));
    assert_eq!(t1.post, ms("{a-:1,b-:1,c+:1}"));
    assert_eq!(m.unwrap(), ms("{a+:1,b+:1,c+:1,c-:1}"));
}

#[test]
fn bounded_nets_can_be_simulated() {
    let dir = std::env::temp_dir().join(format!("petri-bound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("b.net");
    let o = run(&[
        "bound",
        n0().to_str().unwrap(),
        "--capacity",
        "c=2",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = run(&["simulate", out.to_str().unwrap(), "--fire", "t1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "{a-:1, b-:1, c+:2}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_comm_passes_with_counts() {
    let o = run(&[
        "verify",
        n0().to_str().unwrap(),
        "--philosophy",
        "comm",
        "--token-bound",
        "3",
        "--firing-bound",
        "2",
    ]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("objects: 84 / 84"));
    assert!(s.contains("iso: PASS"));
}

#[test]
fn verify_indiv_with_pullback() {
    let o = run(&[
        "verify",
        n0().to_str().unwrap(),
        "--philosophy",
        "indiv",
        "--token-bound",
        "2",
        "--firing-bound",
        "1",
        "--pullback",
        "--samples",
        "5",
    ]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("pullback: PASS"));
    let o = run(&[
        "verify",
        n0().to_str().unwrap(),
        "--philosophy",
        "comm",
        "--pullback",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports_failure_with_status_one() {
    let o = run(&[
        "verify",
        n0().to_str().unwrap(),
        "--philosophy",
        "comm",
        "--token-bound",
        "4",
        "--firing-bound",
        "2",
        "--samples",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("iso: FAIL"));
}

#[test]
fn sampled_output_is_reproducible() {
    let net = n0();
    let args = [
        "verify",
        net.to_str().unwrap(),
        "--philosophy",
        "comm",
        "--samples",
        "30",
        "--seed",
        "9",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn comonad_laws() {
    let o = run(&[
        "check-comonad",
        n0().to_str().unwrap(),
        "--philosophy",
        "comm",
    ]);
    assert!(o.status.success());
    let o = run(&[
        "check-comonad",
        n0().to_str().unwrap(),
        "--philosophy",
        "indiv",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(s.contains("indiv coassociativity: FAIL"));
    assert!(s.contains("indiv coassociativity after projections: PASS"));
    assert!(s.contains("indiv left counit: PASS"));
}

#[test]
fn chi_of_a_morphism() {
    let o = run(&["chi", n0().to_str().unwrap(), "{a:1,b:1} | t1 ; t2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("chi: {t1:1, t2:1}\ndom: {a:1, b:1}\ncod: {b:2}\n"));
}

#[test]
fn semantics_lists_tips() {
    let o = run(&[
        "semantics",
        n0().to_str().unwrap(),
        "{c:1} | t2",
        "--bound",
        "2",
    ]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("{b:2} <- {c:1} | {t2:1} | {b:2} -> {c:1}"));
    assert!(s.ends_with("tip elements: 1\n"));
}

#[test]
fn explore_and_state_cap() {
    let o = run(&["explore", n0().to_str().unwrap(), "--k-bound", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("4-bounded: yes"));
    let o = run(&["explore", n0().to_str().unwrap(), "--k-bound", "3"]);
    assert!(stdout(&o).contains("3-bounded: no"));
    let o = Command::new(env!("CARGO_BIN_EXE_petri-bound"))
        .args(["explore", n0().to_str().unwrap()])
        .env("PETRI_BOUND_MAX_STATES", "2")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("complete: no"));
}

#[test]
fn export_dot() {
    let o = run(&["export-dot", n0().to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches(" -> ").count(), 6);
    let o = run(&[
        "export-dot",
        n0().to_str().unwrap(),
        "--bounded",
        "--capacity",
        "b=4",
    ]);
    assert_eq!(stdout(&o).matches(" color=red").count(), 3);
    let o = run(&["export-dot", n0().to_str().unwrap(), "--reachability"]);
    assert!(stdout(&o).starts_with("digraph reachability {"));
    let o = run(&[
        "export-dot",
        n0().to_str().unwrap(),
        "--morphism",
        "a b | t1",
    ]);
    assert_eq!(stdout(&o).matches("shape=box").count(), 1);
}

#[test]
fn errors_exit_with_two() {
    let o = run(&["simulate", n0().to_str().unwrap(), "--fire", "t9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown transition `t9`"));

    let dir = std::env::temp_dir().join(format!("petri-bound-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.net");
    std::fs::write(
        &bad,
        "{\n  \"places\": [\"a\"],\n  \"transitions\": [ oops ]\n}\n",
    )
    .unwrap();
    let o = run(&["simulate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    std::fs::remove_dir_all(dir).unwrap();

    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["bound", n0().to_str().unwrap(), "--capacity", "a=0"])
            .status
            .code(),
        Some(2)
    );
}
