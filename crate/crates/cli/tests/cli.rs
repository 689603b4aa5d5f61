use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn tempo(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_tempo")).args(args).output().expect("spawn tempo");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Writes `text` to a file unique to this test process.
fn file(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("tempo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn gadget(name: &str, extra: &[&str]) -> String {
    let mut args = vec!["gadget", name];
    args.extend_from_slice(extra);
    let r = tempo(&args);
    assert_eq!(r.code, 0, "{}", r.stderr);
    r.stdout
}

const UNIV_AB: &str = "automaton univ\nalphabet a b\ninit u\nfinal u\ntrans u a -> u\ntrans u b -> u\n";
const EMPTY_AB: &str = "automaton none\nalphabet a b\ninit e\n";

#[test]
fn membership_exit_codes() {
    let a = file("a.ta", &gadget("A", &[]));
    assert_eq!(tempo(&["member", &a, "--word", "1/2 a 1 a"]).code, 0);
    let r = tempo(&["member", &a, "--word", "1/2 a 1/4 a"]);
    assert_eq!((r.code, r.stdout.trim()), (1, "reject"));
    // Unknown letter, zero delay, garbage: all usage errors.
    assert_eq!(tempo(&["member", &a, "--word", "1 b"]).code, 2);
    assert_eq!(tempo(&["member", &a, "--word", "0 a 1 a"]).code, 2);
    assert_eq!(tempo(&["member", &a, "--word", "0 a 1 a", "--permissive"]).code, 0);
    assert_eq!(tempo(&["member", &a, "--word", "x a"]).code, 2);
    assert_eq!(tempo(&["member", "/nonexistent.ta", "--word", "1 a"]).code, 2);
    assert_eq!(tempo(&["frobnicate"]).code, 2);
}

#[test]
fn omega_membership() {
    let l2 = file("l2.tba", &gadget("L2-omega", &["--alphabet", "a,b"]));
    assert_eq!(tempo(&["member-omega", &l2, "--word", "1 a | 1 b"]).code, 0);
    assert_eq!(tempo(&["member-omega", &l2, "--word", "1 c | 1 b"]).code, 1);
    assert_eq!(tempo(&["member-omega", &l2, "--word", "1 a | 1 c"]).code, 0);
    assert_eq!(tempo(&["member-omega", &l2, "--word", "1 a 1 b"]).code, 2);
}

#[test]
fn stopwatch_cap_is_inconclusive() {
    let sw = file(
        "chain.sw",
        "stopwatch chain\nalphabet a\nclocks x\ninit p\nfinal f\ntrans p eps -> q\ntrans q eps -> r\ntrans r a -> f\n",
    );
    assert_eq!(tempo(&["member-sw", &sw, "--word", "1 a"]).code, 0);
    let r = tempo(&["member-sw", &sw, "--word", "1 a", "--cap", "1"]);
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(r.stderr.contains("inconclusive"));
}

#[test]
fn determinism_and_complement() {
    let a = file("det-a.ta", &gadget("A", &[]));
    let r = tempo(&["det-check", &a]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("overlap"));
    assert_eq!(tempo(&["complement", &a]).code, 2);

    let r1 = file("r1.ta", &gadget("R1", &[]));
    assert_eq!(tempo(&["det-check", &r1]).code, 0);
    let comp = tempo(&["complement", &r1]);
    assert_eq!(comp.code, 0);
    let comp = file("r1c.ta", &comp.stdout);
    assert_eq!(tempo(&["member", &comp, "--word", "1/4 a 1 a 3/4 a"]).code, 1);
    assert_eq!(tempo(&["member", &comp, "--word", "1/4 a 1 a 1/2 a"]).code, 0);
}

#[test]
fn regions_commands() {
    let a = file("reg-a.ta", &gadget("A", &[]));
    assert_eq!(tempo(&["empty", &a]).code, 1);
    let w = tempo(&["witness", &a]);
    assert_eq!(w.code, 0);
    assert_eq!(tempo(&["member", &a, "--word", w.stdout.trim()]).code, 0);

    let dead =
        file("dead.ta", "automaton dead\nalphabet a\nclocks x\ninit p\nfinal q\ntrans p a when x<1 & x>1 -> q\n");
    assert_eq!(tempo(&["empty", &dead]).code, 0);
    assert_eq!(tempo(&["witness", &dead]).code, 1);

    let u = tempo(&["untime", &a]);
    assert_eq!(u.code, 0);
    assert!(u.stdout.contains("clocks\n"));

    let univ = file("univ.tba", "buchi univ\nalphabet a\ninit u\nfinal u\ntrans u a -> u\n");
    assert_eq!(tempo(&["empty-omega", &univ]).code, 1);
}

#[test]
fn builds_respect_resource_bounds() {
    let l = file("l3.ta", &gadget("An", &["-n", "3", "--alphabet", "a,b"]));
    let r = tempo(&["build", "thm2", "-L", &l, "-c", "c", "-n", "3", "--summary"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["clocks"], 3);
    // Three clocks do not fit a two-clock bound.
    assert_eq!(tempo(&["build", "thm2", "-L", &l, "-n", "2"]).code, 2);

    let empty = file("empty.ta", EMPTY_AB);
    let thm1 = tempo(&["build", "thm1", "-L", &empty]);
    assert_eq!(thm1.code, 0);
    let thm1 = file("thm1.ta", &thm1.stdout);
    assert_eq!(tempo(&["member", &thm1, "--word", "1 b 1 c 1/2 a 1 a"]).code, 0);
    assert_eq!(tempo(&["member", &thm1, "--word", "1 b 1 c 1/2 a 1/2 a"]).code, 1);

    assert_eq!(tempo(&["build", "thm4", "-L", &empty]).code, 0);
    let a_only = file("aonly.ta", "automaton x\nalphabet a\ninit p\n");
    assert_eq!(tempo(&["build", "thm4", "-L", &a_only]).code, 2);
    // The separator must be fresh.
    assert_eq!(tempo(&["build", "thm1", "-L", &empty, "-c", "a"]).code, 2);

    let tba = tempo(&["build", "tba", "-L", &empty]);
    assert_eq!(tba.code, 0);
    let tba = file("red.tba", &tba.stdout);
    assert_eq!(tempo(&["member-omega", &tba, "--word", "1/2 a 1 a 1 c | 1 b"]).code, 0);
    assert_eq!(tempo(&["member-omega", &tba, "--word", "1/2 a 1/2 a 1 c | 1 b"]).code, 1);
}

#[test]
fn language_algebra() {
    let a = file("alg-a.ta", &gadget("A", &["--alphabet", "a,b"]));
    let r2 = file("alg-r2.ta", &gadget("R2", &[]));
    let u = file("alg-u.ta", &tempo(&["union", &a, &r2]).stdout);
    assert_eq!(tempo(&["member", &u, "--word", "1 b 2 b"]).code, 0);
    assert_eq!(tempo(&["member", &u, "--word", "1/2 a 1 a"]).code, 0);
    let p = file("alg-p.ta", &tempo(&["product", &a, &r2]).stdout);
    assert_eq!(tempo(&["member", &p, "--word", "1/2 a 1 a"]).code, 1);
    let cat = tempo(&["concat-sep", &a, "c", &r2]);
    assert_eq!(cat.code, 0);
    let cat = file("alg-c.ta", &cat.stdout);
    assert_eq!(tempo(&["member", &cat, "--word", "1/2 a 1 a 1 c 1 b 1 b"]).code, 0);
    assert_eq!(tempo(&["concat-sep", &a, "a", &r2]).code, 2);
}

#[test]
fn shuffle_commands() {
    let r = tempo(&["shuffle-member", "--word", "1 a 2 b 3 a", "--x", "1 a 3 a", "--y", "2 b"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("owners: x y x"));
    assert_eq!(tempo(&["shuffle-member", "--word", "1 a 2 b", "--x", "2 a", "--y", "1 b"]).code, 1);

    let s1 = tempo(&["shuffle-sample", "--x", "1 a 2 a", "--y", "3 b", "--count", "4", "--seed", "7"]);
    let s2 = tempo(&["shuffle-sample", "--x", "1 a 2 a", "--y", "3 b", "--count", "4", "--seed", "7"]);
    assert_eq!(s1.code, 0);
    assert_eq!(s1.stdout, s2.stdout);
    for w in s1.stdout.lines() {
        assert_eq!(tempo(&["shuffle-member", "--word", w, "--x", "1 a 2 a", "--y", "3 b"]).code, 0);
    }

    let r1 = file("sh-r1.ta", &gadget("R1", &[]));
    let r2 = file("sh-r2.ta", &gadget("R2", &[]));
    let sw = tempo(&["shuffle-aut", &r1, &r2]);
    assert_eq!(sw.code, 0);
    let sw = file("sh.sw", &sw.stdout);
    assert_eq!(tempo(&["member-sw", &sw, "--word", "1/4 a 1 b 1/2 b 1 a 3/4 a"]).code, 0);
    assert_eq!(tempo(&["member-sw", &sw, "--word", "1/4 a 1 b 1/2 b 1 a 1/2 a"]).code, 1);
}

#[test]
fn bounded_universality_verdicts() {
    let univ = file("gu-univ.ta", UNIV_AB);
    let thm1 = file("gu-thm1.ta", &tempo(&["build", "thm1", "-L", &univ]).stdout);
    let r = tempo(&["grid-univ", &thm1, "--max-len", "4", "--denoms", "1,2,4", "--max-num", "1"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["verdict"], "no-counterexample-in-grid");

    let empty = file("gu-empty.ta", EMPTY_AB);
    let thm1 = file("gu-thm1e.ta", &tempo(&["build", "thm1", "-L", &empty]).stdout);
    let r = tempo(&["grid-univ", &thm1]);
    assert_eq!(r.code, 1);
    let v: Value = serde_json::from_str(&r.stdout).unwrap();
    let word = v["word"].as_str().unwrap();
    assert!(word.contains(" c"), "{word}");
    assert_eq!(tempo(&["member", &thm1, "--word", word]).code, 1);

    let a = file("gu-a.ta", &gadget("A", &[]));
    assert_eq!(tempo(&["grid-univ", &a]).code, 1);
    assert_eq!(tempo(&["grid-univ", &a, "--denoms", "0"]).code, 2);
}

#[test]
fn suites_pass_and_are_reproducible() {
    for name in tempo_cli::suite::SUITES {
        let r = tempo(&["suite", name, "--seed", "5"]);
        assert_eq!(r.code, 0, "{name}: {}", r.stdout);
        let v: Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["seed"], 5);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["mismatches"] == 0));
    }
    assert_eq!(tempo(&["suite", "shuffle", "--seed", "1"]).stdout, tempo(&["suite", "shuffle", "--seed", "1"]).stdout);
    let r = tempo(&["suite", "bogus"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("unknown suite"));
}
