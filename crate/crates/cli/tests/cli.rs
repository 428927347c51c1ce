use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn sodcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sodcalc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sodcalc-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn replay_quartic_preset() {
    let o = sodcalc(&["replay", "--n", "2", "--d", "2", "--m", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("shape: 1 PHI + grid 2×2"), "{out}");
    assert!(out.contains("final: [ PHI(0)[LMut(BX(0,0),BX(1,0))·PushJ(0)·Twist(2)], grid([0..1],[0..1]) ]"), "{out}");
    let by_name = sodcalc(&["replay", "--preset", "quartic"]);
    assert_eq!(stdout(&by_name), out);
}

#[test]
fn replay_rejects_invalid_params() {
    assert_eq!(sodcalc(&["replay", "--n", "3", "--d", "2", "--m", "5"]).status.code(), Some(2));
    assert_eq!(sodcalc(&["replay", "--n", "1", "--d", "1", "--m", "5"]).status.code(), Some(2));
    assert_eq!(sodcalc(&["replay", "--preset", "gm:9"]).status.code(), Some(2));
    assert_eq!(sodcalc(&["replay", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn traces_are_byte_identical_across_runs() {
    let (a, b) = (tmp("a.jsonl"), tmp("b.jsonl"));
    for path in [&a, &b] {
        let o = sodcalc(&["replay", "--n", "3", "--d", "1", "--m", "5", "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    assert_eq!(
        text.lines().next().unwrap(),
        r#"{"schema":1,"n":3,"d":1,"m":5,"M":3,"schedule":"a=1..n-1 rightmost-first"}"#
    );
    // 1 FY expansion, 3 right mutations, 2 DZ expansions, 7 left mutations,
    // 2 swaps, 2 PHI formations and 2 simplifications.
    assert_eq!(text.lines().count() - 1, 19);
}

#[test]
fn check_accepts_fresh_and_rejects_forged_traces() {
    let path = tmp("check.jsonl");
    let p = path.to_str().unwrap();
    assert_eq!(sodcalc(&["replay", "--n", "2", "--d", "1", "--m", "4", "--out", p]).status.code(), Some(0));
    let ok = sodcalc(&["check", p]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let text = fs::read_to_string(&path).unwrap();

    let rmut = text.lines().position(|l| l.contains("\"RMUT_THROUGH_DZ\"")).unwrap();
    let forged: Vec<String> = text
        .lines()
        .enumerate()
        .map(|(i, l)| if i == rmut { l.replacen("\"after\":[\"DZ(0)\",\"BX(", "\"after\":[\"DZ(0)\",\"BX(1", 1) } else { l.to_string() })
        .collect();
    assert_ne!(forged.join("\n"), text.trim_end());
    fs::write(&path, forged.join("\n") + "\n").unwrap();
    let bad = sodcalc(&["check", p]);
    assert_eq!(bad.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&bad.stderr).contains(&format!("step {}", rmut - 1)));

    let swapped = text.replacen(r#"{"p":"BX(1,0)","q":"BX(0,0)""#, r#"{"p":"BX(0,0)","q":"BX(1,0)""#, 1);
    assert_ne!(swapped, text);
    fs::write(&path, swapped).unwrap();
    assert_eq!(sodcalc(&["check", p]).status.code(), Some(4));

    fs::write(&path, text.replacen("\"schema\":1", "\"schema\":2", 1)).unwrap();
    assert_eq!(sodcalc(&["check", p]).status.code(), Some(4));
    fs::write(&path, "not json\n").unwrap();
    assert_eq!(sodcalc(&["check", p]).status.code(), Some(2));
}

#[test]
fn explain_examples() {
    let o = sodcalc(&["explain", "--n", "3", "BX(4,0)", "DZ(0)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("NotGuaranteed via k = ℓ branch of (sojf)"), "{}", stdout(&o));
    assert!(stdout(&o).contains("reduction: "));

    let o = sodcalc(&["explain", "--n", "2", "--d", "1", "--m", "4", "BX(1,0)", "BX(0,0)"]);
    assert!(stdout(&o).starts_with("Guaranteed: Y window 1 ≤ 1 ≤ 3"), "{}", stdout(&o));

    let o = sodcalc(&["explain", "PHI(0)", "BX(0,0)"]);
    assert!(stdout(&o).contains("provenance-only block"));

    assert_eq!(sodcalc(&["explain", "BX(0", "BX(0,0)"]).status.code(), Some(2));
}

#[test]
fn sweep_is_independent_of_jobs_and_composes() {
    let args = ["sweep", "--n", "2..3", "--d", "1..2", "--m", "1..7"];
    let one = sodcalc(&[&args[..], &["--jobs", "1"]].concat());
    let three = sodcalc(&[&args[..], &["--jobs", "3"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&three));
    assert!(stdout(&one).ends_with("17/17 cells pass\n"), "{}", stdout(&one));

    let cell = sodcalc(&["sweep", "--n", "3", "--d", "1", "--m", "5"]);
    let line = stdout(&cell).lines().next().unwrap().to_string();
    let replay = stdout(&sodcalc(&["replay", "--n", "3", "--d", "1", "--m", "5"]));
    let steps = replay.lines().find_map(|l| l.strip_prefix("steps: ")).unwrap();
    assert!(line.starts_with("PASS n=3 d=1 m=5 "), "{line}");
    assert!(line.contains(&format!("replay:{steps} steps")), "{line}");
}
