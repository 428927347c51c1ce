use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sodcalc_core::{Params, Sod};
use sodcalc_engine::dsl::{self, elaborate, parse, print_script, print_sod, random_script, script_from_trace, ElabError};
use sodcalc_engine::replay_main;

fn seed() -> u64 {
    std::env::var("SODCALC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x50d)
}

#[test]
fn generated_scripts_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    for _ in 0..1000 {
        let script = random_script(&mut rng);
        let text = print_script(&script);
        let back = parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        assert_eq!(back, script, "{text}");
        assert_eq!(print_script(&back), text);
    }
}

#[test]
fn corrupted_scripts_fail_gracefully() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ 1);
    let alphabet: Vec<char> = "()[]{},;=.·*#-0123456789 \nBXJZAPHIletsodparmsgrid\u{0}é".chars().collect();
    for _ in 0..1000 {
        let mut chars: Vec<char> = print_script(&random_script(&mut rng)).chars().collect();
        for _ in 0..rng.gen_range(1..4) {
            let at = rng.gen_range(0..=chars.len());
            match rng.gen_range(0..3) {
                0 if at < chars.len() => {
                    chars.remove(at);
                }
                1 if at < chars.len() => chars[at] = alphabet[rng.gen_range(0..alphabet.len())],
                _ => chars.insert(at, alphabet[rng.gen_range(0..alphabet.len())]),
            }
        }
        let text: String = chars.into_iter().collect();
        if let Err(e) = parse(&text) {
            assert!(e.line >= 1 && e.col >= 1);
        }
    }
}

#[test]
fn megabyte_inputs_terminate_quickly() {
    let mut good = String::from("params { n=2; d=1; m=4 }\nlet S = sod [ ");
    while good.len() < 1 << 20 {
        good.push_str("BX(1,0), ");
    }
    good.push_str("FY(0) ]\n");
    let start = Instant::now();
    let s = parse(&good).unwrap();
    assert_eq!(s.stmts.len(), 1);
    let bad_nesting = "params { n=2; d=1; m=4 }\nlet S = sod [ ".to_string() + &"PHI(0)[LMut(".repeat(90_000);
    let bad_tokens = "(".repeat(1 << 20);
    assert!(parse(&bad_nesting).is_err());
    assert!(parse(&bad_tokens).is_err());
    assert!(start.elapsed() < Duration::from_secs(if cfg!(debug_assertions) { 5 } else { 1 }));
}

#[test]
fn quartic_script_elaborates() {
    let src = "params { n=2; d=2; m=4 }\n\
               let S = sod [ FY(0), DZ(0) ]\n\
               expand S at FY(0)\n\
               rmut S at BX(3,0)\n\
               rmut S at BX(2,0)\n\
               assert vanishes BX(1,0) BX(0,0)\n";
    let e = elaborate(&parse(src).unwrap()).unwrap();
    let s = e.sessions["S"].sod();
    assert_eq!(print_sod(s), "[ BX([0..1],0), DZ(0), BX([0..1],1) ]");
    assert_eq!(e.sessions["S"].trace().steps.len(), 3);
    assert_eq!(e.assertions, 1);
}

#[test]
fn semantic_errors_surface_at_elaboration() {
    let run = |body: &str| elaborate(&parse(&format!("params {{ n=2; d=2; m=4 }}\n{body}")).unwrap());
    assert!(matches!(run("rmut S at BX(0,0)"), Err(ElabError::Unbound { .. })));
    assert!(matches!(run("let S = sod [ FY(0) ]\nrmut S at BX(0,0)"), Err(ElabError::NotFound { .. })));
    assert!(matches!(run("let S = sod [ PHI(0) ]"), Err(ElabError::Malformed { .. })));
    assert!(matches!(run("let S = sod [ FY(0), FY(2) ]"), Err(ElabError::Sod { .. })));
    assert!(matches!(run("let S = sod [ FY(0), DZ(0) ]\nrmut S at FY(0)"), Err(ElabError::Mutation { .. })));
    assert!(matches!(run("assert vanishes BX(0,0) BX(1,0)"), Err(ElabError::Assertion { .. })));
    assert!(matches!(
        elaborate(&parse("params { n=3; d=2; m=5 }").unwrap()),
        Err(ElabError::Params(_))
    ));
}

#[test]
fn driver_scripts_replay_to_identical_traces() {
    for (n, d, m) in [(2, 2, 4), (2, 1, 4), (3, 1, 5), (3, 1, 3), (4, 1, 6), (2, 3, 9)] {
        let p = Params::new(n, d, m).unwrap();
        let r = replay_main(&p).unwrap();
        let script = script_from_trace(&r.trace, &r.trace.header.initial_blocks(), "S");
        let text = print_script(&script);
        assert_eq!(parse(&text).unwrap(), script);
        let e = elaborate(&script).unwrap_or_else(|err| panic!("({n},{d},{m}): {err}"));
        let sess = &e.sessions["S"];
        assert_eq!(sess.trace().to_jsonl(), r.trace.to_jsonl(), "({n},{d},{m})");
        assert_eq!(sess.sod(), &r.final_sod);
    }
}

#[test]
fn final_shape_assertion_for_the_quartic_preset() {
    let p = Params::new(2, 2, 4).unwrap();
    let r = replay_main(&p).unwrap();
    let mut script = script_from_trace(&r.trace, &r.trace.header.initial_blocks(), "S");
    let tail = parse("params { n=2; d=2; m=4 }\nassert equiv S grid([0..1],[0..1]) after PHI(0)").unwrap();
    script.stmts.extend(tail.stmts);
    assert_eq!(elaborate(&script).unwrap().assertions, 1);
    let wrong = parse("params { n=2; d=2; m=4 }\nassert equiv S grid([0..1],[0..0]) after PHI(0)").unwrap();
    script.stmts.extend(wrong.stmts);
    assert!(matches!(elaborate(&script), Err(ElabError::Assertion { .. })));
}

#[test]
fn sod_printing_compresses_grids() {
    let p = Params::new(3, 1, 5).unwrap();
    let r = replay_main(&p).unwrap();
    let text = print_sod(&r.final_sod);
    assert!(text.ends_with("grid([0..2],[0..2]) ]"), "{text}");
    let tail = Sod::new(p, sodcalc_core::block::grid(&p, 0..=2, 0..=2)).unwrap();
    assert_eq!(print_sod(&tail), "[ grid([0..2],[0..2]) ]");
    let trace_text = dsl::print_trace(&r.trace);
    assert!(trace_text.contains("by sojj: k ≠ ℓ, ℓ+1") || trace_text.contains("by Lefschetz window on Y"));
}

#[test]
fn shipped_preset_scripts_elaborate() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scripts");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("sod") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let script = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
        assert_eq!(print_script(&script), body, "{}", path.display());
        let e = elaborate(&script).unwrap_or_else(|err| panic!("{}: {err}", path.display()));
        assert_eq!(e.assertions, 1);
        seen += 1;
    }
    assert_eq!(seen, 6);
}
