use sodcalc_core::{Block, BlockLit, Params, PhiWord, RuleId, SideCondition, Trace, TraceError, TraceStep};

fn sample() -> Trace {
    let p = Params::new(2, 1, 4).unwrap();
    let mut t = Trace::new(p);
    let fy = Block::fy(p.weight(0));
    let after = fy.expansion(&p).unwrap();
    t.steps.push(TraceStep {
        index: 0,
        rule: RuleId::ExpandFy,
        pos: (0, 1),
        before: vec![fy],
        after: after.clone(),
        conds: vec![SideCondition::zero(after[1].clone(), after[0].clone(), "Lefschetz window on Y: Y window 1 ≤ 1 ≤ 3")],
    });
    let phi = Block::phi(p.weight(0), PhiWord::mutation_word(vec![Block::bx(0, p.weight(0))], p.weight(0), 1), Some(1));
    t.steps.push(TraceStep {
        index: 1,
        rule: RuleId::PhiForm,
        pos: (0, 2),
        before: vec![Block::bx(0, p.weight(0)), Block::az(1, p.weight(0))],
        after: vec![phi, Block::bx(0, p.weight(0))],
        conds: Vec::new(),
    });
    t
}

#[test]
fn header_is_bit_exact() {
    let text = sample().to_jsonl();
    assert_eq!(
        text.lines().next().unwrap(),
        r#"{"schema":1,"n":2,"d":1,"m":4,"M":3,"schedule":"a=1..n-1 rightmost-first"}"#
    );
}

#[test]
fn steps_serialize_in_schema_order() {
    let text = sample().to_jsonl();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[1].starts_with(r#"{"step":0,"rule":"EXPAND_FY","pos":[0,1],"before":["FY(0)"],"after":["BX(0,0)""#));
    assert!(lines[1].ends_with(r#""conds":[{"p":"BX(1,0)","q":"BX(0,0)","verdict":"Zero","cite":"Lefschetz window on Y: Y window 1 ≤ 1 ≤ 3"}]}"#));
    assert!(lines[2].contains(r#""after":["PHI(0)[LMut(BX(0,0))·PushJ(0)·Twist(1)]","BX(0,0)"]"#));
}

#[test]
fn jsonl_round_trip() {
    let t = sample();
    let back = Trace::read_jsonl(t.to_jsonl().as_bytes()).unwrap();
    assert_eq!(back.to_jsonl(), t.to_jsonl());
    assert_eq!(back, t);
}

#[test]
fn reader_rejects_bad_input_with_line_numbers() {
    let text = sample().to_jsonl();
    assert!(matches!(
        Trace::read_jsonl(text.replacen("\"schema\":1", "\"schema\":7", 1).as_bytes()),
        Err(TraceError::UnsupportedSchema(7))
    ));
    assert!(matches!(
        Trace::read_jsonl(text.replacen("\"M\":3", "\"M\":4", 1).as_bytes()),
        Err(TraceError::Malformed { line: 1, .. })
    ));
    match Trace::read_jsonl(text.replacen("EXPAND_FY", "EXPAND_Q", 1).as_bytes()) {
        Err(TraceError::Malformed { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    assert!(matches!(Trace::read_jsonl("".as_bytes()), Err(TraceError::MissingHeader)));
}

#[test]
fn literals_round_trip_through_display() {
    for s in ["BX(-3,1)", "JZ(2,0)", "AZ(1,1)", "AXE(5)", "FY(0)", "DZ(1)", "PHI(1)", "PHI(0)[LMut(BX(0,0),BX(1,0))·PushJ(0)·Twist(2)]"] {
        let lit: BlockLit = s.parse().unwrap();
        assert_eq!(lit.to_string(), s);
    }
    assert!("BX(1)".parse::<BlockLit>().is_err());
    assert!("PHI(0)".parse::<BlockLit>().unwrap().resolve(&Params::new(2, 1, 4).unwrap()).is_err());
}
