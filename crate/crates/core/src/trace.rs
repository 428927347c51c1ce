//! Rewrite traces and their JSON Lines encoding.
//!
//! A trace file is a header object followed by one object per step:
//!
//! ```text
//! {"schema":1,"n":2,"d":1,"m":4,"M":3,"schedule":"a=1..n-1 rightmost-first"}
//! {"step":0,"rule":"EXPAND_FY","pos":[0,1],"before":["FY(0)"],"after":[...],"conds":[...]}
//! ```
//!
//! Blocks are written as literals; `PHI` blocks carry their defining word.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adjunction::HomVerdict;
use crate::block::Block;
use crate::literal::BlockLit;
use crate::params::Params;

pub const SCHEMA_VERSION: u32 = 1;
pub const STEP1_SCHEDULE: &str = "a=1..n-1 rightmost-first";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    ExpandFy,
    ExpandDz,
    SwapOrth,
    RmutThroughDz,
    LmutJzTransform,
    LmutIdentity,
    PhiForm,
    PhiSimplify,
}

impl RuleId {
    pub const ALL: [RuleId; 8] = [
        RuleId::ExpandFy,
        RuleId::ExpandDz,
        RuleId::SwapOrth,
        RuleId::RmutThroughDz,
        RuleId::LmutJzTransform,
        RuleId::LmutIdentity,
        RuleId::PhiForm,
        RuleId::PhiSimplify,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RuleId::ExpandFy => "EXPAND_FY",
            RuleId::ExpandDz => "EXPAND_DZ",
            RuleId::SwapOrth => "SWAP_ORTH",
            RuleId::RmutThroughDz => "RMUT_THROUGH_DZ",
            RuleId::LmutJzTransform => "LMUT_JZ_TRANSFORM",
            RuleId::LmutIdentity => "LMUT_IDENTITY",
            RuleId::PhiForm => "PHI_FORM",
            RuleId::PhiSimplify => "PHI_SIMPLIFY",
        }
    }

    /// The statement each rule instantiates.
    pub fn anchor(&self) -> &'static str {
        match self {
            RuleId::ExpandFy => "f_k^*D^b(Y) = B_X^k([0,m-1])",
            RuleId::ExpandDz => "D^b(Z) = <A_Z(d), B_Z([d,M-1])>",
            RuleId::SwapOrth => "completely orthogonal components commute",
            RuleId::RmutThroughDz => "R_{j_k* D^b(Z)}(B_X^k(t)) = B_X^{k+1}(t-d)",
            RuleId::LmutJzTransform => "L_{B_X^k(t)}(j_k* B_Z(t)) = B_X^{k+1}(t-d)",
            RuleId::LmutIdentity => "L_{B_X^l(s)} is the identity on left-orthogonal components",
            RuleId::PhiForm => "Phi_k = L_{C_k} . j_k* . O_Z(d)",
            RuleId::PhiSimplify => "Phi_k = L_{B_X^k([0,d-1])} . j_k* . O_Z(d)",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .iter()
            .copied()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// A recorded vanishing `Hom(p, q) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideCondition {
    pub p: Block,
    pub q: Block,
    pub verdict: HomVerdict,
    pub cite: String,
}

impl SideCondition {
    pub fn zero(p: Block, q: Block, cite: impl Into<String>) -> Self {
        SideCondition { p, q, verdict: HomVerdict::Zero, cite: cite.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub index: usize,
    pub rule: RuleId,
    /// Half-open span `[start, end)` of `before` in the Sod.
    pub pos: (usize, usize),
    pub before: Vec<Block>,
    pub after: Vec<Block>,
    pub conds: Vec<SideCondition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceHeader {
    pub params: Params,
    pub schedule: String,
}

impl TraceHeader {
    pub fn new(params: Params) -> Self {
        TraceHeader { params, schedule: STEP1_SCHEDULE.to_string() }
    }

    /// `⟨f_0^*D^b(Y), j_{0*}D^b(Z), …, j_{n−2*}D^b(Z)⟩`, where every
    /// replay starts.
    pub fn initial_blocks(&self) -> Vec<Block> {
        let p = &self.params;
        let mut blocks = vec![Block::fy(p.weight(0))];
        blocks.extend((0..p.n() - 1).map(|k| Block::dz(p.weight(k))));
        blocks
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub header: TraceHeader,
    pub steps: Vec<TraceStep>,
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("unsupported trace schema version {0}")]
    UnsupportedSchema(u32),
    #[error("empty trace: missing header")]
    MissingHeader,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Serialize, Deserialize)]
struct HeaderWire {
    schema: u32,
    n: i64,
    d: i64,
    m: i64,
    #[serde(rename = "M")]
    big_m: i64,
    schedule: String,
}

#[derive(Serialize, Deserialize)]
struct CondWire {
    p: String,
    q: String,
    verdict: String,
    cite: String,
}

#[derive(Serialize, Deserialize)]
struct StepWire {
    step: usize,
    rule: String,
    pos: [usize; 2],
    before: Vec<String>,
    after: Vec<String>,
    conds: Vec<CondWire>,
}

fn verdict_from_str(s: &str) -> Option<HomVerdict> {
    match s {
        "Zero" => Some(HomVerdict::Zero),
        "Nonzero" => Some(HomVerdict::Nonzero),
        "Unknown" => Some(HomVerdict::Unknown),
        _ => None,
    }
}

impl TraceStep {
    pub fn to_json_line(&self) -> String {
        let wire = StepWire {
            step: self.index,
            rule: self.rule.as_str().to_string(),
            pos: [self.pos.0, self.pos.1],
            before: self.before.iter().map(Block::to_full_string).collect(),
            after: self.after.iter().map(Block::to_full_string).collect(),
            conds: self
                .conds
                .iter()
                .map(|c| CondWire {
                    p: c.p.to_full_string(),
                    q: c.q.to_full_string(),
                    verdict: c.verdict.to_string(),
                    cite: c.cite.clone(),
                })
                .collect(),
        };
        serde_json::to_string(&wire).expect("trace steps always serialize")
    }
}

impl TraceHeader {
    pub fn to_json_line(&self) -> String {
        let p = &self.params;
        let wire = HeaderWire {
            schema: SCHEMA_VERSION,
            n: p.n(),
            d: p.d(),
            m: p.m(),
            big_m: p.big_m(),
            schedule: self.schedule.clone(),
        };
        serde_json::to_string(&wire).expect("headers always serialize")
    }
}

fn parse_block(s: &str, p: &Params, line: usize) -> Result<Block, TraceError> {
    let malformed = |message: String| TraceError::Malformed { line, message };
    let lit: BlockLit = s.parse().map_err(|e| malformed(format!("block `{s}`: {e}")))?;
    lit.resolve(p).map_err(|e| malformed(format!("block `{s}`: {e}")))
}

impl Trace {
    pub fn new(params: Params) -> Self {
        Trace { header: TraceHeader::new(params), steps: Vec::new() }
    }

    pub fn params(&self) -> &Params {
        &self.header.params
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = self.header.to_json_line();
        out.push('\n');
        for s in &self.steps {
            out.push_str(&s.to_json_line());
            out.push('\n');
        }
        out
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(self.to_jsonl().as_bytes())
    }

    pub fn read_jsonl<R: BufRead>(r: R) -> Result<Trace, TraceError> {
        let mut lines = r.lines().enumerate().filter(|(_, l)| l.as_ref().map(|s| !s.trim().is_empty()).unwrap_or(true));
        let (_, first) = lines.next().ok_or(TraceError::MissingHeader)?;
        let first = first?;
        let raw: serde_json::Value =
            serde_json::from_str(&first).map_err(|e| TraceError::Malformed { line: 1, message: e.to_string() })?;
        if let Some(schema) = raw.get("schema").and_then(|v| v.as_u64()) {
            if schema != SCHEMA_VERSION as u64 {
                return Err(TraceError::UnsupportedSchema(schema as u32));
            }
        }
        let header: HeaderWire =
            serde_json::from_value(raw).map_err(|e| TraceError::Malformed { line: 1, message: e.to_string() })?;
        let params = Params::new(header.n, header.d, header.m)
            .map_err(|e| TraceError::Malformed { line: 1, message: e.to_string() })?;
        if params.big_m() != header.big_m {
            return Err(TraceError::Malformed { line: 1, message: format!("M = {} is inconsistent", header.big_m) });
        }
        let mut trace = Trace { header: TraceHeader { params, schedule: header.schedule }, steps: Vec::new() };
        for (idx, line) in lines {
            let line_no = idx + 1;
            let line = line?;
            let malformed = |message: String| TraceError::Malformed { line: line_no, message };
            let wire: StepWire = serde_json::from_str(&line).map_err(|e| malformed(e.to_string()))?;
            let rule: RuleId = wire.rule.parse().map_err(malformed)?;
            let blocks = |v: &[String]| v.iter().map(|s| parse_block(s, &params, line_no)).collect::<Result<Vec<_>, _>>();
            let mut conds = Vec::with_capacity(wire.conds.len());
            for c in &wire.conds {
                let verdict = verdict_from_str(&c.verdict)
                    .ok_or_else(|| TraceError::Malformed { line: line_no, message: format!("verdict `{}`", c.verdict) })?;
                conds.push(SideCondition {
                    p: parse_block(&c.p, &params, line_no)?,
                    q: parse_block(&c.q, &params, line_no)?,
                    verdict,
                    cite: c.cite.clone(),
                });
            }
            trace.steps.push(TraceStep {
                index: wire.step,
                rule,
                pos: (wire.pos[0], wire.pos[1]),
                before: blocks(&wire.before)?,
                after: blocks(&wire.after)?,
                conds,
            });
        }
        Ok(trace)
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[Block]| v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "#{} {} [{},{}): {} => {}",
            self.index,
            self.rule,
            self.pos.0,
            self.pos.1,
            list(&self.before),
            list(&self.after)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::PhiWord;

    #[test]
    fn header_is_bit_exact() {
        let t = Trace::new(Params::new(2, 1, 4).unwrap());
        assert_eq!(
            t.header.to_json_line(),
            r#"{"schema":1,"n":2,"d":1,"m":4,"M":3,"schedule":"a=1..n-1 rightmost-first"}"#
        );
    }

    #[test]
    fn step_round_trip() {
        let p = Params::new(2, 1, 4).unwrap();
        let w0 = p.weight(0);
        let phi = Block::phi(w0, PhiWord::mutation_word(vec![Block::bx(0, w0)], w0, 1), Some(5));
        let step = TraceStep {
            index: 7,
            rule: RuleId::PhiSimplify,
            pos: (0, 1),
            before: vec![phi.clone()],
            after: vec![phi],
            conds: vec![SideCondition::zero(Block::bx(1, w0), Block::az(1, w0), "AZ window")],
        };
        let line = step.to_json_line();
        assert_eq!(
            line,
            r#"{"step":7,"rule":"PHI_SIMPLIFY","pos":[0,1],"before":["PHI(0)[LMut(BX(0,0))·PushJ(0)·Twist(1)]"],"after":["PHI(0)[LMut(BX(0,0))·PushJ(0)·Twist(1)]"],"conds":[{"p":"BX(1,0)","q":"AZ(1,0)","verdict":"Zero","cite":"AZ window"}]}"#
        );
        let mut t = Trace::new(p);
        t.steps.push(step);
        let back = Trace::read_jsonl(t.to_jsonl().as_bytes()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rejects_unknown_schema_and_bad_lines() {
        let bad = r#"{"schema":2,"n":2,"d":1,"m":4,"M":3,"schedule":"x"}"#;
        assert!(matches!(Trace::read_jsonl(bad.as_bytes()), Err(TraceError::UnsupportedSchema(2))));
        let inconsistent = r#"{"schema":1,"n":2,"d":1,"m":4,"M":2,"schedule":"x"}"#;
        assert!(Trace::read_jsonl(inconsistent.as_bytes()).is_err());
        assert!(matches!(Trace::read_jsonl("".as_bytes()), Err(TraceError::MissingHeader)));
        let garbage = format!("{}\nnot json\n", Trace::new(Params::new(2, 1, 4).unwrap()).header.to_json_line());
        assert!(matches!(Trace::read_jsonl(garbage.as_bytes()), Err(TraceError::Malformed { line: 2, .. })));
    }

    #[test]
    fn initial_blocks() {
        let h = TraceHeader::new(Params::new(3, 1, 5).unwrap());
        let s: Vec<String> = h.initial_blocks().iter().map(|b| b.to_string()).collect();
        assert_eq!(s, ["FY(0)", "DZ(0)", "DZ(1)"]);
    }
}
