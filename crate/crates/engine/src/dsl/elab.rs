//! Elaboration: run a parsed script against the mutation engine.

use std::collections::BTreeMap;

use sodcalc_core::{block, sod_equiv, Block, BlockLit, Params, RuleId, Sod, Trace};
use thiserror::Error;

use super::ast::{Item, OpKind, ParamsDecl, RangeKind, Rhs, Script, Stmt};
use crate::mutation::{MutationError, Session};
use crate::window::{judge, WindowOracle};

#[derive(Debug, Error)]
pub enum ElabError {
    #[error("invalid params: {0}")]
    Params(#[from] sodcalc_core::ParamsError),
    #[error("statement {stmt}: unbound name `{name}`")]
    Unbound { stmt: usize, name: String },
    #[error("statement {stmt}: malformed block {lit}: {message}")]
    Malformed { stmt: usize, lit: String, message: String },
    #[error("statement {stmt}: {lit} does not occur in `{name}`")]
    NotFound { stmt: usize, name: String, lit: String },
    #[error("statement {stmt}: {lit} is ambiguous in `{name}` ({count} matches)")]
    Ambiguous { stmt: usize, name: String, lit: String, count: usize },
    #[error("statement {stmt}: {source}")]
    Mutation { stmt: usize, source: MutationError },
    #[error("statement {stmt}: invalid decomposition: {message}")]
    Sod { stmt: usize, message: String },
    #[error("statement {stmt}: assertion failed: {message}")]
    Assertion { stmt: usize, message: String },
}

/// Bound decompositions after a successful run.
#[derive(Debug)]
pub struct Elaborated {
    pub params: Params,
    pub sessions: BTreeMap<String, Session>,
    pub assertions: usize,
}

fn resolve(stmt: usize, lit: &BlockLit, p: &Params) -> Result<Block, ElabError> {
    lit.resolve(p).map_err(|e| ElabError::Malformed { stmt, lit: lit.to_string(), message: e.message })
}

/// Expand script items to blocks.
pub fn items_to_blocks(stmt: usize, items: &[Item], p: &Params) -> Result<Vec<Block>, ElabError> {
    let mut out = Vec::new();
    for item in items {
        match item {
            Item::Block(lit) => out.push(resolve(stmt, lit, p)?),
            Item::Range { kind, lo, hi, weight } => {
                let w = p.weight(*weight);
                out.extend((*lo..=*hi).map(|t| match kind {
                    RangeKind::Bx => Block::bx(t, w),
                    RangeKind::Jz => Block::jz(t, w),
                }));
            }
            Item::Grid { twists, weights } => out.extend(block::grid(p, twists.0..=twists.1, weights.0..=weights.1)),
        }
    }
    Ok(out)
}

fn session<'a>(
    sessions: &'a mut BTreeMap<String, Session>,
    stmt: usize,
    name: &str,
) -> Result<&'a mut Session, ElabError> {
    sessions.get_mut(name).ok_or_else(|| ElabError::Unbound { stmt, name: name.to_string() })
}

fn locate(stmt: usize, name: &str, s: &Sod, lit: &BlockLit) -> Result<usize, ElabError> {
    let hits: Vec<usize> =
        s.blocks().iter().enumerate().filter(|(_, b)| lit.matches(b, s.params())).map(|(i, _)| i).collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        [] => Err(ElabError::NotFound { stmt, name: name.to_string(), lit: lit.to_string() }),
        _ => Err(ElabError::Ambiguous { stmt, name: name.to_string(), lit: lit.to_string(), count: hits.len() }),
    }
}

/// Run every statement in order.
pub fn elaborate(script: &Script) -> Result<Elaborated, ElabError> {
    let ParamsDecl { n, d, m } = script.params;
    let p = Params::new(n, d, m)?;
    let oracle = WindowOracle::new(p);
    let mut sessions: BTreeMap<String, Session> = BTreeMap::new();
    let mut assertions = 0;
    for (stmt, st) in script.stmts.iter().enumerate() {
        match st {
            Stmt::Let { name, items } => {
                let blocks = items_to_blocks(stmt, items, &p)?;
                let sod = Sod::new(p, blocks).map_err(|e| ElabError::Sod { stmt, message: e.to_string() })?;
                sessions.insert(name.clone(), Session::new(sod));
            }
            Stmt::Op { op, target, at } => {
                let sess = session(&mut sessions, stmt, target)?;
                let i = locate(stmt, target, sess.sod(), at)?;
                let r = match op {
                    OpKind::Expand => sess.expand(i),
                    OpKind::Rmut => sess.right_mutate(i),
                    OpKind::Lmut => sess.left_mutate(i),
                    OpKind::Phi => sess.form_phi(i),
                    OpKind::Swap => sess.swap(i),
                    OpKind::Simplify => sess.simplify_phi(i),
                };
                r.map_err(|source| ElabError::Mutation { stmt, source })?;
            }
            Stmt::AssertEquiv { name, rhs, after } => {
                let rhs_blocks = match rhs {
                    Rhs::Name(other) => session(&mut sessions, stmt, other)?.sod().blocks().to_vec(),
                    Rhs::Item(item) => items_to_blocks(stmt, std::slice::from_ref(item), &p)?,
                    Rhs::List(items) => items_to_blocks(stmt, items, &p)?,
                };
                let sod = session(&mut sessions, stmt, name)?.sod().clone();
                let fail = |message: String| ElabError::Assertion { stmt, message };
                if sod.len() < after.len() {
                    return Err(fail(format!("`{name}` has fewer than {} blocks", after.len())));
                }
                for (lit, b) in after.iter().zip(sod.blocks()) {
                    if !lit.matches(b, &p) {
                        return Err(fail(format!("expected {lit}, found {}", b.to_full_string())));
                    }
                }
                let rest = Sod::new(p, sod.blocks()[after.len()..].to_vec())
                    .map_err(|e| ElabError::Sod { stmt, message: e.to_string() })?;
                let target = Sod::new(p, rhs_blocks).map_err(|e| ElabError::Sod { stmt, message: e.to_string() })?;
                match sod_equiv(&rest, &target, &oracle) {
                    Ok(Some(_)) => {}
                    Ok(None) => return Err(fail(format!("`{name}` is not equivalent to the right-hand side"))),
                    Err(e) => return Err(fail(e.to_string())),
                }
                assertions += 1;
            }
            Stmt::AssertVanishes { p: pl, q: ql } => {
                let (pb, qb) = (resolve(stmt, pl, &p)?, resolve(stmt, ql, &p)?);
                let fail = |message: String| ElabError::Assertion { stmt, message };
                match judge(&pb, &qb, &p) {
                    Ok(j) if j.is_guaranteed() => {}
                    Ok(j) => return Err(fail(format!("Hom({pl}, {ql}) not guaranteed zero: {}", j.citation()))),
                    Err(e) => return Err(fail(e.to_string())),
                }
                assertions += 1;
            }
        }
    }
    Ok(Elaborated { params: p, sessions, assertions })
}

fn target_of(rule: RuleId, before: &[Block]) -> (OpKind, &Block) {
    match rule {
        RuleId::ExpandFy | RuleId::ExpandDz => (OpKind::Expand, &before[0]),
        RuleId::RmutThroughDz => (OpKind::Rmut, &before[0]),
        RuleId::LmutJzTransform | RuleId::LmutIdentity => (OpKind::Lmut, &before[1]),
        RuleId::SwapOrth => (OpKind::Swap, &before[0]),
        RuleId::PhiForm => (OpKind::Phi, before.last().expect("non-empty span")),
        RuleId::PhiSimplify => (OpKind::Simplify, &before[0]),
    }
}

/// A script that replays `trace` on a binding named `name`. `PHI` targets
/// are addressed by weight.
pub fn script_from_trace(trace: &Trace, initial: &[Block], name: &str) -> Script {
    let p = trace.params();
    let mut stmts = vec![Stmt::Let { name: name.to_string(), items: super::print::compress(initial) }];
    for step in &trace.steps {
        let (op, b) = target_of(step.rule, &step.before);
        let at = match b {
            Block::Phi(phi) => BlockLit::Phi(phi.weight.get(), None),
            other => BlockLit::from(other),
        };
        stmts.push(Stmt::Op { op, target: name.to_string(), at });
    }
    Script { params: ParamsDecl { n: p.n(), d: p.d(), m: p.m() }, stmts }
}
