//! Independent validation of proof traces. Every side condition is
//! re-decided by the adjunction engine and every rewrite is recomputed from
//! the rule definitions; the window oracle is never consulted.

pub mod fault;

use sodcalc_core::adjunction::block_hom;
use sodcalc_core::block::grid;
use sodcalc_core::{Block, Generator, HomVerdict, Params, PhiFactor, PhiWord, RuleId, Trace, TraceStep};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {reason}")]
pub struct CheckFailure {
    pub step: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub steps: usize,
    pub conditions: usize,
    pub final_blocks: Vec<Block>,
}

fn show(bs: &[Block]) -> String {
    bs.iter().map(Block::to_full_string).collect::<Vec<_>>().join(", ")
}

fn same(a: &[Block], b: &[Block]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_full_string() == y.to_full_string())
}

fn pairs_all(bs: &[Block]) -> Vec<(Block, Block)> {
    let mut out = Vec::new();
    for j in 1..bs.len() {
        for i in 0..j {
            out.push((bs[j].clone(), bs[i].clone()));
        }
    }
    out
}

fn sorted_keys(bs: &[Block]) -> Vec<(u8, i64, i64)> {
    let mut k: Vec<_> = bs.iter().map(Block::canonical_key).collect();
    k.sort_unstable();
    k
}

/// Recomputed `after` blocks and the required `(p, q)` condition pairs.
type Rewrite = (Vec<Block>, Vec<(Block, Block)>);

/// Expected `after` and the required condition pairs for `before`, given
/// the state the step applies to.
fn expected(
    rule: RuleId,
    state: &[Block],
    pos: (usize, usize),
    before: &[Block],
    p: &Params,
) -> Result<Rewrite, String> {
    let (n, d) = (p.n(), p.d());
    let shape = || format!("{rule} does not apply to [{}]", show(before));
    match (rule, before) {
        (RuleId::ExpandFy, [b @ Block::FyFull { .. }]) | (RuleId::ExpandDz, [b @ Block::DzFull { .. }]) => {
            let after = b.expansion(p).ok_or_else(shape)?;
            let conds = pairs_all(&after);
            Ok((after, conds))
        }
        (RuleId::RmutThroughDz, [Block::Bx { twist, weight }, Block::DzFull { weight: w2 }]) if weight == w2 => {
            let moved = Block::bx(twist - d, weight.shifted(1, n));
            let dz = Block::dz(*weight);
            Ok((vec![dz.clone(), moved.clone()], vec![(moved, dz)]))
        }
        (RuleId::LmutJzTransform, [bx @ Block::Bx { twist: s, weight: l }, Block::Jz { twist: t, weight: k }])
            if s == t && l == k =>
        {
            let new = Block::bx(t - d, k.shifted(1, n));
            Ok((vec![new.clone(), bx.clone()], vec![(bx.clone(), new)]))
        }
        (RuleId::LmutIdentity, [bx @ Block::Bx { twist: s, weight: l }, jz @ Block::Jz { twist: t, weight: k }])
            if !(s == t && l == k) =>
        {
            Ok((vec![jz.clone(), bx.clone()], vec![(bx.clone(), jz.clone()), (jz.clone(), bx.clone())]))
        }
        (RuleId::LmutIdentity, [bx @ Block::Bx { .. }, az @ Block::Az { .. }]) => {
            Ok((vec![az.clone(), bx.clone()], vec![(bx.clone(), az.clone())]))
        }
        (RuleId::SwapOrth, [x, y]) => Ok((vec![y.clone(), x.clone()], vec![(x.clone(), y.clone()), (y.clone(), x.clone())])),
        (RuleId::PhiForm, [prefix @ .., Block::Az { twist, weight: k }]) if *twist == d => {
            let lead = state.iter().take_while(|b| b.is_phi()).count();
            if pos.0 != lead || lead as i64 != k.get() {
                return Err(format!("PHI_FORM at {} needs exactly {} leading PHI blocks", pos.0, k.get()));
            }
            for (j, b) in state[..lead].iter().enumerate() {
                if b.weight() != Some(p.weight(j as i64)) {
                    return Err(format!("leading block {b} out of order"));
                }
            }
            if sorted_keys(prefix) != sorted_keys(&grid(p, 0..=p.big_m() - 1, 0..=k.get())) {
                return Err(format!("blocks before AZ({d},{k}) are not the grid C_{k}"));
            }
            let phi = Block::phi(*k, PhiWord::mutation_word(prefix.to_vec(), *k, d), None);
            let mut after = vec![phi];
            after.extend_from_slice(prefix);
            Ok((after, Vec::new()))
        }
        (RuleId::PhiSimplify, [Block::Phi(phi)]) => {
            let k = phi.weight;
            let raw = match phi.word.factors() {
                [PhiFactor::LMut(raw), PhiFactor::Gen(Generator::PushJ(j)), PhiFactor::Gen(Generator::Twist(t))]
                    if *j == k && *t == d =>
                {
                    raw
                }
                _ => return Err(shape()),
            };
            if sorted_keys(raw) != sorted_keys(&grid(p, 0..=p.big_m() - 1, 0..=k.get())) {
                return Err(format!("mutation list of PHI({k}) is not the grid C_{k}"));
            }
            let az = Block::az(d, k);
            let kept: Vec<Block> = (0..d).map(|t| Block::bx(t, k)).collect();
            let mut conds: Vec<(Block, Block)> =
                raw.iter().filter(|b| !kept.contains(b)).map(|b| (b.clone(), az.clone())).collect();
            if k.get() > 0 {
                for x in grid(p, 0..=d - 1, 0..=k.get() - 1) {
                    for y in &kept {
                        conds.push((x.clone(), y.clone()));
                    }
                }
            }
            let word = PhiWord::mutation_word(kept, k, d);
            Ok((vec![Block::phi(k, word, None)], conds))
        }
        _ => Err(shape()),
    }
}

fn check_step(state: &[Block], step: &TraceStep, i: usize, p: &Params) -> Result<Vec<Block>, CheckFailure> {
    let fail = |reason: String| CheckFailure { step: i, reason };
    if step.index != i {
        return Err(fail(format!("step index {} out of sequence", step.index)));
    }
    let (a, b) = step.pos;
    if a >= b || b > state.len() {
        return Err(fail(format!("span [{a},{b}) out of range for {} blocks", state.len())));
    }
    if b - a != step.before.len() || !same(&state[a..b], &step.before) {
        return Err(fail(format!("`before` [{}] does not match the current [{}]", show(&step.before), show(&state[a..b]))));
    }
    let (after, required) = expected(step.rule, state, step.pos, &step.before, p).map_err(fail)?;
    if !same(&after, &step.after) {
        return Err(fail(format!("`after` [{}] differs from the recomputed [{}]", show(&step.after), show(&after))));
    }
    if step.conds.len() != required.len() {
        return Err(fail(format!("{} side conditions listed, {} required", step.conds.len(), required.len())));
    }
    for (j, (c, (x, y))) in step.conds.iter().zip(&required).enumerate() {
        if !same(&[c.p.clone(), c.q.clone()], &[x.clone(), y.clone()]) {
            return Err(fail(format!("condition {j} is Hom({}, {}), required Hom({x}, {y})", c.p, c.q)));
        }
        if c.verdict != HomVerdict::Zero {
            return Err(fail(format!("condition {j} claims verdict {}", c.verdict)));
        }
        match block_hom(&c.p, &c.q, p) {
            Ok(HomVerdict::Zero) => {}
            Ok(v) => return Err(fail(format!("Hom({}, {}) is {v}, not Zero", c.p, c.q))),
            Err(e) => return Err(fail(format!("Hom({}, {}): {e}", c.p, c.q))),
        }
    }
    let mut next = state[..a].to_vec();
    next.extend(after);
    next.extend_from_slice(&state[b..]);
    Ok(next)
}

/// Validate `steps` starting from `initial`. Stops at the first failure.
pub fn check_steps(p: &Params, initial: &[Block], steps: &[TraceStep]) -> Result<CheckReport, CheckFailure> {
    let mut state = initial.to_vec();
    let mut conditions = 0;
    for (i, step) in steps.iter().enumerate() {
        state = check_step(&state, step, i, p)?;
        conditions += step.conds.len();
    }
    Ok(CheckReport { steps: steps.len(), conditions, final_blocks: state })
}

/// Validate a whole trace from the header's initial decomposition.
pub fn check_trace(t: &Trace) -> Result<CheckReport, CheckFailure> {
    check_steps(t.params(), &t.header.initial_blocks(), &t.steps)
}
