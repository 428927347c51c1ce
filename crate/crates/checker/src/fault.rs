//! Single-point corruptions of a trace, for measuring checker sensitivity.

use rand::Rng;
use sodcalc_core::{Block, Params, Trace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fault {
    /// Block `block` of step `step`'s `after` list was replaced.
    After { step: usize, block: usize, was: String, now: String },
    /// Condition `cond` of step `step` had `p` and `q` exchanged.
    SwappedPair { step: usize, cond: usize },
}

/// A block different from `b`.
fn perturb(b: &Block, p: &Params, rng: &mut impl Rng) -> Block {
    let delta = if rng.gen() { 1 } else { -1 };
    match b {
        Block::Bx { twist, weight } if rng.gen() => Block::bx(twist + delta, *weight),
        Block::Bx { twist, weight } => Block::bx(*twist, weight.shifted(delta, p.n())),
        Block::Jz { twist, weight } => Block::jz(twist + delta, *weight),
        Block::Az { twist, weight } => Block::az(twist + delta, *weight),
        Block::Axe { twist } => Block::axe(twist + delta),
        Block::FyFull { weight } => Block::dz(*weight),
        Block::DzFull { weight } => Block::fy(*weight),
        Block::Phi(phi) => Block::phi(phi.weight.shifted(delta, p.n()), phi.word.clone(), phi.origin),
    }
}

/// Apply one random corruption. Returns `None` if the trace has no steps.
pub fn inject(trace: &Trace, rng: &mut impl Rng) -> Option<(Trace, Fault)> {
    if trace.steps.is_empty() {
        return None;
    }
    let mut t = trace.clone();
    let with_conds: Vec<usize> = (0..t.steps.len()).filter(|&i| !t.steps[i].conds.is_empty()).collect();
    if with_conds.is_empty() || rng.gen_bool(0.5) {
        let step = rng.gen_range(0..t.steps.len());
        let block = rng.gen_range(0..t.steps[step].after.len());
        let old = t.steps[step].after[block].clone();
        let new = perturb(&old, t.params(), rng);
        t.steps[step].after[block] = new.clone();
        Some((t, Fault::After { step, block, was: old.to_full_string(), now: new.to_full_string() }))
    } else {
        let step = with_conds[rng.gen_range(0..with_conds.len())];
        let cond = rng.gen_range(0..t.steps[step].conds.len());
        let c = &mut t.steps[step].conds[cond];
        std::mem::swap(&mut c.p, &mut c.q);
        Some((t, Fault::SwappedPair { step, cond }))
    }
}
