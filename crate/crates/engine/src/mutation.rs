//! Rewrite rules on Sods. Every rule is an adjacent-pair (or single-block)
//! rewrite that returns the new Sod together with its trace step; side
//! conditions are certified by the window oracle when recorded.
//!
//! Side conditions are listed in a fixed order per rule, since the trace
//! checker compares them literally:
//!
//! | rule | span | conditions `Hom(p, q) = 0` |
//! |---|---|---|
//! | `EXPAND_*` | `[X]` | `(e_j, e_i)` for `j = 1..`, `i < j` |
//! | `RMUT_THROUGH_DZ` | `[BX(t,k), DZ(k)]` | `(BX(t−d,k+1), DZ(k))` |
//! | `LMUT_JZ_TRANSFORM` | `[BX(t,k), JZ(t,k)]` | `(BX(t,k), BX(t−d,k+1))` |
//! | `LMUT_IDENTITY` | `[BX, JZ]` / `[BX, AZ]` | `(BX, JZ), (JZ, BX)` / `(BX, AZ)` |
//! | `SWAP_ORTH` | `[x, y]` | `(x, y), (y, x)` |
//! | `PHI_FORM` | `[C_k…, AZ(d,k)]` | none |
//! | `PHI_SIMPLIFY` | `[PHI(k)]` | dropped `(b, AZ(d,k))`, then regrouping `(x, y)` |

use sodcalc_core::block::grid;
use sodcalc_core::{
    Block, Generator, Params, PhiFactor, PhiWord, RuleId, SideCondition, Sod, SodError, Trace, TraceStep,
};
use thiserror::Error;

use crate::window::judge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MutationError {
    #[error("index {index} out of range for an Sod of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{0} is not a composite block")]
    NotComposite(String),
    #[error("{rule} not applicable: {reason}")]
    RuleNotApplicable { rule: RuleId, reason: String },
    #[error("prefix is not C_k: {0}")]
    PrefixNotCk(String),
    #[error("simplification blocked: {0}")]
    SimplificationBlocked(String),
    #[error(transparent)]
    Sod(#[from] SodError),
}

/// The result of one rewrite.
#[derive(Debug, Clone)]
pub struct Rewrite {
    pub sod: Sod,
    pub step: TraceStep,
}

fn not_applicable(rule: RuleId, reason: impl Into<String>) -> MutationError {
    MutationError::RuleNotApplicable { rule, reason: reason.into() }
}

fn block_at(s: &Sod, i: usize) -> Result<&Block, MutationError> {
    s.blocks().get(i).ok_or(MutationError::IndexOutOfRange { index: i, len: s.len() })
}

/// Certify `Hom(p, q) = 0` with the window oracle.
fn certify(p: &Block, q: &Block, params: &Params) -> Option<SideCondition> {
    match judge(p, q, params) {
        Ok(j) if j.is_guaranteed() => Some(SideCondition::zero(p.clone(), q.clone(), j.citation())),
        _ => None,
    }
}

fn certify_all(rule: RuleId, pairs: Vec<(Block, Block)>, params: &Params) -> Result<Vec<SideCondition>, MutationError> {
    pairs
        .into_iter()
        .map(|(p, q)| certify(&p, &q, params).ok_or_else(|| not_applicable(rule, format!("Hom({p}, {q}) = 0 is not certified"))))
        .collect()
}

fn rewrite(
    s: &Sod,
    index: usize,
    rule: RuleId,
    span: std::ops::Range<usize>,
    after: Vec<Block>,
    conds: Vec<SideCondition>,
) -> Result<Rewrite, MutationError> {
    let before = s.blocks()[span.clone()].to_vec();
    let sod = s.splice(span.clone(), after.clone())?;
    Ok(Rewrite { sod, step: TraceStep { index, rule, pos: (span.start, span.end), before, after, conds } })
}

/// Pairwise conditions internal to an expansion, in recorded order.
pub fn expansion_pairs(blocks: &[Block]) -> Vec<(Block, Block)> {
    let mut out = Vec::new();
    for j in 1..blocks.len() {
        for i in 0..j {
            out.push((blocks[j].clone(), blocks[i].clone()));
        }
    }
    out
}

/// Replace a composite block by its components.
pub fn expand(s: &Sod, i: usize, index: usize) -> Result<Rewrite, MutationError> {
    let p = *s.params();
    let b = block_at(s, i)?;
    let rule = match b {
        Block::FyFull { .. } => RuleId::ExpandFy,
        Block::DzFull { .. } => RuleId::ExpandDz,
        other => return Err(MutationError::NotComposite(other.to_string())),
    };
    let after = b.expansion(&p).expect("composite");
    let conds = certify_all(rule, expansion_pairs(&after), &p)?;
    rewrite(s, index, rule, i..i + 1, after, conds)
}

/// `[BX(t,k), DZ(k)] ↦ [DZ(k), BX(t−d, k+1)]`.
pub fn right_mutate(s: &Sod, i: usize, index: usize) -> Result<Rewrite, MutationError> {
    let p = *s.params();
    let rule = RuleId::RmutThroughDz;
    let (t, k) = match block_at(s, i)? {
        Block::Bx { twist, weight } => (*twist, *weight),
        other => return Err(not_applicable(rule, format!("{other} is not a BX block"))),
    };
    match block_at(s, i + 1)? {
        Block::DzFull { weight } if *weight == k => {}
        other => return Err(not_applicable(rule, format!("{other} is not DZ({k})"))),
    }
    let dz = Block::dz(k);
    let moved = Block::bx(t - p.d(), k.shifted(1, p.n()));
    let conds = certify_all(rule, vec![(moved.clone(), dz.clone())], &p)?;
    rewrite(s, index, rule, i..i + 2, vec![dz, moved], conds)
}

/// Left mutation of block `i` (a `JZ` or `AZ`) through the `BX` block at
/// `i − 1`.
pub fn left_mutate_step(s: &Sod, i: usize, index: usize) -> Result<Rewrite, MutationError> {
    let p = *s.params();
    if i == 0 {
        return Err(not_applicable(RuleId::LmutIdentity, "no block on the left"));
    }
    let right = block_at(s, i)?.clone();
    let left = block_at(s, i - 1)?.clone();
    let (s_twist, l) = match &left {
        Block::Bx { twist, weight } => (*twist, *weight),
        other => return Err(not_applicable(RuleId::LmutIdentity, format!("{other} is not a BX block"))),
    };
    match right {
        Block::Jz { twist: t, weight: k } if k == l && t == s_twist => {
            let rule = RuleId::LmutJzTransform;
            let new = Block::bx(t - p.d(), k.shifted(1, p.n()));
            let conds = certify_all(rule, vec![(left.clone(), new.clone())], &p)?;
            rewrite(s, index, rule, i - 1..i + 1, vec![new, left], conds)
        }
        Block::Jz { .. } => {
            let rule = RuleId::LmutIdentity;
            let conds = certify_all(rule, vec![(left.clone(), right.clone()), (right.clone(), left.clone())], &p)?;
            rewrite(s, index, rule, i - 1..i + 1, vec![right, left], conds)
        }
        Block::Az { .. } => {
            let rule = RuleId::LmutIdentity;
            let conds = certify_all(rule, vec![(left.clone(), right.clone())], &p)?;
            rewrite(s, index, rule, i - 1..i + 1, vec![right, left], conds)
        }
        other => Err(not_applicable(RuleId::LmutIdentity, format!("{other} is neither JZ nor AZ"))),
    }
}

/// Swap blocks `i` and `i + 1`, which must be completely orthogonal.
pub fn swap_orth(s: &Sod, i: usize, index: usize) -> Result<Rewrite, MutationError> {
    let p = *s.params();
    let rule = RuleId::SwapOrth;
    let x = block_at(s, i)?.clone();
    let y = block_at(s, i + 1)?.clone();
    let conds = certify_all(rule, vec![(x.clone(), y.clone()), (y.clone(), x.clone())], &p)?;
    rewrite(s, index, rule, i..i + 2, vec![y, x], conds)
}

/// `C_k = B_X^{[0,k]}([0,M−1])` in grid order.
pub fn ck_grid(p: &Params, k: i64) -> Vec<Block> {
    grid(p, 0..=p.big_m() - 1, 0..=k)
}

fn sorted_keys(blocks: &[Block]) -> Vec<(u8, i64, i64)> {
    let mut keys: Vec<_> = blocks.iter().map(Block::canonical_key).collect();
    keys.sort_unstable();
    keys
}

/// Replace `AZ(d,k)` at `i` by `PHI(k)`, placed right of the leading `PHI`
/// blocks. The blocks between them must be exactly `C_k`.
pub fn form_phi(s: &Sod, i: usize, index: usize) -> Result<Rewrite, MutationError> {
    let p = *s.params();
    let k = match block_at(s, i)? {
        Block::Az { twist, weight } if *twist == p.d() => *weight,
        other => return Err(MutationError::PrefixNotCk(format!("{other} is not AZ({},k)", p.d()))),
    };
    let lead = s.blocks().iter().take_while(|b| b.is_phi()).count();
    if lead as i64 != k.get() || lead > i {
        return Err(MutationError::PrefixNotCk(format!("expected {} leading PHI blocks, found {lead}", k.get())));
    }
    for (j, b) in s.blocks()[..lead].iter().enumerate() {
        if b.weight() != Some(p.weight(j as i64)) {
            return Err(MutationError::PrefixNotCk(format!("leading block {b} out of order")));
        }
    }
    let prefix = &s.blocks()[lead..i];
    if sorted_keys(prefix) != sorted_keys(&ck_grid(&p, k.get())) {
        return Err(MutationError::PrefixNotCk(format!("blocks left of AZ({},{k}) are not C_{k}", p.d())));
    }
    let phi = Block::phi(k, PhiWord::mutation_word(prefix.to_vec(), k, p.d()), Some(index));
    let mut after = vec![phi];
    after.extend_from_slice(prefix);
    rewrite(s, index, RuleId::PhiForm, lead..i + 1, after, Vec::new())
}

/// The simplified word `LMut(B_X^k([0,d−1]))·PushJ(k)·Twist(d)`.
pub fn simplified_word(p: &Params, k: sodcalc_core::Weight) -> PhiWord {
    PhiWord::mutation_word((0..p.d()).map(|t| Block::bx(t, k)).collect(), k, p.d())
}

/// Condition pairs for simplifying a raw `PHI(k)` word with mutation list
/// `raw`: each dropped block is left orthogonal to `AZ(d,k)`, and
/// `B^{[0,k−1]}([0,d−1])` is left orthogonal to `B^k([0,d−1])`.
pub fn simplification_pairs(p: &Params, k: sodcalc_core::Weight, raw: &[Block]) -> Vec<(Block, Block)> {
    let d = p.d();
    let az = Block::az(d, k);
    let kept = |b: &Block| matches!(b, Block::Bx { twist, weight } if *weight == k && (0..d).contains(twist));
    let mut out: Vec<(Block, Block)> = raw.iter().filter(|b| !kept(b)).map(|b| (b.clone(), az.clone())).collect();
    if k.get() > 0 {
        for x in grid(p, 0..=d - 1, 0..=k.get() - 1) {
            for t in 0..d {
                out.push((x.clone(), Block::bx(t, k)));
            }
        }
    }
    out
}

/// Reduce a raw `PHI(k)` word to the simplified one, with citations for
/// every dropped mutation factor.
pub fn simplify_phi(b: &Block, p: &Params) -> Result<(Block, Vec<SideCondition>), MutationError> {
    let phi = match b {
        Block::Phi(phi) => phi,
        other => return Err(MutationError::SimplificationBlocked(format!("{other} is not a PHI block"))),
    };
    let k = phi.weight;
    let raw = match phi.word.factors() {
        [PhiFactor::LMut(raw), PhiFactor::Gen(Generator::PushJ(j)), PhiFactor::Gen(Generator::Twist(t))]
            if *j == k && *t == p.d() =>
        {
            raw
        }
        _ => return Err(MutationError::SimplificationBlocked(format!("word {} is not a raw PHI word", phi.word))),
    };
    if sorted_keys(raw) != sorted_keys(&ck_grid(p, k.get())) {
        return Err(MutationError::SimplificationBlocked(format!("mutation list of PHI({k}) is not C_{k}")));
    }
    let mut conds = Vec::new();
    for (x, y) in simplification_pairs(p, k, raw) {
        conds.push(
            certify(&x, &y, p)
                .ok_or_else(|| MutationError::SimplificationBlocked(format!("Hom({x}, {y}) = 0 is not certified")))?,
        );
    }
    Ok((Block::phi(k, simplified_word(p, k), phi.origin), conds))
}

/// [`simplify_phi`] applied to block `i` of an Sod.
pub fn simplify_phi_at(s: &Sod, i: usize, index: usize) -> Result<Rewrite, MutationError> {
    let (new, conds) = simplify_phi(block_at(s, i)?, s.params())?;
    rewrite(s, index, RuleId::PhiSimplify, i..i + 1, vec![new], conds)
}

/// An Sod together with the trace of the rewrites that produced it.
#[derive(Debug, Clone)]
pub struct Session {
    sod: Sod,
    trace: Trace,
}

impl Session {
    pub fn new(sod: Sod) -> Self {
        let trace = Trace::new(*sod.params());
        Session { sod, trace }
    }

    pub fn sod(&self) -> &Sod {
        &self.sod
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn into_parts(self) -> (Sod, Trace) {
        (self.sod, self.trace)
    }

    pub fn position(&self, b: &Block) -> Option<usize> {
        self.sod.position(b)
    }

    fn apply(
        &mut self,
        f: impl FnOnce(&Sod, usize, usize) -> Result<Rewrite, MutationError>,
        i: usize,
    ) -> Result<usize, MutationError> {
        let index = self.trace.steps.len();
        let Rewrite { sod, step } = f(&self.sod, i, index)?;
        self.sod = sod;
        self.trace.steps.push(step);
        Ok(index)
    }

    pub fn expand(&mut self, i: usize) -> Result<usize, MutationError> {
        self.apply(expand, i)
    }

    pub fn right_mutate(&mut self, i: usize) -> Result<usize, MutationError> {
        self.apply(right_mutate, i)
    }

    pub fn left_mutate(&mut self, i: usize) -> Result<usize, MutationError> {
        self.apply(left_mutate_step, i)
    }

    pub fn swap(&mut self, i: usize) -> Result<usize, MutationError> {
        self.apply(swap_orth, i)
    }

    pub fn form_phi(&mut self, i: usize) -> Result<usize, MutationError> {
        self.apply(form_phi, i)
    }

    pub fn simplify_phi(&mut self, i: usize) -> Result<usize, MutationError> {
        self.apply(simplify_phi_at, i)
    }
}
