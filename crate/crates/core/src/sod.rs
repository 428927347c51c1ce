use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::block::Block;
use crate::params::Params;

/// Anything that can certify `Hom(p, q) = 0` between two blocks.
pub trait VanishingOracle {
    fn certifies_zero(&self, p: &Block, q: &Block) -> bool;

    /// Both `Hom(p, q)` and `Hom(q, p)` certified zero.
    fn completely_orthogonal(&self, p: &Block, q: &Block) -> bool {
        self.certifies_zero(p, q) && self.certifies_zero(q, p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SodError {
    #[error("block {0} appears twice")]
    DuplicateBlock(String),
    #[error("decompositions have different parameters")]
    ParamMismatch,
    #[error("Hom({later}, {earlier}) is not certified zero")]
    Uncertified { later: String, earlier: String },
    #[error("PHI block {0} has no provenance")]
    MissingProvenance(String),
}

/// An ordered sequence of blocks claiming pairwise semiorthogonality:
/// `Hom(blocks[i], blocks[j]) = 0` whenever `i > j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sod {
    params: Params,
    blocks: Vec<Block>,
}

/// How each pair of an Sod was justified.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    /// Pairs certified by the oracle.
    pub oracle_pairs: usize,
    /// Pairs justified because one side is a `PHI` block created by a
    /// recorded trace step.
    pub provenance_pairs: usize,
}

impl Sod {
    pub fn new(params: Params, blocks: Vec<Block>) -> Result<Sod, SodError> {
        let mut seen = HashSet::with_capacity(blocks.len());
        for b in &blocks {
            if !seen.insert(b.canonical_key()) {
                return Err(SodError::DuplicateBlock(b.to_string()));
            }
        }
        Ok(Sod { params, blocks })
    }

    pub fn empty(params: Params) -> Sod {
        Sod { params, blocks: Vec::new() }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }

    /// Replace `blocks[range]` by `replacement`, re-checking uniqueness.
    pub fn splice(&self, range: std::ops::Range<usize>, replacement: Vec<Block>) -> Result<Sod, SodError> {
        let mut blocks = self.blocks.clone();
        blocks.splice(range, replacement);
        Sod::new(self.params, blocks)
    }

    pub fn position(&self, block: &Block) -> Option<usize> {
        let key = block.canonical_key();
        self.blocks.iter().position(|b| b.canonical_key() == key)
    }

    /// Check every pair `i > j`. Pairs touching a `PHI` block are accepted
    /// on provenance alone.
    pub fn certify(&self, oracle: &dyn VanishingOracle) -> Result<Certificate, SodError> {
        let mut cert = Certificate::default();
        for (i, later) in self.blocks.iter().enumerate() {
            for earlier in &self.blocks[..i] {
                if later.is_phi() || earlier.is_phi() {
                    for b in [later, earlier] {
                        if let Block::Phi(phi) = b {
                            if phi.origin.is_none() {
                                return Err(SodError::MissingProvenance(b.to_string()));
                            }
                        }
                    }
                    cert.provenance_pairs += 1;
                } else if oracle.certifies_zero(later, earlier) {
                    cert.oracle_pairs += 1;
                } else {
                    return Err(SodError::Uncertified { later: later.to_string(), earlier: earlier.to_string() });
                }
            }
        }
        Ok(cert)
    }
}

impl fmt::Display for Sod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "⟩")
    }
}

/// A sequence of adjacent transpositions: entry `i` swaps positions `i`
/// and `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EquivWitness {
    pub swaps: Vec<usize>,
}

impl EquivWitness {
    pub fn reversed(&self) -> EquivWitness {
        EquivWitness { swaps: self.swaps.iter().rev().copied().collect() }
    }

    pub fn then(&self, other: &EquivWitness) -> EquivWitness {
        let mut swaps = self.swaps.clone();
        swaps.extend_from_slice(&other.swaps);
        EquivWitness { swaps }
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    /// Apply to `s`, checking that every swap is licensed.
    pub fn replay(&self, s: &Sod, oracle: &dyn VanishingOracle) -> Option<Sod> {
        let mut blocks = s.blocks.clone();
        for &i in &self.swaps {
            if i + 1 >= blocks.len() || !oracle.completely_orthogonal(&blocks[i], &blocks[i + 1]) {
                return None;
            }
            blocks.swap(i, i + 1);
        }
        Some(Sod { params: s.params, blocks })
    }
}

/// Upper bound on states visited by the fallback search.
const SEARCH_NODE_LIMIT: usize = 200_000;

/// Decide whether `b` is reachable from `a` by adjacent transpositions of
/// pairs the oracle certifies completely orthogonal. Returns the swap
/// sequence on success.
///
/// First tries a bubble sort of `a` into `b`'s order that only swaps
/// inverted pairs; if an inversion is blocked, falls back to a
/// breadth-first search of depth at most `len²`.
pub fn sod_equiv(a: &Sod, b: &Sod, oracle: &dyn VanishingOracle) -> Result<Option<EquivWitness>, SodError> {
    if a.params != b.params {
        return Err(SodError::ParamMismatch);
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    let target: HashMap<&Block, usize> = b.blocks.iter().enumerate().map(|(i, blk)| (blk, i)).collect();
    let mut keys = Vec::with_capacity(a.len());
    for blk in &a.blocks {
        match target.get(blk) {
            Some(&i) => keys.push(i),
            None => return Ok(None),
        }
    }

    let mut blocks = a.blocks.clone();
    let mut swaps = Vec::new();
    loop {
        let mut inverted = false;
        let mut progressed = false;
        for i in 0..blocks.len().saturating_sub(1) {
            if keys[i] > keys[i + 1] {
                inverted = true;
                if oracle.completely_orthogonal(&blocks[i], &blocks[i + 1]) {
                    keys.swap(i, i + 1);
                    blocks.swap(i, i + 1);
                    swaps.push(i);
                    progressed = true;
                }
            }
        }
        if !inverted {
            return Ok(Some(EquivWitness { swaps }));
        }
        if !progressed {
            break;
        }
    }

    // Fallback from the original order.
    let start: Vec<usize> = a.blocks.iter().map(|blk| target[blk]).collect();
    Ok(search(&a.blocks, start, oracle))
}

fn search(blocks: &[Block], start: Vec<usize>, oracle: &dyn VanishingOracle) -> Option<EquivWitness> {
    let len = start.len();
    let goal: Vec<usize> = (0..len).collect();
    let max_depth = len * len;
    // by_key[k] = original block with target index k
    let mut by_key = vec![0usize; len];
    for (i, &k) in start.iter().enumerate() {
        by_key[k] = i;
    }
    let licensed = |x: usize, y: usize| oracle.completely_orthogonal(&blocks[by_key[x]], &blocks[by_key[y]]);

    let mut parent: HashMap<Vec<usize>, (Vec<usize>, usize)> = HashMap::new();
    let mut depth: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    depth.insert(start.clone(), 0);
    queue.push_back(start.clone());
    while let Some(state) = queue.pop_front() {
        if state == goal {
            let mut swaps = Vec::new();
            let mut cur = state;
            while let Some((prev, i)) = parent.get(&cur) {
                swaps.push(*i);
                cur = prev.clone();
            }
            swaps.reverse();
            return Some(EquivWitness { swaps });
        }
        let dep = depth[&state];
        if dep >= max_depth || depth.len() > SEARCH_NODE_LIMIT {
            continue;
        }
        for i in 0..len.saturating_sub(1) {
            if !licensed(state[i], state[i + 1]) {
                continue;
            }
            let mut next = state.clone();
            next.swap(i, i + 1);
            if depth.contains_key(&next) {
                continue;
            }
            depth.insert(next.clone(), dep + 1);
            parent.insert(next.clone(), (state.clone(), i));
            queue.push_back(next);
        }
    }
    None
}

/// Number of `B` copies and `A_Z` copies an Sod accounts for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AtomCounts {
    pub b_type: i64,
    pub a_type: i64,
}

/// Count `B` copies (`BX`, `JZ`, and the expansions of composites) and
/// `A_Z` copies (`AZ`, `PHI`, one per `DZ`). `AXE` counts as neither.
pub fn count_atoms(s: &Sod) -> AtomCounts {
    let p = s.params();
    let mut counts = AtomCounts::default();
    for b in s.blocks() {
        match b {
            Block::Bx { .. } | Block::Jz { .. } => counts.b_type += 1,
            Block::Az { .. } | Block::Phi(_) => counts.a_type += 1,
            Block::FyFull { .. } => counts.b_type += p.m(),
            Block::DzFull { .. } => {
                counts.b_type += p.big_m() - p.d();
                counts.a_type += 1;
            }
            Block::Axe { .. } => {}
        }
    }
    counts
}
