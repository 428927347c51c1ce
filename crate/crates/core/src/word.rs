//! Functor words built from the generating functors, and the defining
//! words of the opaque `Φ_k` blocks.

use std::fmt;

use crate::block::Block;
use crate::params::{Params, Weight};

/// One generating functor.
///
/// Indices are characters of `μ_n`: `PullF(k) = f_k^*`, `PushF(k) = f_{k*}`,
/// `PushJ(k) = j_{k*}`, `PullJ(k) = j_k^*`, `ShriekJ(k) = j_k^!`,
/// `ShriekF(k) = f_k^!`. `PushI`/`PullI` are `i_*`/`i^*` for the branch
/// divisor `i: Z → Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    PullF(Weight),
    PushF(Weight),
    PushJ(Weight),
    PullJ(Weight),
    ShriekJ(Weight),
    ShriekF(Weight),
    PushI,
    PullI,
    Twist(i64),
    Chi(i64),
    Shift(i64),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::PullF(k) => write!(f, "PullF({k})"),
            Generator::PushF(k) => write!(f, "PushF({k})"),
            Generator::PushJ(k) => write!(f, "PushJ({k})"),
            Generator::PullJ(k) => write!(f, "PullJ({k})"),
            Generator::ShriekJ(k) => write!(f, "ShriekJ({k})"),
            Generator::ShriekF(k) => write!(f, "ShriekF({k})"),
            Generator::PushI => write!(f, "PushI"),
            Generator::PullI => write!(f, "PullI"),
            Generator::Twist(c) => write!(f, "Twist({c})"),
            Generator::Chi(c) => write!(f, "Chi({c})"),
            Generator::Shift(s) => write!(f, "Shift({s})"),
        }
    }
}

/// A composition of generators, written left to right as functor
/// composition: the rightmost generator is applied first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FunctorWord(pub Vec<Generator>);

impl FunctorWord {
    pub fn new(generators: Vec<Generator>) -> Self {
        FunctorWord(generators)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FunctorWord) -> FunctorWord {
        let mut gens = self.0.clone();
        gens.extend_from_slice(&inner.0);
        FunctorWord(gens)
    }
}

impl fmt::Display for FunctorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A factor of a `Φ` defining word: either a left mutation through a list
/// of blocks or a plain generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PhiFactor {
    LMut(Vec<Block>),
    Gen(Generator),
}

impl fmt::Display for PhiFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiFactor::LMut(blocks) => {
                write!(f, "LMut(")?;
                for (i, b) in blocks.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{b}")?;
                }
                write!(f, ")")
            }
            PhiFactor::Gen(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PhiWord(pub Vec<PhiFactor>);

impl PhiWord {
    /// `LMut(prefix)·PushJ(k)·Twist(d)`.
    pub fn mutation_word(prefix: Vec<Block>, k: Weight, d: i64) -> PhiWord {
        PhiWord(vec![
            PhiFactor::LMut(prefix),
            PhiFactor::Gen(Generator::PushJ(k)),
            PhiFactor::Gen(Generator::Twist(d)),
        ])
    }

    pub fn factors(&self) -> &[PhiFactor] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Mutation lists are sets of mutually ordered blocks; the normal form
    /// sorts them canonically so regroupings compare equal.
    pub fn normalized(&self) -> PhiWord {
        PhiWord(
            self.0
                .iter()
                .map(|f| match f {
                    PhiFactor::LMut(blocks) => {
                        let mut blocks = blocks.clone();
                        blocks.sort_by_key(|b| b.canonical_key());
                        PhiFactor::LMut(blocks)
                    }
                    other => other.clone(),
                })
                .collect(),
        )
    }

    /// The blocks of the (single) left mutation factor, if any.
    pub fn mutation_blocks(&self) -> Option<&[Block]> {
        self.0.iter().find_map(|f| match f {
            PhiFactor::LMut(b) => Some(b.as_slice()),
            _ => None,
        })
    }

    /// Reduce all weights modulo `n` after a raw construction.
    pub fn renormalize(&self, p: &Params) -> PhiWord {
        PhiWord(
            self.0
                .iter()
                .map(|f| match f {
                    PhiFactor::LMut(blocks) => PhiFactor::LMut(blocks.iter().map(|b| b.chi(0, p)).collect()),
                    other => other.clone(),
                })
                .collect(),
        )
    }
}

impl fmt::Display for PhiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        for (i, factor) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}
