//! Symbolic calculus for semiorthogonal decompositions of the `μ_n`-equivariant
//! derived category of a degree-`n` cyclic cover `X → Y` branched over `Z`.
//!
//! Objects of the triangulated categories are never modelled. Admissible
//! subcategories are labels ([`Block`]) and every statement about them is
//! a rewrite governed by index arithmetic. The [`adjunction`] module is the
//! derivation-based oracle: it reduces a Hom query between blocks to Hom
//! queries on the base `Y` and the divisor `Z`, where only the Lefschetz
//! windows are known.

pub mod adjunction;
pub mod block;
pub mod literal;
pub mod params;
pub mod sod;
pub mod trace;
pub mod word;

pub use adjunction::{AdjunctionError, AdjunctionOracle, Atom, FormalObject, HomVerdict, Label, Space, XOrigin};
pub use block::{Block, PhiBlock};
pub use literal::{BlockLit, LiteralError};
pub use params::{Params, ParamsError, Weight};
pub use sod::{count_atoms, sod_equiv, AtomCounts, EquivWitness, Sod, SodError, VanishingOracle};
pub use trace::{RuleId, SideCondition, Trace, TraceError, TraceHeader, TraceStep};
pub use word::{FunctorWord, Generator, PhiFactor, PhiWord};
