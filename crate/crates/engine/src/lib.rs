//! Rewrite engine for semiorthogonal decompositions of cyclic covers.

pub mod driver;
pub mod dsl;
pub mod mutation;
pub mod window;

pub use driver::{replay_main, verify_ck, verify_phi_relabel, DriverError, Preset, Replay, Shape};
pub use mutation::{MutationError, Session};
pub use window::{crosscheck, explain, judge, vanishes, Vanishing, WindowError, WindowOracle};
