use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("cover degree n = {0} must be at least 2")]
    DegreeTooSmall(i64),
    #[error("divisor degree d = {0} must be at least 1")]
    DivisorDegreeTooSmall(i64),
    #[error("Lefschetz length m = {0} must be at least 1")]
    LengthTooSmall(i64),
    #[error("n·d = {nd} exceeds m = {m}")]
    NdExceedsM { nd: i64, m: i64 },
}

impl ParamsError {
    /// Stable short code, used by the CLI and in test assertions.
    pub fn code(&self) -> &'static str {
        match self {
            ParamsError::DegreeTooSmall(_) => "DegreeTooSmall",
            ParamsError::DivisorDegreeTooSmall(_) => "DivisorDegreeTooSmall",
            ParamsError::LengthTooSmall(_) => "LengthTooSmall",
            ParamsError::NdExceedsM { .. } => "NdExceedsM",
        }
    }
}

/// Arithmetic context `(n, d, m)` with the derived length `M = m − (n−1)d`.
///
/// `n` is the cover degree, `d` the degree of `L = O_Y(d)` (so the branch
/// divisor lives in `|O_Y(nd)|`) and `m` the length of the rectangular
/// Lefschetz decomposition of `D^b(Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct Params {
    n: i64,
    d: i64,
    m: i64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    n: i64,
    d: i64,
    m: i64,
}

impl TryFrom<RawParams> for Params {
    type Error = ParamsError;
    fn try_from(raw: RawParams) -> Result<Self, Self::Error> {
        Params::new(raw.n, raw.d, raw.m)
    }
}

impl From<Params> for RawParams {
    fn from(p: Params) -> Self {
        RawParams { n: p.n, d: p.d, m: p.m }
    }
}

impl Params {
    pub fn new(n: i64, d: i64, m: i64) -> Result<Self, ParamsError> {
        if n < 2 {
            return Err(ParamsError::DegreeTooSmall(n));
        }
        if d < 1 {
            return Err(ParamsError::DivisorDegreeTooSmall(d));
        }
        if m < 1 {
            return Err(ParamsError::LengthTooSmall(m));
        }
        if n * d > m {
            return Err(ParamsError::NdExceedsM { nd: n * d, m });
        }
        Ok(Params { n, d, m })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// `M = m − (n−1)d`, the number of twists of `B_X` in the equivariant
    /// Lefschetz-type decomposition of `D^b(X)^{μ_n}`.
    pub fn big_m(&self) -> i64 {
        self.m - (self.n - 1) * self.d
    }

    /// Length `m − nd` of the `B_Z` part of `D^b(Z)`; zero on the boundary.
    pub fn z_length(&self) -> i64 {
        self.m - self.n * self.d
    }

    /// True when `m = nd`: `B_Z` is undefined and `A_Z = D^b(Z)`.
    pub fn is_boundary(&self) -> bool {
        self.m == self.n * self.d
    }

    pub fn weight(&self, k: i64) -> Weight {
        Weight::reduce(k, self.n)
    }

    /// All weights `0, …, n−1`.
    pub fn weights(&self) -> impl Iterator<Item = Weight> {
        (0..self.n).map(Weight)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, d={}, m={}, M={})", self.n, self.d, self.m, self.big_m())
    }
}

/// A character of `μ_n`, i.e. a residue class modulo `n`, stored as its
/// representative in `[0, n−1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(i64);

impl Weight {
    pub fn reduce(k: i64, n: i64) -> Weight {
        Weight(k.rem_euclid(n))
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn shifted(self, by: i64, n: i64) -> Weight {
        Weight::reduce(self.0 + by, n)
    }

    /// `(self − other) mod n`.
    pub fn diff(self, other: Weight, n: i64) -> i64 {
        (self.0 - other.0).rem_euclid(n)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_length() {
        assert_eq!(Params::new(2, 1, 4).unwrap().big_m(), 3);
        assert_eq!(Params::new(3, 1, 5).unwrap().big_m(), 3);
        assert_eq!(Params::new(2, 2, 4).unwrap().big_m(), 2);
    }

    #[test]
    fn rejections_have_distinct_codes() {
        let errs = [
            Params::new(1, 1, 4).unwrap_err(),
            Params::new(2, 0, 4).unwrap_err(),
            Params::new(2, 1, 0).unwrap_err(),
            Params::new(3, 2, 5).unwrap_err(),
        ];
        assert_eq!(errs[3], ParamsError::NdExceedsM { nd: 6, m: 5 });
        let mut codes: Vec<_> = errs.iter().map(|e| e.code()).collect();
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 4);
    }

    #[test]
    fn boundary_means_big_m_equals_d() {
        for n in 2..=5 {
            for d in 1..=3 {
                for m in n * d..=12 {
                    let p = Params::new(n, d, m).unwrap();
                    assert!(p.big_m() >= p.d());
                    assert_eq!(p.is_boundary(), p.big_m() == p.d());
                }
            }
        }
    }

    #[test]
    fn weights_reduce() {
        assert_eq!(Weight::reduce(-1, 3).get(), 2);
        assert_eq!(Weight::reduce(7, 3).get(), 1);
        assert_eq!(Weight::reduce(0, 3).diff(Weight::reduce(1, 3), 3), 2);
    }

    #[test]
    fn serde_validates() {
        assert!(serde_json::from_str::<Params>(r#"{"n":3,"d":2,"m":5}"#).is_err());
        let p: Params = serde_json::from_str(r#"{"n":3,"d":1,"m":5}"#).unwrap();
        assert_eq!(p.big_m(), 3);
    }
}
