use std::fmt;
use std::hash::{Hash, Hasher};

use crate::params::{Params, Weight};
use crate::word::PhiWord;

/// Label of an admissible subcategory of `D^b(X)^{μ_n}`.
///
/// | variant | subcategory |
/// |---|---|
/// | `Bx` | `f_k^* B(t) = B_X(t) ⊗ χ^k` |
/// | `Jz` | `j_{k*} B_Z(t)` |
/// | `Az` | `j_{k*} A_Z(t)` |
/// | `Axe` | `A_X^{μ_n}(t)` |
/// | `FyFull` | `f_k^* D^b(Y)` |
/// | `DzFull` | `j_{k*} D^b(Z)` |
/// | `Phi` | `Φ_k(A_Z)`, opaque |
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Block {
    Bx { twist: i64, weight: Weight },
    Jz { twist: i64, weight: Weight },
    Az { twist: i64, weight: Weight },
    Axe { twist: i64 },
    FyFull { weight: Weight },
    DzFull { weight: Weight },
    Phi(PhiBlock),
}

/// The image of `A_Z` under a mutation functor. Known only through the
/// word that defines it and the trace step that created it.
#[derive(Debug, Clone)]
pub struct PhiBlock {
    pub weight: Weight,
    pub word: PhiWord,
    /// Index of the trace step that formed this block.
    pub origin: Option<usize>,
}

impl PartialEq for PhiBlock {
    fn eq(&self, other: &Self) -> bool {
        self.weight == other.weight && self.word.normalized() == other.word.normalized()
    }
}

impl Eq for PhiBlock {}

impl Hash for PhiBlock {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.weight.hash(state);
        self.word.normalized().hash(state);
    }
}

impl Block {
    pub fn bx(twist: i64, weight: Weight) -> Block {
        Block::Bx { twist, weight }
    }

    pub fn jz(twist: i64, weight: Weight) -> Block {
        Block::Jz { twist, weight }
    }

    pub fn az(twist: i64, weight: Weight) -> Block {
        Block::Az { twist, weight }
    }

    pub fn axe(twist: i64) -> Block {
        Block::Axe { twist }
    }

    pub fn fy(weight: Weight) -> Block {
        Block::FyFull { weight }
    }

    pub fn dz(weight: Weight) -> Block {
        Block::DzFull { weight }
    }

    pub fn phi(weight: Weight, word: PhiWord, origin: Option<usize>) -> Block {
        Block::Phi(PhiBlock { weight, word, origin })
    }

    pub fn weight(&self) -> Option<Weight> {
        match self {
            Block::Bx { weight, .. }
            | Block::Jz { weight, .. }
            | Block::Az { weight, .. }
            | Block::FyFull { weight }
            | Block::DzFull { weight } => Some(*weight),
            Block::Phi(phi) => Some(phi.weight),
            Block::Axe { .. } => None,
        }
    }

    pub fn twist(&self) -> Option<i64> {
        match self {
            Block::Bx { twist, .. } | Block::Jz { twist, .. } | Block::Az { twist, .. } | Block::Axe { twist } => {
                Some(*twist)
            }
            _ => None,
        }
    }

    pub fn is_phi(&self) -> bool {
        matches!(self, Block::Phi(_))
    }

    pub fn is_composite(&self) -> bool {
        matches!(self, Block::FyFull { .. } | Block::DzFull { .. })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Block::Bx { .. } => "BX",
            Block::Jz { .. } => "JZ",
            Block::Az { .. } => "AZ",
            Block::Axe { .. } => "AXE",
            Block::FyFull { .. } => "FY",
            Block::DzFull { .. } => "DZ",
            Block::Phi(_) => "PHI",
        }
    }

    /// `(kind, twist, weight)`; identifies a block inside an Sod and sorts
    /// `BX` blocks into grid order (twist-major, then weight).
    pub fn canonical_key(&self) -> (u8, i64, i64) {
        match self {
            Block::Bx { twist, weight } => (0, *twist, weight.get()),
            Block::Jz { twist, weight } => (1, *twist, weight.get()),
            Block::Az { twist, weight } => (2, *twist, weight.get()),
            Block::Axe { twist } => (3, *twist, 0),
            Block::FyFull { weight } => (4, 0, weight.get()),
            Block::DzFull { weight } => (5, 0, weight.get()),
            Block::Phi(phi) => (6, 0, phi.weight.get()),
        }
    }

    /// Expansion of a composite block into its Lefschetz components:
    /// `f_k^* D^b(Y) = ⟨B_X^k(0), …, B_X^k(m−1)⟩` and
    /// `j_{k*} D^b(Z) = ⟨j_{k*}A_Z(d), j_{k*}B_Z(d), …, j_{k*}B_Z(M−1)⟩`.
    pub fn expansion(&self, p: &Params) -> Option<Vec<Block>> {
        match self {
            Block::FyFull { weight } => Some((0..p.m()).map(|t| Block::bx(t, *weight)).collect()),
            Block::DzFull { weight } => {
                let mut out = vec![Block::az(p.d(), *weight)];
                out.extend((p.d()..p.big_m()).map(|t| Block::jz(t, *weight)));
                Some(out)
            }
            _ => None,
        }
    }

    /// Tensor with `χ^c`; non-equivariantly defined blocks (`AXE`) are fixed.
    pub fn chi(&self, c: i64, p: &Params) -> Block {
        let n = p.n();
        match self {
            Block::Bx { twist, weight } => Block::bx(*twist, weight.shifted(c, n)),
            Block::Jz { twist, weight } => Block::jz(*twist, weight.shifted(c, n)),
            Block::Az { twist, weight } => Block::az(*twist, weight.shifted(c, n)),
            Block::Axe { twist } => Block::axe(*twist),
            Block::FyFull { weight } => Block::fy(weight.shifted(c, n)),
            Block::DzFull { weight } => Block::dz(weight.shifted(c, n)),
            Block::Phi(phi) => Block::Phi(PhiBlock {
                weight: phi.weight.shifted(c, n),
                word: phi.word.clone(),
                origin: phi.origin,
            }),
        }
    }

    /// Literal including a `PHI` block's defining word, e.g.
    /// `PHI(0)[LMut(BX(0,0))·PushJ(0)·Twist(1)]`.
    pub fn to_full_string(&self) -> String {
        match self {
            Block::Phi(phi) => format!("PHI({})[{}]", phi.weight, phi.word),
            other => other.to_string(),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Bx { twist, weight } => write!(f, "BX({twist},{weight})"),
            Block::Jz { twist, weight } => write!(f, "JZ({twist},{weight})"),
            Block::Az { twist, weight } => write!(f, "AZ({twist},{weight})"),
            Block::Axe { twist } => write!(f, "AXE({twist})"),
            Block::FyFull { weight } => write!(f, "FY({weight})"),
            Block::DzFull { weight } => write!(f, "DZ({weight})"),
            Block::Phi(phi) => write!(f, "PHI({})", phi.weight),
        }
    }
}

/// The grid `B_X^{[w_lo, w_hi]}([t_lo, t_hi])` in grid order.
pub fn grid(p: &Params, twists: std::ops::RangeInclusive<i64>, weights: std::ops::RangeInclusive<i64>) -> Vec<Block> {
    let mut out = Vec::new();
    for t in twists {
        for k in weights.clone() {
            out.push(Block::bx(t, p.weight(k)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions() {
        let p = Params::new(2, 1, 4).unwrap();
        let fy: Vec<String> = Block::fy(p.weight(0)).expansion(&p).unwrap().iter().map(|b| b.to_string()).collect();
        assert_eq!(fy, ["BX(0,0)", "BX(1,0)", "BX(2,0)", "BX(3,0)"]);

        let p = Params::new(3, 1, 5).unwrap();
        let dz: Vec<String> = Block::dz(p.weight(1)).expansion(&p).unwrap().iter().map(|b| b.to_string()).collect();
        assert_eq!(dz, ["AZ(1,1)", "JZ(1,1)", "JZ(2,1)"]);

        let p = Params::new(2, 2, 4).unwrap();
        let dz: Vec<String> = Block::dz(p.weight(0)).expansion(&p).unwrap().iter().map(|b| b.to_string()).collect();
        assert_eq!(dz, ["AZ(2,0)"]);
        assert!(Block::bx(0, p.weight(0)).expansion(&p).is_none());
    }

    #[test]
    fn phi_equality_ignores_origin_and_mutation_order() {
        let p = Params::new(2, 2, 4).unwrap();
        let w0 = p.weight(0);
        let a = Block::phi(w0, PhiWord::mutation_word(vec![Block::bx(0, w0), Block::bx(1, w0)], w0, 2), Some(3));
        let b = Block::phi(w0, PhiWord::mutation_word(vec![Block::bx(1, w0), Block::bx(0, w0)], w0, 2), None);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "PHI(0)");
        assert_eq!(a.to_full_string(), "PHI(0)[LMut(BX(0,0),BX(1,0))·PushJ(0)·Twist(2)]");
    }

    #[test]
    fn grid_is_twist_major() {
        let p = Params::new(2, 1, 4).unwrap();
        let g: Vec<String> = grid(&p, 0..=1, 0..=1).iter().map(|b| b.to_string()).collect();
        assert_eq!(g, ["BX(0,0)", "BX(0,1)", "BX(1,0)", "BX(1,1)"]);
    }
}
