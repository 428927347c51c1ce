//! Derivation-based Hom oracle.
//!
//! A Hom query between two blocks is moved by adjunction to a Hom query
//! between formal objects on the base `Y` or on the divisor `Z`. The
//! functors involved act on formal atoms by the projection formula and the
//! divisor triangles:
//!
//! * `f_{k*} f_l^* B(t) = B(t − a·d)` with `a = (k − l) mod n`;
//! * `j_l^* j_{k*} F = F` if `l = k`, `F(−d)[1]` if `l = k + 1`, else `0`;
//! * `j_k^! f_l^* G = i^*G(d)[−1]` if `k = l − 1`, else `0`;
//! * `j_k^* f_l^* G = i^*G` if `k = l`, else `0`;
//! * `i_* i^* G(t)` has the filtration `G(t − nd)[1], G(t)`.
//!
//! On the base spaces only the Lefschetz windows are known, so every
//! verdict that is not forced by a window (or by the identity morphism) is
//! [`HomVerdict::Unknown`].

use std::fmt;

use thiserror::Error;

use crate::block::Block;
use crate::params::{Params, Weight};
use crate::sod::VanishingOracle;
use crate::word::{FunctorWord, Generator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XOrigin {
    /// `f_k^*` image of a `Y` atom.
    Pullback,
    /// `j_{k*}` image of a `Z` atom.
    Divisor,
    /// `A_X^{μ_n}` itself.
    Native,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Y,
    Z,
    X(XOrigin),
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Y => write!(f, "Y"),
            Space::Z => write!(f, "Z"),
            Space::X(_) => write!(f, "X"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    B,
    A,
}

/// A factor of a formal object. On `Y` and `Z` the weight records a
/// character factor `χ^k`; on `X` it is the equivariant weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Atom {
    pub space: Space,
    pub label: Label,
    pub twist: i64,
    pub weight: Weight,
    pub shift: i64,
}

impl Atom {
    pub fn new(space: Space, label: Label, twist: i64, weight: Weight, shift: i64) -> Result<Atom, AdjunctionError> {
        let atom = Atom { space, label, twist, weight, shift };
        match (space, label) {
            (Space::Y, Label::A) | (Space::X(XOrigin::Pullback), Label::A) | (Space::X(XOrigin::Native), Label::B) => {
                Err(AdjunctionError::ForbiddenAtom(atom.to_string()))
            }
            _ => Ok(atom),
        }
    }

    pub fn y(twist: i64) -> Atom {
        Atom { space: Space::Y, label: Label::B, twist, weight: Weight::reduce(0, 1), shift: 0 }
    }

    pub fn z(label: Label, twist: i64) -> Atom {
        Atom { space: Space::Z, label, twist, weight: Weight::reduce(0, 1), shift: 0 }
    }

    fn with(self, space: Space, twist: i64, weight: Weight, shift: i64) -> Atom {
        Atom { space, twist, weight, shift, ..self }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.label {
            Label::B => "B",
            Label::A => "A",
        };
        let space = match self.space {
            Space::Y => "Y",
            Space::Z => "Z",
            Space::X(XOrigin::Pullback) => "X",
            Space::X(XOrigin::Divisor) => "jZ",
            Space::X(XOrigin::Native) => "X^μ",
        };
        write!(f, "{label}_{space}({})", self.twist)?;
        if self.weight.get() != 0 {
            write!(f, "⊗χ^{}", self.weight)?;
        }
        if self.shift != 0 {
            write!(f, "[{}]", self.shift)?;
        }
        Ok(())
    }
}

/// A formal filtration; the empty list is the zero object.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalObject {
    pub factors: Vec<Atom>,
}

impl FormalObject {
    pub fn zero() -> Self {
        FormalObject { factors: Vec::new() }
    }

    pub fn atom(a: Atom) -> Self {
        FormalObject { factors: vec![a] }
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for FormalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        write!(f, "[")?;
        for (i, a) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HomVerdict {
    Zero,
    Nonzero,
    Unknown,
}

impl fmt::Display for HomVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HomVerdict::Zero => "Zero",
            HomVerdict::Nonzero => "Nonzero",
            HomVerdict::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjunctionError {
    #[error("generator {generator} cannot act on an atom of space {space}")]
    SpaceMismatch { generator: String, space: Space },
    #[error("no reduction rule for {generator} on {atom}")]
    NoRule { generator: String, atom: String },
    #[error("B_Z is undefined when m = nd")]
    BZUndefined,
    #[error("PHI blocks are provenance-only")]
    PhiUnsupported,
    #[error("atom {0} is not allowed")]
    ForbiddenAtom(String),
}

fn mismatch(g: &Generator, a: &Atom) -> AdjunctionError {
    AdjunctionError::SpaceMismatch { generator: g.to_string(), space: a.space }
}

fn no_rule(g: &Generator, a: &Atom) -> AdjunctionError {
    AdjunctionError::NoRule { generator: g.to_string(), atom: a.to_string() }
}

fn apply_generator(g: &Generator, a: &Atom, p: &Params, out: &mut Vec<Atom>) -> Result<(), AdjunctionError> {
    let n = p.n();
    let d = p.d();
    let w0 = p.weight(0);
    match *g {
        Generator::PullF(l) => {
            if a.space != Space::Y {
                return Err(mismatch(g, a));
            }
            out.push(a.with(Space::X(XOrigin::Pullback), a.twist, l.shifted(a.weight.get(), n), a.shift));
        }
        Generator::ShriekF(l) => {
            if a.space != Space::Y {
                return Err(mismatch(g, a));
            }
            let twist = a.twist + (n - 1) * d;
            out.push(a.with(Space::X(XOrigin::Pullback), twist, l.shifted(a.weight.get(), n), a.shift));
        }
        Generator::PushF(k) => match a.space {
            Space::X(XOrigin::Pullback) => {
                let shift_by = k.diff(a.weight, n);
                out.push(a.with(Space::Y, a.twist - shift_by * d, w0, a.shift));
            }
            Space::X(XOrigin::Native) => {
                // f_{k*} A_X(t) ⊂ ⟨B(t − (n−1)d), …, B(t − 1)⟩ in every weight.
                for twist in a.twist - (n - 1) * d..a.twist {
                    out.push(Atom { space: Space::Y, label: Label::B, twist, weight: w0, shift: a.shift });
                }
            }
            Space::X(XOrigin::Divisor) => return Err(no_rule(g, a)),
            _ => return Err(mismatch(g, a)),
        },
        Generator::PushJ(k) => {
            if a.space != Space::Z {
                return Err(mismatch(g, a));
            }
            out.push(a.with(Space::X(XOrigin::Divisor), a.twist, k.shifted(a.weight.get(), n), a.shift));
        }
        Generator::PullJ(k) => match a.space {
            Space::X(XOrigin::Divisor) => {
                if k == a.weight {
                    out.push(a.with(Space::Z, a.twist, w0, a.shift));
                } else if k == a.weight.shifted(1, n) {
                    out.push(a.with(Space::Z, a.twist - d, w0, a.shift + 1));
                }
            }
            Space::X(XOrigin::Pullback) => {
                if k == a.weight {
                    out.push(a.with(Space::Z, a.twist, w0, a.shift));
                }
            }
            Space::X(XOrigin::Native) => return Err(no_rule(g, a)),
            _ => return Err(mismatch(g, a)),
        },
        Generator::ShriekJ(k) => match a.space {
            Space::X(XOrigin::Divisor) => {
                if k == a.weight {
                    out.push(a.with(Space::Z, a.twist, w0, a.shift));
                } else if k == a.weight.shifted(-1, n) {
                    out.push(a.with(Space::Z, a.twist + d, w0, a.shift - 1));
                }
            }
            Space::X(XOrigin::Pullback) => {
                if k == a.weight.shifted(-1, n) {
                    out.push(a.with(Space::Z, a.twist + d, w0, a.shift - 1));
                }
            }
            Space::X(XOrigin::Native) => return Err(no_rule(g, a)),
            _ => return Err(mismatch(g, a)),
        },
        Generator::PushI => match (a.space, a.label) {
            (Space::Z, Label::B) => {
                out.push(a.with(Space::Y, a.twist - n * d, a.weight, a.shift + 1));
                out.push(a.with(Space::Y, a.twist, a.weight, a.shift));
            }
            (Space::Z, Label::A) => return Err(no_rule(g, a)),
            _ => return Err(mismatch(g, a)),
        },
        Generator::PullI => {
            if a.space != Space::Y {
                return Err(mismatch(g, a));
            }
            out.push(a.with(Space::Z, a.twist, a.weight, a.shift));
        }
        Generator::Twist(c) => out.push(a.with(a.space, a.twist + c, a.weight, a.shift)),
        Generator::Chi(c) => out.push(a.with(a.space, a.twist, a.weight.shifted(c, n), a.shift)),
        Generator::Shift(s) => out.push(a.with(a.space, a.twist, a.weight, a.shift + s)),
    }
    Ok(())
}

/// Apply a functor word to a formal object, rightmost generator first.
pub fn apply(word: &FunctorWord, x: &FormalObject, p: &Params) -> Result<FormalObject, AdjunctionError> {
    let mut current = x.factors.clone();
    for g in word.generators().iter().rev() {
        let mut next = Vec::with_capacity(current.len());
        for a in &current {
            apply_generator(g, a, p, &mut next)?;
        }
        current = next;
    }
    Ok(FormalObject { factors: current })
}

fn apply1(g: Generator, x: &FormalObject, p: &Params) -> Result<FormalObject, AdjunctionError> {
    let mut out = Vec::with_capacity(x.factors.len());
    for a in &x.factors {
        apply_generator(&g, a, p, &mut out)?;
    }
    Ok(FormalObject { factors: out })
}

fn window(lo: i64, value: i64, hi: i64) -> bool {
    lo <= value && value <= hi
}

/// Hom between two atoms on the same base space.
pub fn base_hom(a: &Atom, b: &Atom, p: &Params) -> Result<HomVerdict, AdjunctionError> {
    if a.space != b.space {
        return Err(AdjunctionError::SpaceMismatch { generator: "Hom".into(), space: b.space });
    }
    match a.space {
        Space::Y => {
            if a.label != Label::B || b.label != Label::B {
                return Err(AdjunctionError::ForbiddenAtom(format!("{a} / {b}")));
            }
            if a.weight != b.weight {
                return Ok(HomVerdict::Zero);
            }
            let diff = a.twist - b.twist;
            Ok(if diff == 0 {
                HomVerdict::Nonzero
            } else if window(1, diff, p.m() - 1) {
                HomVerdict::Zero
            } else {
                HomVerdict::Unknown
            })
        }
        Space::Z => {
            if p.is_boundary() && (a.label == Label::B || b.label == Label::B) {
                return Err(AdjunctionError::BZUndefined);
            }
            if a.weight != b.weight {
                return Ok(HomVerdict::Zero);
            }
            let len = p.z_length();
            let diff = a.twist - b.twist;
            let zero = match (a.label, b.label) {
                (Label::B, Label::B) => {
                    if diff == 0 {
                        return Ok(HomVerdict::Nonzero);
                    }
                    window(1, diff, len - 1)
                }
                (Label::A, Label::B) => window(1, diff, len),
                (Label::B, Label::A) => window(0, diff, len - 1),
                (Label::A, Label::A) => {
                    return Ok(if diff == 0 { HomVerdict::Nonzero } else { HomVerdict::Unknown });
                }
            };
            Ok(if zero { HomVerdict::Zero } else { HomVerdict::Unknown })
        }
        Space::X(_) => Err(AdjunctionError::SpaceMismatch { generator: "Hom".into(), space: a.space }),
    }
}

/// Combine pairwise factor verdicts: all `Zero` gives `Zero`; exactly one
/// `Nonzero` with all others `Zero` gives `Nonzero`; anything else is
/// `Unknown`. Shifts are ignored.
pub fn hom_class(x: &FormalObject, y: &FormalObject, p: &Params) -> Result<HomVerdict, AdjunctionError> {
    let mut nonzero = 0usize;
    let mut unknown = false;
    for a in &x.factors {
        for b in &y.factors {
            match base_hom(a, b, p)? {
                HomVerdict::Zero => {}
                HomVerdict::Nonzero => nonzero += 1,
                HomVerdict::Unknown => unknown = true,
            }
        }
    }
    Ok(match (unknown, nonzero) {
        (false, 0) => HomVerdict::Zero,
        (false, 1) => HomVerdict::Nonzero,
        _ => HomVerdict::Unknown,
    })
}

/// The generating object of a non-composite block together with the route
/// description. `BX(t,k) = PullF(k)·B_Y(t)`, `JZ(t,k) = PushJ(k)·B_Z(t)`,
/// `AZ(t,k) = PushJ(k)·A_Z(t)`.
fn generator_object(b: &Block, p: &Params) -> Result<FormalObject, AdjunctionError> {
    match b {
        Block::Bx { twist, weight } => apply1(Generator::PullF(*weight), &FormalObject::atom(Atom::y(*twist)), p),
        Block::Jz { twist, weight } => {
            apply1(Generator::PushJ(*weight), &FormalObject::atom(Atom::z(Label::B, *twist)), p)
        }
        Block::Az { twist, weight } => {
            apply1(Generator::PushJ(*weight), &FormalObject::atom(Atom::z(Label::A, *twist)), p)
        }
        Block::Axe { twist } => Ok(FormalObject::atom(Atom {
            space: Space::X(XOrigin::Native),
            label: Label::A,
            twist: *twist,
            weight: p.weight(0),
            shift: 0,
        })),
        Block::Phi(_) => Err(AdjunctionError::PhiUnsupported),
        Block::FyFull { .. } | Block::DzFull { .. } => unreachable!("composites are expanded before reduction"),
    }
}

/// One adjunction reduction of a Hom query between non-composite blocks.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub p: Block,
    pub q: Block,
    /// Which adjunction was used, e.g. `Hom_Y(B(r), f_{k*}Q)`.
    pub route: &'static str,
    pub source: FormalObject,
    pub target: FormalObject,
    pub verdict: HomVerdict,
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hom({}, {}) = {} with source {} and target {}: {}",
            self.p, self.q, self.route, self.source, self.target, self.verdict
        )
    }
}

fn reduce_simple(pb: &Block, qb: &Block, p: &Params) -> Result<Reduction, AdjunctionError> {
    let finish = |route: &'static str, source: FormalObject, target: FormalObject, axe: bool| {
        let mut verdict = hom_class(&source, &target, p)?;
        if axe && verdict == HomVerdict::Nonzero {
            verdict = HomVerdict::Unknown;
        }
        Ok(Reduction { p: pb.clone(), q: qb.clone(), route, source, target, verdict })
    };
    let unknown = |route: &'static str| {
        Ok(Reduction {
            p: pb.clone(),
            q: qb.clone(),
            route,
            source: FormalObject::zero(),
            target: FormalObject::zero(),
            verdict: HomVerdict::Unknown,
        })
    };
    let n = p.n();
    let d = p.d();
    if p.is_boundary() && (matches!(pb, Block::Jz { .. }) || matches!(qb, Block::Jz { .. })) {
        return Err(AdjunctionError::BZUndefined);
    }
    match (pb, qb) {
        (Block::Phi(_), _) | (_, Block::Phi(_)) => Err(AdjunctionError::PhiUnsupported),
        (Block::Bx { twist, weight }, Block::Bx { .. }) => {
            let target = apply1(Generator::PushF(*weight), &generator_object(qb, p)?, p)?;
            finish("Hom_Y(B(r), f_{k*} f_l^* B(s))", FormalObject::atom(Atom::y(*twist)), target, false)
        }
        (Block::Bx { twist, weight }, Block::Axe { .. }) => {
            let target = apply1(Generator::PushF(*weight), &generator_object(qb, p)?, p)?;
            finish("Hom_Y(B(r), f_{k*} A_X(a))", FormalObject::atom(Atom::y(*twist)), target, true)
        }
        (_, Block::Jz { twist, weight }) | (_, Block::Az { twist, weight }) => {
            let label = if matches!(qb, Block::Jz { .. }) { Label::B } else { Label::A };
            let source = match apply1(Generator::PullJ(*weight), &generator_object(pb, p)?, p) {
                Ok(s) => s,
                Err(AdjunctionError::NoRule { .. }) => return unknown("Hom_Z(j_l^* P, Q): no rule for P"),
                Err(e) => return Err(e),
            };
            let target = FormalObject::atom(Atom::z(label, *twist));
            finish("Hom_Z(j_l^* P, Q)", source, target, matches!(pb, Block::Axe { .. }))
        }
        (Block::Jz { twist, weight }, Block::Bx { .. }) | (Block::Az { twist, weight }, Block::Bx { .. }) => {
            let label = if matches!(pb, Block::Jz { .. }) { Label::B } else { Label::A };
            let target = apply1(Generator::ShriekJ(*weight), &generator_object(qb, p)?, p)?;
            finish("Hom_Z(P, j_k^! f_l^* B(s))", FormalObject::atom(Atom::z(label, *twist)), target, false)
        }
        (Block::Axe { .. }, Block::Bx { twist, weight }) => {
            // f_l^* B(s) = f_l^! B(s − (n−1)d); f_{l*} is left adjoint to f_l^!.
            let source = apply1(Generator::PushF(*weight), &generator_object(pb, p)?, p)?;
            let target = FormalObject::atom(Atom::y(twist - (n - 1) * d));
            finish("Hom_Y(f_{l*} A_X(a), B(s − (n−1)d))", source, target, true)
        }
        (Block::Axe { twist: a }, Block::Axe { twist: b }) => Ok(Reduction {
            p: pb.clone(),
            q: qb.clone(),
            route: "identity on A_X",
            source: FormalObject::zero(),
            target: FormalObject::zero(),
            verdict: if a == b { HomVerdict::Nonzero } else { HomVerdict::Unknown },
        }),
        (Block::Jz { .. } | Block::Az { .. }, Block::Axe { .. }) => unknown("Hom(j_{k*}P, A_X): no rule"),
        (Block::FyFull { .. } | Block::DzFull { .. }, _) | (_, Block::FyFull { .. } | Block::DzFull { .. }) => {
            unreachable!("composites are expanded before reduction")
        }
    }
}

/// All reductions needed for `Hom(P, Q)`; composites contribute one
/// reduction per expansion pair.
pub fn reduce(pb: &Block, qb: &Block, p: &Params) -> Result<Vec<Reduction>, AdjunctionError> {
    let ps = pb.expansion(p).unwrap_or_else(|| vec![pb.clone()]);
    let qs = qb.expansion(p).unwrap_or_else(|| vec![qb.clone()]);
    let mut out = Vec::with_capacity(ps.len() * qs.len());
    for x in &ps {
        for y in &qs {
            out.push(reduce_simple(x, y, p)?);
        }
    }
    Ok(out)
}

/// `Hom(P, Q)` between blocks, derived by adjunction. Composite blocks
/// give `Zero` iff every expansion pair is `Zero`, `Nonzero` if some pair
/// is `Nonzero`, and `Unknown` otherwise.
pub fn block_hom(pb: &Block, qb: &Block, p: &Params) -> Result<HomVerdict, AdjunctionError> {
    if !pb.is_composite() && !qb.is_composite() {
        return reduce_simple(pb, qb, p).map(|r| r.verdict);
    }
    let ps = pb.expansion(p).unwrap_or_else(|| vec![pb.clone()]);
    let qs = qb.expansion(p).unwrap_or_else(|| vec![qb.clone()]);
    let mut all_zero = true;
    let mut any_nonzero = false;
    for x in &ps {
        for y in &qs {
            match reduce_simple(x, y, p)?.verdict {
                HomVerdict::Zero => {}
                HomVerdict::Nonzero => {
                    any_nonzero = true;
                    all_zero = false;
                }
                HomVerdict::Unknown => all_zero = false,
            }
        }
    }
    Ok(if all_zero {
        HomVerdict::Zero
    } else if any_nonzero {
        HomVerdict::Nonzero
    } else {
        HomVerdict::Unknown
    })
}

/// [`VanishingOracle`] backed by [`block_hom`].
#[derive(Debug, Clone, Copy)]
pub struct AdjunctionOracle {
    pub params: Params,
}

impl AdjunctionOracle {
    pub fn new(params: Params) -> Self {
        AdjunctionOracle { params }
    }
}

impl VanishingOracle for AdjunctionOracle {
    fn certifies_zero(&self, p: &Block, q: &Block) -> bool {
        matches!(block_hom(p, q, &self.params), Ok(HomVerdict::Zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: i64, d: i64, m: i64) -> Params {
        Params::new(n, d, m).unwrap()
    }

    fn word(gens: Vec<Generator>) -> FunctorWord {
        FunctorWord::new(gens)
    }

    #[test]
    fn pull_j_after_push_j_on_the_next_weight_shifts_and_twists() {
        let p = params(3, 1, 5);
        let x = FormalObject::atom(Atom::z(Label::B, 2));
        let y = apply(&word(vec![Generator::PullJ(p.weight(1)), Generator::PushJ(p.weight(0))]), &x, &p).unwrap();
        assert_eq!(y.factors.len(), 1);
        assert_eq!((y.factors[0].space, y.factors[0].twist, y.factors[0].shift), (Space::Z, 1, 1));
    }

    #[test]
    fn push_f_after_pull_f_uses_the_weight_difference() {
        let p = params(3, 1, 5);
        let y = apply(
            &word(vec![Generator::PushF(p.weight(2)), Generator::PullF(p.weight(0))]),
            &FormalObject::atom(Atom::y(5)),
            &p,
        )
        .unwrap();
        assert_eq!(y.factors.len(), 1);
        assert_eq!((y.factors[0].space, y.factors[0].twist), (Space::Y, 3));
    }

    #[test]
    fn pull_j_two_steps_away_is_zero() {
        let p = params(3, 1, 5);
        for label in [Label::A, Label::B] {
            for t in -3..6 {
                let y = apply(
                    &word(vec![Generator::PullJ(p.weight(2)), Generator::PushJ(p.weight(0))]),
                    &FormalObject::atom(Atom::z(label, t)),
                    &p,
                )
                .unwrap();
                assert!(y.is_zero());
            }
        }
    }

    #[test]
    fn shriek_f_is_pullback_twisted() {
        let p = params(2, 2, 4);
        let y = apply(&word(vec![Generator::ShriekF(p.weight(0))]), &FormalObject::atom(Atom::y(0)), &p).unwrap();
        assert_eq!(y.factors[0].twist, 2);
        assert_eq!(y.factors[0].space, Space::X(XOrigin::Pullback));
    }

    #[test]
    fn divisor_filtration() {
        let p = params(2, 1, 4);
        let y = apply(&word(vec![Generator::PushI, Generator::PullI]), &FormalObject::atom(Atom::y(2)), &p).unwrap();
        let got: Vec<(i64, i64)> = y.factors.iter().map(|a| (a.twist, a.shift)).collect();
        assert_eq!(got, [(0, 1), (2, 0)]);
    }

    #[test]
    fn space_mismatch_is_reported() {
        let p = params(2, 1, 4);
        let err = apply(&word(vec![Generator::PushJ(p.weight(0))]), &FormalObject::atom(Atom::y(0)), &p).unwrap_err();
        assert!(matches!(err, AdjunctionError::SpaceMismatch { .. }));
        assert!(Atom::new(Space::Y, Label::A, 0, p.weight(0), 0).is_err());
    }

    #[test]
    fn base_windows() {
        let p = params(2, 1, 4);
        assert_eq!(base_hom(&Atom::y(3), &Atom::y(1), &p).unwrap(), HomVerdict::Zero);
        assert_eq!(base_hom(&Atom::y(1), &Atom::y(3), &p).unwrap(), HomVerdict::Unknown);
        assert_eq!(base_hom(&Atom::y(1), &Atom::y(1), &p).unwrap(), HomVerdict::Nonzero);
        assert_eq!(base_hom(&Atom::z(Label::A, 1), &Atom::z(Label::B, 1), &p).unwrap(), HomVerdict::Unknown);
        assert_eq!(base_hom(&Atom::z(Label::B, 2), &Atom::z(Label::A, 1), &p).unwrap(), HomVerdict::Zero);

        let boundary = params(2, 2, 4);
        assert_eq!(
            base_hom(&Atom::z(Label::B, 0), &Atom::z(Label::A, 0), &boundary),
            Err(AdjunctionError::BZUndefined)
        );
        assert_eq!(base_hom(&Atom::z(Label::A, 0), &Atom::z(Label::A, 0), &boundary).unwrap(), HomVerdict::Nonzero);
    }

    #[test]
    fn z_window_for_a_against_b_matches_the_twisted_family() {
        // Oracle: A_Z(t) sits in ⟨B_Z(0..t−1), A_Z(t), B_Z(t..L−1)⟩ for 0 ≤ t ≤ L.
        // Vanishing known from some placement, translated by any common twist.
        for (n, d, m) in [(2, 1, 4), (2, 1, 7), (3, 1, 8), (2, 2, 9)] {
            let p = params(n, d, m);
            let len = p.z_length();
            for a in -6i64..10 {
                for u in -6i64..10 {
                    let mut b_after_a = false;
                    let mut a_after_b = false;
                    for t in 0..=len {
                        for shift in -20i64..20 {
                            if a != t + shift {
                                continue;
                            }
                            let pos = u - shift;
                            if (0..t).contains(&pos) {
                                a_after_b = true;
                            }
                            if (t..len).contains(&pos) {
                                b_after_a = true;
                            }
                        }
                    }
                    let ab = base_hom(&Atom::z(Label::A, a), &Atom::z(Label::B, u), &p).unwrap();
                    let ba = base_hom(&Atom::z(Label::B, u), &Atom::z(Label::A, a), &p).unwrap();
                    assert_eq!(ab == HomVerdict::Zero, a_after_b, "Hom(A({a}), B({u})) for {p}");
                    assert_eq!(ba == HomVerdict::Zero, b_after_a, "Hom(B({u}), A({a})) for {p}");
                }
            }
        }
    }

    #[test]
    fn hom_class_combination() {
        let p = params(2, 1, 4);
        let x = FormalObject::atom(Atom::y(2));
        let y = apply(&word(vec![Generator::PushI, Generator::PullI]), &x, &p).unwrap();
        assert_eq!(hom_class(&x, &y, &p).unwrap(), HomVerdict::Nonzero);
        assert_eq!(hom_class(&FormalObject::atom(Atom::y(1)), &FormalObject::atom(Atom::y(0)), &p).unwrap(), HomVerdict::Zero);
        assert_eq!(hom_class(&FormalObject::atom(Atom::y(0)), &FormalObject::atom(Atom::y(0)), &p).unwrap(), HomVerdict::Nonzero);
        assert_eq!(hom_class(&FormalObject::zero(), &y, &p).unwrap(), HomVerdict::Zero);
        let two = FormalObject { factors: vec![Atom::y(0), Atom::y(0)] };
        assert_eq!(hom_class(&two, &FormalObject::atom(Atom::y(0)), &p).unwrap(), HomVerdict::Unknown);
    }

    #[test]
    fn block_level_examples() {
        let p = params(3, 1, 5);
        assert_eq!(block_hom(&Block::dz(p.weight(1)), &Block::dz(p.weight(0)), &p).unwrap(), HomVerdict::Zero);

        let p = params(2, 1, 4);
        let w0 = p.weight(0);
        let w1 = p.weight(1);
        assert_eq!(block_hom(&Block::bx(1, w0), &Block::bx(0, w0), &p).unwrap(), HomVerdict::Zero);
        // Hom(f_0^*, j_{1*}) vanishes; the (sofj) non-vanishing direction is the reverse.
        assert_eq!(block_hom(&Block::fy(w0), &Block::dz(w1), &p).unwrap(), HomVerdict::Zero);
        assert_ne!(block_hom(&Block::dz(w1), &Block::fy(w0), &p).unwrap(), HomVerdict::Zero);
        assert_eq!(
            block_hom(&Block::phi(w0, Default::default(), None), &Block::bx(0, w0), &p),
            Err(AdjunctionError::PhiUnsupported)
        );
    }
}
