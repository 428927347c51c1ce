//! Closed-form vanishing windows.
//!
//! Each rule is pure index arithmetic on `Hom(P, Q)`. The rules are required
//! to agree exactly with the adjunction engine; [`crosscheck`] enforces this.

use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use sodcalc_core::adjunction::{block_hom, AdjunctionError};
use sodcalc_core::{Block, HomVerdict, Params, VanishingOracle};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vanishing {
    Guaranteed,
    NotGuaranteed,
}

impl fmt::Display for Vanishing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Vanishing::Guaranteed => "Guaranteed",
            Vanishing::NotGuaranteed => "NotGuaranteed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("PHI blocks are provenance-only")]
    PhiBlockUnsupported,
    #[error("B_Z is undefined when m = nd")]
    BZUndefined,
    #[error("Hom({0}, {1}) is not guaranteed to vanish: {2}")]
    NotGuaranteedNoExplanation(String, String, String),
}

/// The rule that decided a query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Judgement {
    pub vanishing: Vanishing,
    /// Rule family, e.g. `sojf: k ≠ ℓ` or `Lefschetz window on Y`.
    pub rule: String,
    /// The instantiated condition, e.g. `Y window 1 ≤ 1 ≤ 3`.
    pub detail: String,
}

impl Judgement {
    fn new(ok: bool, rule: impl Into<String>, detail: impl Into<String>) -> Self {
        Judgement {
            vanishing: if ok { Vanishing::Guaranteed } else { Vanishing::NotGuaranteed },
            rule: rule.into(),
            detail: detail.into(),
        }
    }

    pub fn is_guaranteed(&self) -> bool {
        self.vanishing == Vanishing::Guaranteed
    }

    /// Citation string recorded in traces.
    pub fn citation(&self) -> String {
        if self.detail.is_empty() {
            self.rule.clone()
        } else {
            format!("{}: {}", self.rule, self.detail)
        }
    }
}

fn within(lo: i64, x: i64, hi: i64) -> bool {
    lo <= x && x <= hi
}

fn window_detail(prefix: &str, lo: i64, expr: &str, x: i64, hi: i64) -> String {
    if within(lo, x, hi) {
        format!("{prefix}{lo} ≤ {expr}{x} ≤ {hi}")
    } else {
        format!("{prefix}{expr}{x} ∉ [{lo}, {hi}]")
    }
}

fn judge_simple(pb: &Block, qb: &Block, p: &Params) -> Result<Judgement, WindowError> {
    let n = p.n();
    let d = p.d();
    let m = p.m();
    let big_m = p.big_m();
    let len = big_m - d;
    if p.is_boundary() && (matches!(pb, Block::Jz { .. }) || matches!(qb, Block::Jz { .. })) {
        return Err(WindowError::BZUndefined);
    }
    // `next(k) == l` iff l = k + 1 mod n.
    let next = |k: sodcalc_core::Weight| k.shifted(1, n);
    Ok(match (pb, qb) {
        (Block::Phi(_), _) | (_, Block::Phi(_)) => return Err(WindowError::PhiBlockUnsupported),
        (Block::Bx { twist: r, weight: k }, Block::Bx { twist: s, weight: l }) => {
            let a = k.diff(*l, n);
            let x = r - s + a * d;
            Judgement::new(
                within(1, x, m - 1),
                "Lefschetz window on Y",
                window_detail("Y window ", 1, "", x, m - 1),
            )
        }
        (Block::Jz { twist: r, weight: k }, Block::Jz { twist: s, weight: l }) => {
            if l == k {
                let x = r - s;
                Judgement::new(within(1, x, len - 1), "Z-window, k=l branch", window_detail("", 1, "r−s = ", x, len - 1))
            } else if *l == next(*k) {
                let x = r - d - s;
                Judgement::new(
                    within(1, x, len - 1),
                    "Z-window, l=k+1 branch",
                    window_detail("", 1, "r−d−s = ", x, len - 1),
                )
            } else {
                Judgement::new(true, "sojj: k ≠ ℓ, ℓ+1", "")
            }
        }
        (Block::Jz { twist: r, weight: k }, Block::Az { twist: a, weight: l }) => {
            if l == k {
                let x = r - a;
                Judgement::new(within(0, x, len - 1), "Z-window, k=l branch", window_detail("", 0, "r−a = ", x, len - 1))
            } else if *l == next(*k) {
                let x = r - d - a;
                Judgement::new(
                    within(0, x, len - 1),
                    "Z-window, l=k+1 branch",
                    window_detail("", 0, "r−d−a = ", x, len - 1),
                )
            } else {
                Judgement::new(true, "sojj: k ≠ ℓ, ℓ+1", "")
            }
        }
        (Block::Az { twist: a, weight: k }, Block::Jz { twist: r, weight: l }) => {
            if l == k {
                let x = a - r;
                Judgement::new(within(1, x, len), "Z-window, k=l branch", window_detail("", 1, "a−r = ", x, len))
            } else if *l == next(*k) {
                let x = a - d - r;
                Judgement::new(within(1, x, len), "Z-window, l=k+1 branch", window_detail("", 1, "a−d−r = ", x, len))
            } else {
                Judgement::new(true, "sojj: k ≠ ℓ, ℓ+1", "")
            }
        }
        (Block::Az { weight: k, .. }, Block::Az { weight: l, .. }) => {
            if l == k || *l == next(*k) {
                Judgement::new(false, "A_Z against A_Z", "no window is known")
            } else {
                Judgement::new(true, "sojj: k ≠ ℓ, ℓ+1", "")
            }
        }
        (Block::Bx { twist: s, weight: l }, Block::Jz { twist: r, weight: k }) => {
            if k != l {
                Judgement::new(true, "sojf: k ≠ ℓ", "")
            } else {
                let x = s - r;
                let ok = within(1, x, len - 1);
                let rule = if ok { "Z-window, k=l branch" } else { "k = ℓ branch of (sojf)" };
                Judgement::new(ok, rule, window_detail("", 1, "s−r = ", x, len - 1))
            }
        }
        (Block::Bx { twist: s, weight: l }, Block::Az { twist: a, weight: k }) => {
            if k != l {
                Judgement::new(true, "sojf: k ≠ ℓ", "")
            } else {
                let x = s - a;
                let ok = within(0, x, len - 1);
                let rule = if ok { "Z-window, k=l branch" } else { "k = ℓ branch of (sojf)" };
                Judgement::new(ok, rule, window_detail("", 0, "s−a = ", x, len - 1))
            }
        }
        (Block::Jz { twist: r, weight: k }, Block::Bx { twist: s, weight: l }) => {
            if *l != next(*k) {
                Judgement::new(true, "sofj: k ≠ ℓ−1", "")
            } else {
                let x = r - s - d;
                let ok = within(1, x, len - 1);
                let rule = if ok { "Z-window, k=ℓ−1 branch" } else { "k = ℓ−1 branch of (sofj)" };
                Judgement::new(ok, rule, window_detail("", 1, "r−s−d = ", x, len - 1))
            }
        }
        (Block::Az { twist: a, weight: k }, Block::Bx { twist: s, weight: l }) => {
            if *l != next(*k) {
                Judgement::new(true, "sofj: k ≠ ℓ−1", "")
            } else {
                let x = a - s - d;
                let ok = within(1, x, len);
                let rule = if ok { "Z-window, k=ℓ−1 branch" } else { "k = ℓ−1 branch of (sofj)" };
                Judgement::new(ok, rule, window_detail("", 1, "a−s−d = ", x, len))
            }
        }
        (Block::Bx { twist: u, .. }, Block::Axe { twist: a }) => {
            let x = u - a;
            Judgement::new(within(0, x, big_m - 1), "A_X window", window_detail("", 0, "u−a = ", x, big_m - 1))
        }
        (Block::Axe { twist: a }, Block::Bx { twist: u, .. }) => {
            let x = a - u;
            Judgement::new(within(1, x, big_m), "A_X window", window_detail("", 1, "a−u = ", x, big_m))
        }
        (Block::Axe { .. }, _) | (_, Block::Axe { .. }) => Judgement::new(false, "A_X", "no window is known"),
        (Block::FyFull { .. } | Block::DzFull { .. }, _) | (_, Block::FyFull { .. } | Block::DzFull { .. }) => {
            unreachable!("composites are handled by judge")
        }
    })
}

/// Composite rules: the divisor rules for whole components, otherwise the
/// verdict over the expansion.
fn composite_rule(pb: &Block, qb: &Block, p: &Params) -> Option<&'static str> {
    let n = p.n();
    match (pb, qb) {
        (Block::DzFull { weight: k }, Block::DzFull { weight: l }) if *l != *k && *l != k.shifted(1, n) => {
            Some("sojj: k ≠ ℓ, ℓ+1")
        }
        (Block::FyFull { weight: l } | Block::Bx { weight: l, .. }, Block::DzFull { weight: k }) if k != l => {
            Some("sojf: k ≠ ℓ")
        }
        (Block::FyFull { weight: l }, Block::Jz { weight: k, .. } | Block::Az { weight: k, .. }) if k != l => {
            Some("sojf: k ≠ ℓ")
        }
        (Block::DzFull { weight: k }, Block::FyFull { weight: l } | Block::Bx { weight: l, .. })
            if *l != k.shifted(1, n) =>
        {
            Some("sofj: k ≠ ℓ−1")
        }
        (Block::Jz { weight: k, .. } | Block::Az { weight: k, .. }, Block::FyFull { weight: l })
            if *l != k.shifted(1, n) =>
        {
            Some("sofj: k ≠ ℓ−1")
        }
        _ => None,
    }
}

/// Decide `Hom(P, Q) = 0` by the closed-form rules, with the firing rule.
pub fn judge(pb: &Block, qb: &Block, p: &Params) -> Result<Judgement, WindowError> {
    if !pb.is_composite() && !qb.is_composite() {
        return judge_simple(pb, qb, p);
    }
    if pb.is_phi() || qb.is_phi() {
        return Err(WindowError::PhiBlockUnsupported);
    }
    let ps = pb.expansion(p).unwrap_or_else(|| vec![pb.clone()]);
    let qs = qb.expansion(p).unwrap_or_else(|| vec![qb.clone()]);
    let mut count = 0usize;
    for x in &ps {
        for y in &qs {
            let j = judge_simple(x, y, p)?;
            if !j.is_guaranteed() {
                return Ok(Judgement {
                    vanishing: Vanishing::NotGuaranteed,
                    rule: j.rule,
                    detail: format!("at Hom({x}, {y}): {}", j.detail),
                });
            }
            count += 1;
        }
    }
    Ok(match composite_rule(pb, qb, p) {
        Some(rule) => Judgement::new(true, rule, ""),
        None => Judgement::new(true, "expansion", format!("all {count} component pairs vanish")),
    })
}

/// Closed-form verdict for `Hom(P, Q)`.
pub fn vanishes(pb: &Block, qb: &Block, p: &Params) -> Result<Vanishing, WindowError> {
    judge(pb, qb, p).map(|j| j.vanishing)
}

/// Citation for a guaranteed vanishing.
pub fn explain(pb: &Block, qb: &Block, p: &Params) -> Result<String, WindowError> {
    let j = judge(pb, qb, p)?;
    if j.is_guaranteed() {
        Ok(j.citation())
    } else {
        Err(WindowError::NotGuaranteedNoExplanation(pb.to_string(), qb.to_string(), j.citation()))
    }
}

/// [`VanishingOracle`] backed by the closed-form rules.
#[derive(Debug, Clone, Copy)]
pub struct WindowOracle {
    pub params: Params,
}

impl WindowOracle {
    pub fn new(params: Params) -> Self {
        WindowOracle { params }
    }
}

impl VanishingOracle for WindowOracle {
    fn certifies_zero(&self, p: &Block, q: &Block) -> bool {
        matches!(vanishes(p, q, &self.params), Ok(Vanishing::Guaranteed))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub p: Block,
    pub q: Block,
    pub window: Result<Vanishing, WindowError>,
    pub adjunction: Result<HomVerdict, AdjunctionError>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom({}, {}): window {:?}, adjunction {:?}", self.p, self.q, self.window, self.adjunction)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub pairs: usize,
    /// Pairs skipped because the adjunction engine reports `B_Z` undefined.
    pub skipped_bz: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrosscheckReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Every non-`PHI` block with twist in range, plus all composites.
pub fn all_blocks(p: &Params, twists: RangeInclusive<i64>) -> Vec<Block> {
    let mut out = Vec::new();
    for k in p.weights() {
        out.push(Block::fy(k));
        out.push(Block::dz(k));
    }
    for t in twists {
        out.push(Block::axe(t));
        for k in p.weights() {
            out.push(Block::bx(t, k));
            out.push(Block::jz(t, k));
            out.push(Block::az(t, k));
        }
    }
    out
}

/// Compare the window rules with the adjunction engine on every ordered
/// pair of blocks from [`all_blocks`]. `Guaranteed` must coincide with
/// `Zero`. Queries the adjunction engine cannot answer because `B_Z` is
/// undefined are counted and skipped.
pub fn crosscheck(p: &Params, twists: RangeInclusive<i64>) -> CrosscheckReport {
    let blocks = all_blocks(p, twists);
    let rows: Vec<CrosscheckReport> = blocks
        .par_iter()
        .map(|x| {
            let mut rep = CrosscheckReport::default();
            for y in &blocks {
                rep.pairs += 1;
                let adj = block_hom(x, y, p);
                if matches!(adj, Err(AdjunctionError::BZUndefined)) {
                    rep.skipped_bz += 1;
                    continue;
                }
                let win = vanishes(x, y, p);
                let agree = match (&win, &adj) {
                    (Ok(v), Ok(h)) => (*v == Vanishing::Guaranteed) == (*h == HomVerdict::Zero),
                    _ => false,
                };
                if !agree {
                    rep.mismatches.push(Mismatch { p: x.clone(), q: y.clone(), window: win, adjunction: adj });
                }
            }
            rep
        })
        .collect();
    let mut total = CrosscheckReport::default();
    for r in rows {
        total.pairs += r.pairs;
        total.skipped_bz += r.skipped_bz;
        total.mismatches.extend(r.mismatches);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: i64, d: i64, m: i64) -> Params {
        Params::new(n, d, m).unwrap()
    }

    #[test]
    fn bx_windows() {
        let p = params(2, 2, 4);
        let (w0, w1) = (p.weight(0), p.weight(1));
        assert_eq!(vanishes(&Block::bx(0, w1), &Block::bx(0, w0), &p).unwrap(), Vanishing::Guaranteed);
        let p = params(2, 1, 4);
        let w0 = p.weight(0);
        assert_eq!(vanishes(&Block::bx(0, w0), &Block::bx(1, w0), &p).unwrap(), Vanishing::NotGuaranteed);
        assert_eq!(explain(&Block::bx(1, w0), &Block::bx(0, w0), &p).unwrap(), "Lefschetz window on Y: Y window 1 ≤ 1 ≤ 3");
    }

    #[test]
    fn divisor_citations() {
        let p = params(3, 1, 5);
        assert_eq!(explain(&Block::dz(p.weight(1)), &Block::dz(p.weight(0)), &p).unwrap(), "sojj: k ≠ ℓ, ℓ+1");
        let p = params(2, 1, 4);
        let w0 = p.weight(0);
        assert!(explain(&Block::bx(2, w0), &Block::jz(1, w0), &p).unwrap().starts_with("Z-window, k=l branch"));
    }

    #[test]
    fn az_against_bx_for_the_whole_window() {
        let p = params(3, 1, 7);
        let k = p.weight(1);
        for s in p.d()..p.big_m() {
            assert!(WindowOracle::new(p).certifies_zero(&Block::bx(s, k), &Block::az(p.d(), k)));
        }
    }

    #[test]
    fn not_guaranteed_names_the_branch() {
        let p = params(3, 1, 5);
        let j = judge(&Block::bx(4, p.weight(0)), &Block::dz(p.weight(0)), &p).unwrap();
        assert_eq!(j.vanishing, Vanishing::NotGuaranteed);
        assert_eq!(j.rule, "k = ℓ branch of (sojf)");
        assert!(matches!(
            explain(&Block::bx(4, p.weight(0)), &Block::dz(p.weight(0)), &p),
            Err(WindowError::NotGuaranteedNoExplanation(..))
        ));
    }

    #[test]
    fn boundary_and_phi_errors() {
        let p = params(2, 2, 4);
        let w0 = p.weight(0);
        assert_eq!(vanishes(&Block::jz(2, w0), &Block::bx(0, w0), &p), Err(WindowError::BZUndefined));
        let phi = Block::phi(w0, Default::default(), None);
        assert_eq!(vanishes(&phi, &Block::bx(0, w0), &p), Err(WindowError::PhiBlockUnsupported));
    }

    #[test]
    fn weight_columns_are_orthogonal_on_d_twists() {
        for (n, d, m) in [(2, 2, 4), (3, 2, 7), (4, 3, 12)] {
            let p = params(n, d, m);
            let o = WindowOracle::new(p);
            for k in p.weights() {
                for l in p.weights() {
                    if k == l {
                        continue;
                    }
                    for r in 0..d {
                        for s in 0..d {
                            assert!(o.completely_orthogonal(&Block::bx(r, k), &Block::bx(s, l)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn small_crosscheck() {
        let p = params(2, 1, 4);
        let rep = crosscheck(&p, -4..=8);
        assert!(rep.is_clean(), "{:?}", rep.mismatches.first());
        let p = params(2, 2, 4);
        let rep = crosscheck(&p, -4..=8);
        assert!(rep.is_clean(), "{:?}", rep.mismatches.first());
        assert!(rep.skipped_bz > 0);
    }
}
