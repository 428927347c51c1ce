//! Scripted proofs built from the mutation rules, plus the named presets.

use std::fmt;
use std::str::FromStr;

use sodcalc_core::block::grid;
use sodcalc_core::{
    count_atoms, sod_equiv, AtomCounts, Block, Generator, Params, ParamsError, PhiFactor, PhiWord, Sod, SodError,
    Trace, TraceHeader, TraceStep, VanishingOracle,
};
use thiserror::Error;

use crate::mutation::{simplified_word, MutationError, Session};
use crate::window::WindowOracle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DriverError {
    #[error("step {step} failed: {source}")]
    Step { step: usize, source: MutationError },
    #[error("block {0} not found")]
    MissingBlock(String),
    #[error("rotated decomposition {k} failed certification: {source}")]
    CertificationFailed { k: i64, source: SodError },
    #[error("final shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("count mismatch: {0}")]
    CountMismatch(String),
    #[error("C_{k} induction failed: {reason}")]
    InductionStepFailed { k: i64, reason: String },
    #[error("relabeling of PHI({k}) failed: expected {expected}, got {got}")]
    RelabelMismatch { k: i64, expected: String, got: String },
    #[error("invalid preset: {0}")]
    InvalidPreset(String),
    #[error(transparent)]
    Params(#[from] ParamsError),
}

fn step_err(sess: &Session) -> impl Fn(MutationError) -> DriverError + '_ {
    move |source| DriverError::Step { step: sess.trace().steps.len(), source }
}

fn find(sess: &Session, b: &Block) -> Result<usize, DriverError> {
    sess.position(b).ok_or_else(|| DriverError::MissingBlock(b.to_string()))
}

/// The `n` rotated decompositions
/// `⟨j_{k+1*}D^b(Z), …, j_{n−1*}D^b(Z), f_0^*D^b(Y), j_{0*}D^b(Z), …, j_{k−1*}D^b(Z)⟩`,
/// each certified pairwise by `oracle`.
pub fn enumerate_cover_sods_with(p: &Params, oracle: &dyn VanishingOracle) -> Result<Vec<Sod>, DriverError> {
    let n = p.n();
    let mut out = Vec::with_capacity(n as usize);
    for k in 0..n {
        let mut blocks: Vec<Block> = (k + 1..n).map(|j| Block::dz(p.weight(j))).collect();
        blocks.push(Block::fy(p.weight(0)));
        blocks.extend((0..k).map(|j| Block::dz(p.weight(j))));
        let sod = Sod::new(*p, blocks).map_err(|source| DriverError::CertificationFailed { k, source })?;
        sod.certify(oracle).map_err(|source| DriverError::CertificationFailed { k, source })?;
        out.push(sod);
    }
    Ok(out)
}

pub fn enumerate_cover_sods(p: &Params) -> Result<Vec<Sod>, DriverError> {
    enumerate_cover_sods_with(p, &WindowOracle::new(*p))
}

/// Move `JZ(t,k)` left by identity mutations until it meets `BX(t,k)`,
/// then transform.
fn mutate_jz_home(sess: &mut Session, jz: &Block) -> Result<(), DriverError> {
    let target = match jz {
        Block::Jz { twist, weight } => Block::bx(*twist, *weight),
        other => return Err(DriverError::MissingBlock(other.to_string())),
    };
    loop {
        let i = find(sess, jz)?;
        if i == 0 {
            return Err(DriverError::MissingBlock(target.to_string()));
        }
        let transform = sess.sod().blocks()[i - 1] == target;
        sess.left_mutate(i).map_err(step_err(sess))?;
        if transform {
            return Ok(());
        }
    }
}

/// Left mutate the column `JZ^k([d, M−1])` into the blocks on its left.
fn induct_column(sess: &mut Session, k: i64) -> Result<(), DriverError> {
    let p = *sess.sod().params();
    for t in p.d()..p.big_m() {
        mutate_jz_home(sess, &Block::jz(t, p.weight(k)))?;
    }
    Ok(())
}

/// Insertion sort of `blocks[lo..hi]` into grid order by orthogonal swaps.
fn sort_range(sess: &mut Session, lo: usize, hi: usize) -> Result<(), DriverError> {
    for idx in lo + 1..hi {
        let mut j = idx;
        while j > lo && sess.sod().blocks()[j - 1].canonical_key() > sess.sod().blocks()[j].canonical_key() {
            sess.swap(j - 1).map_err(step_err(sess))?;
            j -= 1;
        }
    }
    Ok(())
}

/// Outcome of a main-theorem replay.
#[derive(Debug, Clone)]
pub struct Replay {
    pub final_sod: Sod,
    pub trace: Trace,
    pub initial_counts: AtomCounts,
    pub final_counts: AtomCounts,
    /// Swaps witnessing that the non-`PHI` tail is equivalent to the grid.
    pub witness_swaps: usize,
}

impl Replay {
    pub fn phi_blocks(&self) -> &[Block] {
        let lead = self.final_sod.blocks().iter().take_while(|b| b.is_phi()).count();
        &self.final_sod.blocks()[..lead]
    }
}

/// Mechanical replay of the main theorem's proof.
pub fn replay_main(p: &Params) -> Result<Replay, DriverError> {
    let n = p.n();
    let d = p.d();
    let m = p.m();
    let big_m = p.big_m();
    let initial = Sod::new(*p, TraceHeader::new(*p).initial_blocks()).map_err(|e| DriverError::Step {
        step: 0,
        source: MutationError::Sod(e),
    })?;
    let initial_counts = count_atoms(&initial);
    let mut sess = Session::new(initial);

    sess.expand(0).map_err(step_err(&sess))?;

    // Step 1: the group B_X^0([m−ad, m−ad+d−1]) passes DZ(0), …, DZ(n−a−1).
    for a in 1..n {
        let group: Vec<i64> = (m - a * d..m - a * d + d).collect();
        for j in 0..n - a {
            for &t0 in group.iter().rev() {
                let i = find(&sess, &Block::bx(t0 - j * d, p.weight(j)))?;
                sess.right_mutate(i).map_err(step_err(&sess))?;
            }
        }
    }

    // Step 2.
    for k in 0..n - 1 {
        let i = find(&sess, &Block::dz(p.weight(k)))?;
        sess.expand(i).map_err(step_err(&sess))?;
    }

    // Step 3.
    for k in 0..n - 1 {
        let az = Block::az(d, p.weight(k));
        if k >= 1 {
            induct_column(&mut sess, k - 1)?;
            let hi = find(&sess, &az)?;
            sort_range(&mut sess, k as usize, hi)?;
        }
        let i = find(&sess, &az)?;
        sess.form_phi(i).map_err(step_err(&sess))?;
    }
    induct_column(&mut sess, n - 2)?;
    let len = sess.sod().len();
    sort_range(&mut sess, (n - 1) as usize, len)?;

    for k in 0..n - 1 {
        sess.simplify_phi(k as usize).map_err(step_err(&sess))?;
    }

    let (final_sod, trace) = sess.into_parts();
    let witness_swaps = check_final_shape(&final_sod)?;
    let final_counts = count_atoms(&final_sod);
    let expected_b = n * m - n * (n - 1) * d;
    if expected_b != n * big_m {
        return Err(DriverError::CountMismatch(format!("nm − n(n−1)d = {expected_b} ≠ nM = {}", n * big_m)));
    }
    for (label, c) in [("initial", initial_counts), ("final", final_counts)] {
        if c.b_type != expected_b || c.a_type != n - 1 {
            return Err(DriverError::CountMismatch(format!(
                "{label} counts {{b: {}, a: {}}}, expected {{b: {expected_b}, a: {}}}",
                c.b_type,
                c.a_type,
                n - 1
            )));
        }
    }
    Ok(Replay { final_sod, trace, initial_counts, final_counts, witness_swaps })
}

/// Check `[PHI(0), …, PHI(n−2)]` followed by blocks equivalent to the grid
/// `B_X^{[0,n−1]}([0,M−1])`. Returns the witness length.
pub fn check_final_shape(s: &Sod) -> Result<usize, DriverError> {
    let p = *s.params();
    let phis = (p.n() - 1) as usize;
    if s.len() < phis {
        return Err(DriverError::ShapeMismatch(format!("too short: {s}")));
    }
    for (k, b) in s.blocks()[..phis].iter().enumerate() {
        let expected = Block::phi(p.weight(k as i64), simplified_word(&p, p.weight(k as i64)), None);
        if *b != expected {
            return Err(DriverError::ShapeMismatch(format!("block {k} is {}, expected {}", b.to_full_string(), expected.to_full_string())));
        }
    }
    let tail = Sod::new(p, s.blocks()[phis..].to_vec())
        .map_err(|e| DriverError::ShapeMismatch(e.to_string()))?;
    let target = Sod::new(p, grid(&p, 0..=p.big_m() - 1, 0..=p.n() - 1)).expect("grid has no duplicates");
    match sod_equiv(&tail, &target, &WindowOracle::new(p)) {
        Ok(Some(w)) => Ok(w.swaps.len()),
        Ok(None) => Err(DriverError::ShapeMismatch(format!("{tail} is not equivalent to the grid"))),
        Err(e) => Err(DriverError::ShapeMismatch(e.to_string())),
    }
}

/// Result of a standalone `C_k` induction.
#[derive(Debug, Clone)]
pub struct CkReport {
    pub k: i64,
    pub steps: Vec<TraceStep>,
    pub initial: Sod,
    pub transforms: usize,
    pub identities: usize,
    /// `m = nd`: no mutations are needed.
    pub trivial: bool,
    pub witness_swaps: usize,
}

/// The raw form `[B^0([0,M−1]), JZ^0([d,M−1]), B^1([M−d,M−1]), …, B^k([M−d,M−1])]`.
pub fn raw_ck(p: &Params, k: i64) -> Vec<Block> {
    let d = p.d();
    let big_m = p.big_m();
    let mut blocks: Vec<Block> = (0..big_m).map(|t| Block::bx(t, p.weight(0))).collect();
    for j in 1..=k {
        blocks.extend((d..big_m).map(|t| Block::jz(t, p.weight(j - 1))));
        blocks.extend((big_m - d..big_m).map(|t| Block::bx(t, p.weight(j))));
    }
    blocks
}

/// Replay the `C_k` induction from its raw form and compare with the grid
/// up to licensed swaps.
pub fn verify_ck(p: &Params, k: i64) -> Result<CkReport, DriverError> {
    let fail = |reason: String| DriverError::InductionStepFailed { k, reason };
    if k < 0 || k >= p.n() {
        return Err(fail(format!("k must lie in [0, {}]", p.n() - 1)));
    }
    let initial = Sod::new(*p, raw_ck(p, k)).map_err(|e| fail(e.to_string()))?;
    let mut sess = Session::new(initial.clone());
    for j in 0..k {
        induct_column(&mut sess, j).map_err(|e| fail(e.to_string()))?;
    }
    let (result, trace) = sess.into_parts();
    let target = Sod::new(*p, grid(p, 0..=p.big_m() - 1, 0..=k)).expect("grid has no duplicates");
    let witness = sod_equiv(&result, &target, &WindowOracle::new(*p))
        .map_err(|e| fail(e.to_string()))?
        .ok_or_else(|| fail(format!("{result} is not equivalent to the grid")))?;
    let count = |rule| trace.steps.iter().filter(|s| s.rule == rule).count();
    Ok(CkReport {
        k,
        transforms: count(sodcalc_core::RuleId::LmutJzTransform),
        identities: count(sodcalc_core::RuleId::LmutIdentity),
        trivial: p.is_boundary(),
        steps: trace.steps,
        initial,
        witness_swaps: witness.swaps.len(),
    })
}

/// Normalize `Chi(c)·word` by pushing the character through the word:
/// `Chi(c)·LMut(S) ↦ LMut(S ⊗ χ^c)·Chi(c)`, `Chi(c)·PushJ(k) ↦ PushJ(k+c)·Chi(0)`,
/// `Chi(0) ↦ id`, and `Chi` commutes with `Twist`. Returns the normal form
/// and the number of rule applications.
pub fn relabel_word(c: i64, word: &PhiWord, p: &Params) -> (PhiWord, usize) {
    let mut factors = vec![PhiFactor::Gen(Generator::Chi(c))];
    factors.extend(word.factors().iter().cloned());
    let mut applications = 0;
    while let Some(i) = factors.iter().position(|f| matches!(f, PhiFactor::Gen(Generator::Chi(_)))) {
        let c = match factors[i] {
            PhiFactor::Gen(Generator::Chi(c)) => c,
            _ => unreachable!(),
        };
        if c.rem_euclid(p.n()) == 0 {
            factors.remove(i);
            applications += 1;
            continue;
        }
        let Some(next) = factors.get(i + 1).cloned() else { break };
        let replaced = match next {
            PhiFactor::LMut(blocks) => {
                vec![PhiFactor::LMut(blocks.iter().map(|b| b.chi(c, p)).collect()), PhiFactor::Gen(Generator::Chi(c))]
            }
            PhiFactor::Gen(Generator::PushJ(k)) => {
                vec![PhiFactor::Gen(Generator::PushJ(k.shifted(c, p.n()))), PhiFactor::Gen(Generator::Chi(0))]
            }
            PhiFactor::Gen(Generator::Twist(e)) => {
                vec![PhiFactor::Gen(Generator::Twist(e)), PhiFactor::Gen(Generator::Chi(c))]
            }
            _ => break,
        };
        factors.splice(i..i + 2, replaced);
        applications += 1;
    }
    (PhiWord(factors), applications)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelabelEntry {
    pub k: i64,
    pub applications: usize,
    pub normal_form: PhiWord,
}

/// Check `word(PHI(k)) = Chi(k)·word(PHI(0))` after normalization for every
/// `PHI` block of a replay.
pub fn verify_phi_relabel(p: &Params, phis: &[Block]) -> Result<Vec<RelabelEntry>, DriverError> {
    let word_of = |b: &Block| match b {
        Block::Phi(phi) => Some(phi.word.clone()),
        _ => None,
    };
    let Some(w0) = phis.first().and_then(word_of) else {
        return Err(DriverError::RelabelMismatch { k: 0, expected: "PHI(0)".into(), got: "nothing".into() });
    };
    let mut out = Vec::new();
    for (k, b) in phis.iter().enumerate() {
        let k = k as i64;
        let got = word_of(b)
            .ok_or_else(|| DriverError::RelabelMismatch { k, expected: "a PHI block".into(), got: b.to_string() })?;
        if b.weight() != Some(p.weight(k)) {
            return Err(DriverError::RelabelMismatch { k, expected: format!("PHI({k})"), got: b.to_string() });
        }
        if k == 0 {
            continue;
        }
        let (normal, applications) = relabel_word(k, &w0, p);
        if normal.normalized() != got.normalized() {
            return Err(DriverError::RelabelMismatch { k, expected: got.to_string(), got: normal.to_string() });
        }
        out.push(RelabelEntry { k, applications, normal_form: normal });
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplittingReport {
    pub checked: usize,
    pub failures: Vec<(Block, Block)>,
}

/// Two-sided vanishing between distinct weight columns at equal twists in
/// `[0, M−1]`, and at all twist pairs in `[0, d−1]`.
pub fn verify_weight_splitting(p: &Params) -> SplittingReport {
    let o = WindowOracle::new(*p);
    let mut rep = SplittingReport::default();
    let mut check = |x: Block, y: Block| {
        rep.checked += 1;
        if !o.completely_orthogonal(&x, &y) {
            rep.failures.push((x, y));
        }
    };
    for k in p.weights() {
        for l in p.weights() {
            if k == l {
                continue;
            }
            for t in 0..p.big_m() {
                check(Block::bx(t, k), Block::bx(t, l));
            }
            for r in 0..p.d() {
                for s in 0..p.d() {
                    if r != s {
                        check(Block::bx(r, k), Block::bx(s, l));
                    }
                }
            }
        }
    }
    rep
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    QuarticDoubleSolid,
    Gm(i64),
    CyclicCubic(i64),
}

/// Expected shape of the final decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub phi_blocks: i64,
    /// Grid dimensions: weights × twists.
    pub grid: (i64, i64),
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} PHI + grid {}×{}", self.phi_blocks, self.grid.0, self.grid.1)
    }
}

impl Preset {
    pub fn params(&self) -> Result<Params, DriverError> {
        match *self {
            Preset::QuarticDoubleSolid => Ok(Params::new(2, 2, 4)?),
            Preset::Gm(n) if (3..=6).contains(&n) => Ok(Params::new(2, 1, n - 1)?),
            Preset::Gm(n) => Err(DriverError::InvalidPreset(format!("gm({n}) needs 3 ≤ N ≤ 6"))),
            // The argument is the dimension of X; the base is P^{N} with Lefschetz length N + 1.
            Preset::CyclicCubic(n) if n >= 2 => Ok(Params::new(3, 1, n + 1)?),
            Preset::CyclicCubic(n) => Err(DriverError::InvalidPreset(format!("cyclic_cubic({n}) needs N ≥ 2"))),
        }
    }

    pub fn expected_shape(&self) -> Result<Shape, DriverError> {
        let p = self.params()?;
        Ok(Shape { phi_blocks: p.n() - 1, grid: (p.n(), p.big_m()) })
    }

    pub fn name(&self) -> String {
        match self {
            Preset::QuarticDoubleSolid => "quartic".to_string(),
            Preset::Gm(n) => format!("gm:{n}"),
            Preset::CyclicCubic(n) => format!("cubic:{n}"),
        }
    }
}

impl FromStr for Preset {
    type Err = DriverError;

    /// Accepts `quartic`, `gm:N`, `cubic:N` and the long forms
    /// `quartic_double_solid`, `gm(N)`, `cyclic_cubic(N)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let invalid = || DriverError::InvalidPreset(s.to_string());
        if s == "quartic" || s == "quartic_double_solid" {
            return Ok(Preset::QuarticDoubleSolid);
        }
        let (name, arg) = if let Some((a, b)) = s.split_once(':') {
            (a, b)
        } else if let Some(rest) = s.strip_suffix(')') {
            rest.split_once('(').ok_or_else(invalid)?
        } else {
            return Err(invalid());
        };
        let n: i64 = arg.trim().parse().map_err(|_| invalid())?;
        let preset = match name {
            "gm" => Preset::Gm(n),
            "cubic" | "cyclic_cubic" => Preset::CyclicCubic(n),
            _ => return Err(invalid()),
        };
        preset.params()?;
        Ok(preset)
    }
}

/// Shape of a replay's final decomposition.
pub fn shape_of(r: &Replay) -> Shape {
    let p = r.final_sod.params();
    Shape { phi_blocks: r.phi_blocks().len() as i64, grid: (p.n(), (r.final_sod.len() - r.phi_blocks().len()) as i64 / p.n()) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sodcalc_core::RuleId;

    fn params(n: i64, d: i64, m: i64) -> Params {
        Params::new(n, d, m).unwrap()
    }

    fn names(blocks: &[Block]) -> Vec<String> {
        blocks.iter().map(|b| b.to_string()).collect()
    }

    #[test]
    fn rotated_decompositions() {
        let p = params(2, 1, 4);
        let sods = enumerate_cover_sods(&p).unwrap();
        assert_eq!(names(sods[0].blocks()), ["DZ(1)", "FY(0)"]);
        assert_eq!(names(sods[1].blocks()), ["FY(0)", "DZ(0)"]);
        let p = params(3, 1, 5);
        let sods = enumerate_cover_sods(&p).unwrap();
        assert_eq!(sods.len(), 3);
        assert_eq!(names(sods[1].blocks()), ["DZ(2)", "FY(0)", "DZ(0)"]);
    }

    #[test]
    fn replay_quartic() {
        let r = replay_main(&params(2, 2, 4)).unwrap();
        assert_eq!(names(r.final_sod.blocks()), ["PHI(0)", "BX(0,0)", "BX(0,1)", "BX(1,0)", "BX(1,1)"]);
        assert_eq!(r.phi_blocks()[0].to_full_string(), "PHI(0)[LMut(BX(0,0),BX(1,0))·PushJ(0)·Twist(2)]");
    }

    #[test]
    fn replay_shapes() {
        let r = replay_main(&params(3, 1, 5)).unwrap();
        assert_eq!(shape_of(&r), Shape { phi_blocks: 2, grid: (3, 3) });
        assert_eq!(r.final_counts, AtomCounts { b_type: 9, a_type: 2 });
        let r = replay_main(&params(2, 1, 4)).unwrap();
        assert_eq!(shape_of(&r), Shape { phi_blocks: 1, grid: (2, 3) });
    }

    #[test]
    fn ck_examples() {
        let r = verify_ck(&params(2, 1, 4), 1).unwrap();
        assert_eq!(r.transforms, 2);
        let r = verify_ck(&params(2, 2, 4), 1).unwrap();
        assert!(r.trivial);
        assert!(r.steps.is_empty());
        let r = verify_ck(&params(3, 1, 5), 2).unwrap();
        assert_eq!(r.transforms, 4);
        assert!(r.steps.iter().all(|s| matches!(s.rule, RuleId::LmutIdentity | RuleId::LmutJzTransform)));
    }

    #[test]
    fn relabel_examples() {
        let p = params(4, 1, 6);
        let r = replay_main(&p).unwrap();
        let entries = verify_phi_relabel(&p, r.phi_blocks()).unwrap();
        let k2 = entries.iter().find(|e| e.k == 2).unwrap();
        assert_eq!(k2.applications, 3);
        assert_eq!(k2.normal_form.to_string(), "LMut(BX(0,2))·PushJ(2)·Twist(1)");
    }

    #[test]
    fn splitting() {
        let rep = verify_weight_splitting(&params(3, 1, 5));
        assert!(rep.failures.is_empty());
        assert_eq!(rep.checked, 6 * 3);
        assert!(verify_weight_splitting(&params(2, 2, 4)).failures.is_empty());
    }

    #[test]
    fn presets() {
        assert_eq!("quartic".parse::<Preset>().unwrap().params().unwrap(), params(2, 2, 4));
        assert_eq!("gm(5)".parse::<Preset>().unwrap().params().unwrap(), params(2, 1, 4));
        assert_eq!("cubic:4".parse::<Preset>().unwrap().expected_shape().unwrap(), Shape { phi_blocks: 2, grid: (3, 3) });
        assert!("gm:7".parse::<Preset>().is_err());
        assert_eq!("cyclic_cubic(4)".parse::<Preset>().unwrap().params().unwrap(), params(3, 1, 5));
        assert!("cubic:1".parse::<Preset>().is_err());
        assert!("sextic".parse::<Preset>().is_err());
    }
}
