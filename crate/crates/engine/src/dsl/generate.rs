//! Seeded generator of syntactically well-formed scripts.

use rand::seq::SliceRandom;
use rand::Rng;
use sodcalc_core::literal::FactorLit;
use sodcalc_core::BlockLit;

use super::ast::{Item, OpKind, ParamsDecl, RangeKind, Rhs, Script, Stmt};

const NAMES: &[&str] = &["S", "T", "S1", "quartic", "_tmp", "gm_5", "C0"];
const GENS: &[&str] = &["PushJ", "PullJ", "PushF", "PullF", "ShriekJ", "ShriekF", "Twist", "Chi", "Shift"];

fn int(rng: &mut impl Rng) -> i64 {
    if rng.gen_bool(0.05) {
        rng.gen_range(-1_000_000..1_000_000)
    } else {
        rng.gen_range(-6..13)
    }
}

fn name(rng: &mut impl Rng) -> String {
    NAMES.choose(rng).unwrap().to_string()
}

fn block(rng: &mut impl Rng, depth: usize) -> BlockLit {
    match rng.gen_range(0..if depth < 2 { 8 } else { 6 }) {
        0 => BlockLit::Bx(int(rng), int(rng)),
        1 => BlockLit::Jz(int(rng), int(rng)),
        2 => BlockLit::Az(int(rng), int(rng)),
        3 => BlockLit::Axe(int(rng)),
        4 => BlockLit::Fy(int(rng)),
        5 => BlockLit::Dz(int(rng)),
        6 => BlockLit::Phi(int(rng), None),
        _ => {
            let len = rng.gen_range(1..4);
            let word = (0..len).map(|_| factor(rng, depth + 1)).collect();
            BlockLit::Phi(int(rng), Some(word))
        }
    }
}

fn factor(rng: &mut impl Rng, depth: usize) -> FactorLit {
    match rng.gen_range(0..4) {
        0 => FactorLit::LMut((0..rng.gen_range(0..3)).map(|_| block(rng, depth)).collect()),
        1 => FactorLit::Gen(["PushI", "PullI"].choose(rng).unwrap().to_string(), None),
        _ => FactorLit::Gen(GENS.choose(rng).unwrap().to_string(), Some(int(rng))),
    }
}

fn item(rng: &mut impl Rng) -> Item {
    match rng.gen_range(0..5) {
        0 => Item::Range {
            kind: if rng.gen() { RangeKind::Bx } else { RangeKind::Jz },
            lo: int(rng),
            hi: int(rng),
            weight: int(rng),
        },
        1 => Item::Grid { twists: (int(rng), int(rng)), weights: (int(rng), int(rng)) },
        _ => Item::Block(block(rng, 0)),
    }
}

fn items(rng: &mut impl Rng) -> Vec<Item> {
    (0..rng.gen_range(0..6)).map(|_| item(rng)).collect()
}

fn stmt(rng: &mut impl Rng) -> Stmt {
    match rng.gen_range(0..4) {
        0 => Stmt::Let { name: name(rng), items: items(rng) },
        1 => Stmt::Op { op: *OpKind::ALL.choose(rng).unwrap(), target: name(rng), at: block(rng, 0) },
        2 => Stmt::AssertEquiv {
            name: name(rng),
            rhs: match rng.gen_range(0..3) {
                0 => Rhs::Name(name(rng)),
                1 => Rhs::Item(item(rng)),
                _ => Rhs::List(items(rng)),
            },
            after: (0..rng.gen_range(0..3)).map(|_| block(rng, 0)).collect(),
        },
        _ => Stmt::AssertVanishes { p: block(rng, 0), q: block(rng, 0) },
    }
}

/// A random script with up to 12 statements.
pub fn random_script(rng: &mut impl Rng) -> Script {
    let params = ParamsDecl { n: int(rng), d: int(rng), m: int(rng) };
    let stmts = (0..rng.gen_range(0..13)).map(|_| stmt(rng)).collect();
    Script { params, stmts }
}
