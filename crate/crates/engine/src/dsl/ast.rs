use sodcalc_core::BlockLit;

/// A parsed `.sod` script. Integers are kept as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub params: ParamsDecl,
    pub stmts: Vec<Stmt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamsDecl {
    pub n: i64,
    pub d: i64,
    pub m: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Let { name: String, items: Vec<Item> },
    Op { op: OpKind, target: String, at: BlockLit },
    AssertEquiv { name: String, rhs: Rhs, after: Vec<BlockLit> },
    AssertVanishes { p: BlockLit, q: BlockLit },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    Expand,
    Rmut,
    Lmut,
    Phi,
    Swap,
    Simplify,
}

impl OpKind {
    pub const ALL: [OpKind; 6] = [OpKind::Expand, OpKind::Rmut, OpKind::Lmut, OpKind::Phi, OpKind::Swap, OpKind::Simplify];

    pub fn keyword(&self) -> &'static str {
        match self {
            OpKind::Expand => "expand",
            OpKind::Rmut => "rmut",
            OpKind::Lmut => "lmut",
            OpKind::Phi => "phi",
            OpKind::Swap => "swap",
            OpKind::Simplify => "simplify",
        }
    }

    pub fn from_keyword(s: &str) -> Option<OpKind> {
        OpKind::ALL.into_iter().find(|k| k.keyword() == s)
    }
}

/// Range sugar kinds: `BX([a..b],k)` and `JZ([a..b],k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RangeKind {
    Bx,
    Jz,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Block(BlockLit),
    Range { kind: RangeKind, lo: i64, hi: i64, weight: i64 },
    Grid { twists: (i64, i64), weights: (i64, i64) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rhs {
    Name(String),
    Item(Item),
    List(Vec<Item>),
}

/// Words that cannot be used as names.
pub const RESERVED: &[&str] = &[
    "params", "let", "sod", "at", "assert", "equiv", "vanishes", "after", "grid", "expand", "rmut", "lmut", "phi",
    "swap", "simplify", "BX", "JZ", "AZ", "AXE", "FY", "DZ", "PHI",
];

pub fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&s)
}
