//! Textual block literals, shared by the trace format and the script
//! language: `BX(t,k)`, `JZ(t,k)`, `AZ(t,k)`, `AXE(t)`, `FY(k)`, `DZ(k)`,
//! `PHI(k)` and `PHI(k)[word]`.
//!
//! Literals keep raw integers; weights are reduced only when a literal is
//! resolved against [`Params`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::block::Block;
use crate::params::Params;
use crate::word::{Generator, PhiFactor, PhiWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {offset}: {message}")]
pub struct LiteralError {
    pub offset: usize,
    pub message: String,
}

impl LiteralError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        LiteralError { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BlockLit {
    Bx(i64, i64),
    Jz(i64, i64),
    Az(i64, i64),
    Axe(i64),
    Fy(i64),
    Dz(i64),
    Phi(i64, Option<Vec<FactorLit>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FactorLit {
    LMut(Vec<BlockLit>),
    Gen(String, Option<i64>),
}

impl BlockLit {
    /// Resolve against parameters. A `PHI` literal needs its defining word.
    pub fn resolve(&self, p: &Params) -> Result<Block, LiteralError> {
        Ok(match self {
            BlockLit::Bx(t, k) => Block::bx(*t, p.weight(*k)),
            BlockLit::Jz(t, k) => Block::jz(*t, p.weight(*k)),
            BlockLit::Az(t, k) => Block::az(*t, p.weight(*k)),
            BlockLit::Axe(t) => Block::axe(*t),
            BlockLit::Fy(k) => Block::fy(p.weight(*k)),
            BlockLit::Dz(k) => Block::dz(p.weight(*k)),
            BlockLit::Phi(k, Some(word)) => Block::phi(p.weight(*k), resolve_word(word, p)?, None),
            BlockLit::Phi(_, None) => {
                return Err(LiteralError::new(0, "PHI literal without a defining word is provenance-only"))
            }
        })
    }

    /// Pattern match: a `PHI(k)` literal without a word matches any `PHI`
    /// block of weight `k`.
    pub fn matches(&self, block: &Block, p: &Params) -> bool {
        match (self, block) {
            (BlockLit::Phi(k, None), Block::Phi(phi)) => p.weight(*k) == phi.weight,
            _ => self.resolve(p).map(|b| &b == block).unwrap_or(false),
        }
    }

    pub fn is_phi(&self) -> bool {
        matches!(self, BlockLit::Phi(..))
    }
}

impl From<&Block> for BlockLit {
    fn from(b: &Block) -> Self {
        match b {
            Block::Bx { twist, weight } => BlockLit::Bx(*twist, weight.get()),
            Block::Jz { twist, weight } => BlockLit::Jz(*twist, weight.get()),
            Block::Az { twist, weight } => BlockLit::Az(*twist, weight.get()),
            Block::Axe { twist } => BlockLit::Axe(*twist),
            Block::FyFull { weight } => BlockLit::Fy(weight.get()),
            Block::DzFull { weight } => BlockLit::Dz(weight.get()),
            Block::Phi(phi) => BlockLit::Phi(
                phi.weight.get(),
                Some(
                    phi.word
                        .factors()
                        .iter()
                        .map(|f| match f {
                            PhiFactor::LMut(bs) => FactorLit::LMut(bs.iter().map(BlockLit::from).collect()),
                            PhiFactor::Gen(g) => gen_to_lit(g),
                        })
                        .collect(),
                ),
            ),
        }
    }
}

fn gen_to_lit(g: &Generator) -> FactorLit {
    let (name, arg) = match g {
        Generator::PullF(k) => ("PullF", Some(k.get())),
        Generator::PushF(k) => ("PushF", Some(k.get())),
        Generator::PushJ(k) => ("PushJ", Some(k.get())),
        Generator::PullJ(k) => ("PullJ", Some(k.get())),
        Generator::ShriekJ(k) => ("ShriekJ", Some(k.get())),
        Generator::ShriekF(k) => ("ShriekF", Some(k.get())),
        Generator::PushI => ("PushI", None),
        Generator::PullI => ("PullI", None),
        Generator::Twist(c) => ("Twist", Some(*c)),
        Generator::Chi(c) => ("Chi", Some(*c)),
        Generator::Shift(s) => ("Shift", Some(*s)),
    };
    FactorLit::Gen(name.to_string(), arg)
}

/// Resolve a generator name and argument.
pub fn resolve_generator(name: &str, arg: Option<i64>, p: &Params) -> Result<Generator, LiteralError> {
    let need = |arg: Option<i64>| arg.ok_or_else(|| LiteralError::new(0, format!("{name} needs an argument")));
    let g = match name {
        "PullF" => Generator::PullF(p.weight(need(arg)?)),
        "PushF" => Generator::PushF(p.weight(need(arg)?)),
        "PushJ" => Generator::PushJ(p.weight(need(arg)?)),
        "PullJ" => Generator::PullJ(p.weight(need(arg)?)),
        "ShriekJ" => Generator::ShriekJ(p.weight(need(arg)?)),
        "ShriekF" => Generator::ShriekF(p.weight(need(arg)?)),
        "Twist" => Generator::Twist(need(arg)?),
        "Chi" => Generator::Chi(need(arg)?),
        "Shift" => Generator::Shift(need(arg)?),
        "PushI" | "PullI" => {
            if arg.is_some() {
                return Err(LiteralError::new(0, format!("{name} takes no argument")));
            }
            if name == "PushI" {
                Generator::PushI
            } else {
                Generator::PullI
            }
        }
        other => return Err(LiteralError::new(0, format!("unknown generator `{other}`"))),
    };
    Ok(g)
}

fn resolve_word(factors: &[FactorLit], p: &Params) -> Result<PhiWord, LiteralError> {
    let mut out = Vec::with_capacity(factors.len());
    for f in factors {
        out.push(match f {
            FactorLit::LMut(blocks) => {
                PhiFactor::LMut(blocks.iter().map(|b| b.resolve(p)).collect::<Result<_, _>>()?)
            }
            FactorLit::Gen(name, arg) => PhiFactor::Gen(resolve_generator(name, *arg, p)?),
        });
    }
    Ok(PhiWord(out))
}

impl fmt::Display for FactorLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorLit::LMut(blocks) => {
                write!(f, "LMut(")?;
                for (i, b) in blocks.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{b}")?;
                }
                write!(f, ")")
            }
            FactorLit::Gen(name, Some(a)) => write!(f, "{name}({a})"),
            FactorLit::Gen(name, None) => write!(f, "{name}"),
        }
    }
}

impl fmt::Display for BlockLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockLit::Bx(t, k) => write!(f, "BX({t},{k})"),
            BlockLit::Jz(t, k) => write!(f, "JZ({t},{k})"),
            BlockLit::Az(t, k) => write!(f, "AZ({t},{k})"),
            BlockLit::Axe(t) => write!(f, "AXE({t})"),
            BlockLit::Fy(k) => write!(f, "FY({k})"),
            BlockLit::Dz(k) => write!(f, "DZ({k})"),
            BlockLit::Phi(k, None) => write!(f, "PHI({k})"),
            BlockLit::Phi(k, Some(word)) => {
                write!(f, "PHI({k})[")?;
                for (i, factor) in word.iter().enumerate() {
                    if i > 0 {
                        write!(f, "·")?;
                    }
                    write!(f, "{factor}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl FromStr for BlockLit {
    type Err = LiteralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lit, used) = parse_block_prefix(s)?;
        if !s[used..].trim().is_empty() {
            return Err(LiteralError::new(used, "trailing input after block literal"));
        }
        Ok(lit)
    }
}

/// Parse one block literal at the start of `s` (leading whitespace
/// allowed). Returns the literal and the number of bytes consumed.
pub fn parse_block_prefix(s: &str) -> Result<(BlockLit, usize), LiteralError> {
    let mut cur = Cursor { src: s, pos: 0 };
    let lit = cur.block()?;
    Ok((lit, cur.pos))
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        let trimmed = rest.trim_start_matches([' ', '\t']);
        self.pos += rest.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), LiteralError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(LiteralError::new(self.pos, format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<&'a str, LiteralError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.find(|c: char| !c.is_ascii_alphanumeric() && c != '_').unwrap_or(rest.len());
        if len == 0 {
            return Err(LiteralError::new(self.pos, "expected identifier"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn int(&mut self) -> Result<i64, LiteralError> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        let mut len = 0;
        if rest.starts_with('-') || rest.starts_with('+') {
            len = 1;
        }
        let digits = rest[len..].find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len() - len);
        if digits == 0 {
            return Err(LiteralError::new(start, "expected integer"));
        }
        len += digits;
        let value = rest[..len]
            .parse::<i64>()
            .map_err(|_| LiteralError::new(start, "integer out of range"))?;
        self.pos += len;
        Ok(value)
    }

    fn block(&mut self) -> Result<BlockLit, LiteralError> {
        let start = self.pos;
        let name = self.ident()?;
        self.expect('(')?;
        let lit = match name {
            "BX" | "JZ" | "AZ" => {
                let t = self.int()?;
                self.expect(',')?;
                let k = self.int()?;
                self.expect(')')?;
                match name {
                    "BX" => BlockLit::Bx(t, k),
                    "JZ" => BlockLit::Jz(t, k),
                    _ => BlockLit::Az(t, k),
                }
            }
            "AXE" | "FY" | "DZ" | "PHI" => {
                let a = self.int()?;
                self.expect(')')?;
                match name {
                    "AXE" => BlockLit::Axe(a),
                    "FY" => BlockLit::Fy(a),
                    "DZ" => BlockLit::Dz(a),
                    _ => {
                        let save = self.pos;
                        self.skip_ws();
                        if self.rest().starts_with('[') {
                            self.pos += 1;
                            let word = self.word()?;
                            self.expect(']')?;
                            BlockLit::Phi(a, Some(word))
                        } else {
                            self.pos = save;
                            BlockLit::Phi(a, None)
                        }
                    }
                }
            }
            other => return Err(LiteralError::new(start, format!("unknown block kind `{other}`"))),
        };
        Ok(lit)
    }

    fn word(&mut self) -> Result<Vec<FactorLit>, LiteralError> {
        let mut out = vec![self.factor()?];
        while self.eat('·') || self.eat('*') {
            out.push(self.factor()?);
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<FactorLit, LiteralError> {
        let name = self.ident()?;
        if name == "LMut" {
            self.expect('(')?;
            let mut blocks = Vec::new();
            if !self.eat(')') {
                loop {
                    blocks.push(self.block()?);
                    if self.eat(')') {
                        break;
                    }
                    self.expect(',')?;
                }
            }
            return Ok(FactorLit::LMut(blocks));
        }
        if self.eat('(') {
            let a = self.int()?;
            self.expect(')')?;
            Ok(FactorLit::Gen(name.to_string(), Some(a)))
        } else {
            Ok(FactorLit::Gen(name.to_string(), None))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        for s in ["BX(2,0)", "JZ(-1,3)", "AZ(1,1)", "AXE(0)", "FY(0)", "DZ(1)", "PHI(1)"] {
            let lit: BlockLit = s.parse().unwrap();
            assert_eq!(lit.to_string(), s);
        }
        let lit: BlockLit = " BX( 4 , 0 ) ".parse().unwrap();
        assert_eq!(lit, BlockLit::Bx(4, 0));
    }

    #[test]
    fn phi_with_word_round_trips() {
        let p = Params::new(2, 2, 4).unwrap();
        let s = "PHI(0)[LMut(BX(0,0),BX(1,0))·PushJ(0)·Twist(2)]";
        let lit: BlockLit = s.parse().unwrap();
        let block = lit.resolve(&p).unwrap();
        assert_eq!(block.to_full_string(), s);
        assert_eq!(BlockLit::from(&block).to_string(), s);
        let ascii: BlockLit = "PHI(0)[LMut(BX(0,0),BX(1,0))*PushJ(0)*Twist(2)]".parse().unwrap();
        assert_eq!(ascii, lit);
    }

    #[test]
    fn rejects_garbage() {
        assert!("BX(1)".parse::<BlockLit>().is_err());
        assert!("QQ(1,2)".parse::<BlockLit>().is_err());
        assert!("BX(1,2) x".parse::<BlockLit>().is_err());
        assert!("PHI(0)[Bogus(1)]".parse::<BlockLit>().unwrap().resolve(&Params::new(2, 1, 4).unwrap()).is_err());
        assert!("BX(99999999999999999999,0)".parse::<BlockLit>().is_err());
    }

    #[test]
    fn phi_pattern_matches_by_weight() {
        let p = Params::new(2, 1, 4).unwrap();
        let w = p.weight(0);
        let phi = Block::phi(w, PhiWord::mutation_word(vec![Block::bx(0, w)], w, 1), Some(2));
        assert!(BlockLit::Phi(0, None).matches(&phi, &p));
        assert!(BlockLit::Phi(2, None).matches(&phi, &p));
        assert!(!BlockLit::Phi(1, None).matches(&phi, &p));
        assert!(BlockLit::Bx(0, 2).matches(&Block::bx(0, w), &p));
    }
}
