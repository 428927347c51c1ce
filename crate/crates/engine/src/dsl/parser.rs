//! Lexer and recursive-descent parser for `.sod` scripts.
//!
//! ```text
//! script   := params stmt*
//! params   := "params" "{" "n" "=" int ";" "d" "=" int ";" "m" "=" int [";"] "}"
//! stmt     := "let" NAME "=" "sod" "[" [item ("," item)*] "]"
//!           | op NAME "at" block
//!           | "assert" "equiv" NAME rhs ["after" block ("," block)*]
//!           | "assert" "vanishes" block block
//! op       := "expand" | "rmut" | "lmut" | "phi" | "swap" | "simplify"
//! rhs      := NAME | item | "[" [item ("," item)*] "]"
//! item     := block | ("BX" | "JZ") "(" "[" int ".." int "]" "," int ")"
//!           | "grid" "(" "[" int ".." int "]" "," "[" int ".." int "]" ")"
//! block    := ("BX" | "JZ" | "AZ") "(" int "," int ")" | ("AXE" | "FY" | "DZ") "(" int ")"
//!           | "PHI" "(" int ")" ["[" factor (("·" | "*") factor)* "]"]
//! factor   := "LMut" "(" [block ("," block)*] ")" | IDENT ["(" int ")"]
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::fmt;

use sodcalc_core::literal::FactorLit;
use sodcalc_core::BlockLit;
use thiserror::Error;

use super::ast::{is_valid_name, Item, OpKind, ParamsDecl, RangeKind, Rhs, Script, Stmt};

/// Nesting limit for `PHI` words inside mutation lists.
const MAX_DEPTH: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Eq,
    DotDot,
    Dot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBracket => write!(f, "`[`"),
            Tok::RBracket => write!(f, "`]`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Eq => write!(f, "`=`"),
            Tok::DotDot => write!(f, "`..`"),
            Tok::Dot => write!(f, "`·`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let err = |message: String| ParseError { line, col, message };
        let start = i;
        let tok = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' | ')' | '[' | ']' | '{' | '}' | ',' | ';' | '=' | '·' | '*' => {
                i += 1;
                match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '=' => Tok::Eq,
                    _ => Tok::Dot,
                }
            }
            '.' => {
                if chars.get(i + 1) != Some(&'.') {
                    return Err(err("expected `..`".into()));
                }
                i += 2;
                Tok::DotDot
            }
            c if c == '-' || c.is_ascii_digit() => {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                if text == "-" {
                    return Err(err("expected digits after `-`".into()));
                }
                let value = text.parse::<i64>().map_err(|_| err(format!("integer `{text}` out of range")))?;
                Tok::Int(value)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                Tok::Ident(chars[start..i].iter().collect())
            }
            other => return Err(err(format!("unexpected character `{other}`"))),
        };
        out.push(Spanned { tok, line, col });
        col += i - start;
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, col: t.col, message: message.into() }
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {tok}, found {}", self.peek())))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            other => Err(self.error(format!("expected `{kw}`, found {other}"))),
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        match self.peek() {
            Tok::Int(i) => {
                let i = *i;
                self.bump();
                Ok(i)
            }
            other => Err(self.error(format!("expected integer, found {other}"))),
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Ident(s) if is_valid_name(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            other => Err(self.error(format!("expected a name, found {other}"))),
        }
    }

    fn script(&mut self) -> Result<Script, ParseError> {
        let params = self.params()?;
        let mut stmts = Vec::new();
        while *self.peek() != Tok::Eof {
            stmts.push(self.stmt()?);
        }
        Ok(Script { params, stmts })
    }

    fn params(&mut self) -> Result<ParamsDecl, ParseError> {
        self.keyword("params")?;
        self.expect(Tok::LBrace)?;
        let field = |p: &mut Parser, name: &str| -> Result<i64, ParseError> {
            p.keyword(name)?;
            p.expect(Tok::Eq)?;
            p.int()
        };
        let n = field(self, "n")?;
        self.expect(Tok::Semi)?;
        let d = field(self, "d")?;
        self.expect(Tok::Semi)?;
        let m = field(self, "m")?;
        self.eat(&Tok::Semi);
        self.expect(Tok::RBrace)?;
        Ok(ParamsDecl { n, d, m })
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let word = match self.peek() {
            Tok::Ident(s) => s.clone(),
            other => return Err(self.error(format!("expected a statement, found {other}"))),
        };
        if word == "let" {
            self.bump();
            let name = self.name()?;
            self.expect(Tok::Eq)?;
            self.keyword("sod")?;
            let items = self.item_list()?;
            return Ok(Stmt::Let { name, items });
        }
        if word == "assert" {
            self.bump();
            if self.is_keyword("equiv") {
                self.bump();
                let name = self.name()?;
                let rhs = self.rhs()?;
                let mut after = Vec::new();
                if self.is_keyword("after") {
                    self.bump();
                    after.push(self.block()?);
                    while self.eat(&Tok::Comma) {
                        after.push(self.block()?);
                    }
                }
                return Ok(Stmt::AssertEquiv { name, rhs, after });
            }
            if self.is_keyword("vanishes") {
                self.bump();
                let p = self.block()?;
                let q = self.block()?;
                return Ok(Stmt::AssertVanishes { p, q });
            }
            return Err(self.error(format!("expected `equiv` or `vanishes`, found {}", self.peek())));
        }
        if let Some(op) = OpKind::from_keyword(&word) {
            self.bump();
            let target = self.name()?;
            self.keyword("at")?;
            let at = self.block()?;
            return Ok(Stmt::Op { op, target, at });
        }
        Err(self.error(format!("unknown statement `{word}`")))
    }

    fn rhs(&mut self) -> Result<Rhs, ParseError> {
        match self.peek() {
            Tok::LBracket => Ok(Rhs::List(self.item_list()?)),
            Tok::Ident(s) if is_valid_name(s) => Ok(Rhs::Name(self.name()?)),
            _ => Ok(Rhs::Item(self.item()?)),
        }
    }

    fn item_list(&mut self) -> Result<Vec<Item>, ParseError> {
        self.expect(Tok::LBracket)?;
        let mut items = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(items);
        }
        items.push(self.item()?);
        while self.eat(&Tok::Comma) {
            items.push(self.item()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(items)
    }

    fn range(&mut self) -> Result<(i64, i64), ParseError> {
        self.expect(Tok::LBracket)?;
        let lo = self.int()?;
        self.expect(Tok::DotDot)?;
        let hi = self.int()?;
        self.expect(Tok::RBracket)?;
        Ok((lo, hi))
    }

    fn item(&mut self) -> Result<Item, ParseError> {
        let head = match self.peek() {
            Tok::Ident(s) => s.clone(),
            other => return Err(self.error(format!("expected a block, found {other}"))),
        };
        if head == "grid" {
            self.bump();
            self.expect(Tok::LParen)?;
            let twists = self.range()?;
            self.expect(Tok::Comma)?;
            let weights = self.range()?;
            self.expect(Tok::RParen)?;
            return Ok(Item::Grid { twists, weights });
        }
        if (head == "BX" || head == "JZ") && *self.peek_at(1) == Tok::LParen && *self.peek_at(2) == Tok::LBracket {
            self.bump();
            self.bump();
            let (lo, hi) = self.range()?;
            self.expect(Tok::Comma)?;
            let weight = self.int()?;
            self.expect(Tok::RParen)?;
            let kind = if head == "BX" { RangeKind::Bx } else { RangeKind::Jz };
            return Ok(Item::Range { kind, lo, hi, weight });
        }
        Ok(Item::Block(self.block()?))
    }

    fn block(&mut self) -> Result<BlockLit, ParseError> {
        let head = match self.peek() {
            Tok::Ident(s) => s.clone(),
            other => return Err(self.error(format!("expected a block, found {other}"))),
        };
        self.bump();
        self.expect(Tok::LParen)?;
        let lit = match head.as_str() {
            "BX" | "JZ" | "AZ" => {
                let t = self.int()?;
                self.expect(Tok::Comma)?;
                let k = self.int()?;
                self.expect(Tok::RParen)?;
                match head.as_str() {
                    "BX" => BlockLit::Bx(t, k),
                    "JZ" => BlockLit::Jz(t, k),
                    _ => BlockLit::Az(t, k),
                }
            }
            "AXE" | "FY" | "DZ" => {
                let a = self.int()?;
                self.expect(Tok::RParen)?;
                match head.as_str() {
                    "AXE" => BlockLit::Axe(a),
                    "FY" => BlockLit::Fy(a),
                    _ => BlockLit::Dz(a),
                }
            }
            "PHI" => {
                let k = self.int()?;
                self.expect(Tok::RParen)?;
                if *self.peek() == Tok::LBracket {
                    self.bump();
                    let word = self.word()?;
                    self.expect(Tok::RBracket)?;
                    BlockLit::Phi(k, Some(word))
                } else {
                    BlockLit::Phi(k, None)
                }
            }
            other => return Err(self.error(format!("unknown block kind `{other}`"))),
        };
        Ok(lit)
    }

    fn word(&mut self) -> Result<Vec<FactorLit>, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("PHI words nested too deeply"));
        }
        let mut out = vec![self.factor()?];
        while self.eat(&Tok::Dot) {
            out.push(self.factor()?);
        }
        self.depth -= 1;
        Ok(out)
    }

    fn factor(&mut self) -> Result<FactorLit, ParseError> {
        let name = match self.peek() {
            Tok::Ident(s) => s.clone(),
            other => return Err(self.error(format!("expected a word factor, found {other}"))),
        };
        self.bump();
        if name == "LMut" {
            self.expect(Tok::LParen)?;
            let mut blocks = Vec::new();
            if !self.eat(&Tok::RParen) {
                blocks.push(self.block()?);
                while self.eat(&Tok::Comma) {
                    blocks.push(self.block()?);
                }
                self.expect(Tok::RParen)?;
            }
            return Ok(FactorLit::LMut(blocks));
        }
        if self.eat(&Tok::LParen) {
            let arg = self.int()?;
            self.expect(Tok::RParen)?;
            Ok(FactorLit::Gen(name, Some(arg)))
        } else {
            Ok(FactorLit::Gen(name, None))
        }
    }
}

/// Parse a script.
pub fn parse(src: &str) -> Result<Script, ParseError> {
    let toks = lex(src)?;
    Parser { toks, pos: 0, depth: 0 }.script()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_program() {
        let s = parse("params { n=2; d=2; m=4 }\nlet S = sod [ FY(0), DZ(0) ]").unwrap();
        assert_eq!(s.params, ParamsDecl { n: 2, d: 2, m: 4 });
        assert_eq!(s.stmts.len(), 1);
    }

    #[test]
    fn sugar_and_assertions() {
        let src = "params { n=2; d=2; m=4 }  # quartic\n\
                   let S = sod [ BX([0..3],0), JZ([2..3],1), grid([0..1],[0..1]) ]\n\
                   rmut S at BX(2,0)\n\
                   assert equiv S grid([0..1],[0..1]) after PHI(0)\n\
                   assert vanishes BX(1,0) BX(0,0)\n";
        let s = parse(src).unwrap();
        assert_eq!(s.stmts.len(), 4);
        assert_eq!(
            s.stmts[2],
            Stmt::AssertEquiv {
                name: "S".into(),
                rhs: Rhs::Item(Item::Grid { twists: (0, 1), weights: (0, 1) }),
                after: vec![BlockLit::Phi(0, None)],
            }
        );
    }

    #[test]
    fn phi_words() {
        let s = parse("params { n=2; d=1; m=4 }\nlet S = sod [ PHI(0)[LMut(BX(0,0))·PushJ(0)*Twist(1)] ]").unwrap();
        match &s.stmts[0] {
            Stmt::Let { items, .. } => {
                assert_eq!(items[0].clone(), Item::Block("PHI(0)[LMut(BX(0,0))·PushJ(0)·Twist(1)]".parse().unwrap()))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("params { n=2; d=2; m=4 }\nlet S = sod [ FY(0) DZ(0) ]").unwrap_err();
        assert_eq!((e.line, e.col), (2, 21));
        let e = parse("params { n=2; d=2 }").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(parse("params { n=99999999999999999999; d=1; m=1 }").is_err());
        assert!(parse("params { n=2; d=1; m=4 }\nlet sod = sod []").is_err());
        assert!(parse("params { n=2; d=1; m=4 }\nfoo S at BX(0,0)").is_err());
    }

    #[test]
    fn deep_nesting_is_rejected() {
        let mut src = String::from("params { n=2; d=1; m=4 }\nlet S = sod [ ");
        for _ in 0..200 {
            src.push_str("PHI(0)[LMut(");
        }
        assert!(parse(&src).is_err());
    }
}
