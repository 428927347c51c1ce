//! Canonical text for scripts and for the objects they manipulate.

use std::fmt::Write;

use sodcalc_core::{Block, BlockLit, Sod, Trace};

use super::ast::{Item, RangeKind, Rhs, Script, Stmt};

pub fn print_item(item: &Item) -> String {
    match item {
        Item::Block(b) => b.to_string(),
        Item::Range { kind, lo, hi, weight } => {
            let head = match kind {
                RangeKind::Bx => "BX",
                RangeKind::Jz => "JZ",
            };
            format!("{head}([{lo}..{hi}],{weight})")
        }
        Item::Grid { twists, weights } => format!("grid([{}..{}],[{}..{}])", twists.0, twists.1, weights.0, weights.1),
    }
}

fn print_list(items: &[Item]) -> String {
    if items.is_empty() {
        return "[ ]".to_string();
    }
    let body: Vec<String> = items.iter().map(print_item).collect();
    format!("[ {} ]", body.join(", "))
}

pub fn print_stmt(stmt: &Stmt) -> String {
    match stmt {
        Stmt::Let { name, items } => format!("let {name} = sod {}", print_list(items)),
        Stmt::Op { op, target, at } => format!("{} {target} at {at}", op.keyword()),
        Stmt::AssertEquiv { name, rhs, after } => {
            let rhs = match rhs {
                Rhs::Name(n) => n.clone(),
                Rhs::Item(i) => print_item(i),
                Rhs::List(items) => print_list(items),
            };
            let mut out = format!("assert equiv {name} {rhs}");
            if !after.is_empty() {
                let after: Vec<String> = after.iter().map(BlockLit::to_string).collect();
                write!(out, " after {}", after.join(", ")).unwrap();
            }
            out
        }
        Stmt::AssertVanishes { p, q } => format!("assert vanishes {p} {q}"),
    }
}

/// Canonical text of a script: the params line, then one statement per
/// line.
pub fn print_script(s: &Script) -> String {
    let mut out = format!("params {{ n={}; d={}; m={} }}\n", s.params.n, s.params.d, s.params.m);
    for stmt in &s.stmts {
        out.push_str(&print_stmt(stmt));
        out.push('\n');
    }
    out
}

fn bx_parts(b: &Block) -> Option<(i64, i64)> {
    match b {
        Block::Bx { twist, weight } => Some((*twist, weight.get())),
        _ => None,
    }
}

/// Longest grid run starting at `blocks[0]`: twists `t0..` each carrying
/// weights `k0..k0+w−1`. Returns the twist count and the width.
fn grid_run(blocks: &[Block]) -> Option<(usize, usize)> {
    let (t0, k0) = bx_parts(&blocks[0])?;
    let mut width = 0;
    while let Some((t, k)) = blocks.get(width).and_then(bx_parts) {
        if t != t0 || k != k0 + width as i64 {
            break;
        }
        width += 1;
    }
    let mut rows = 1;
    'rows: loop {
        for j in 0..width {
            match blocks.get(rows * width + j).and_then(bx_parts) {
                Some((t, k)) if t == t0 + rows as i64 && k == k0 + j as i64 => {}
                _ => break 'rows,
            }
        }
        rows += 1;
    }
    Some((rows, width))
}

/// Compress a block list into script items: grid runs become
/// `grid([a..b],[c..e])`, runs of equal weight become `BX([a..b],k)` or
/// `JZ([a..b],k)`.
pub fn compress(blocks: &[Block]) -> Vec<Item> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < blocks.len() {
        if let Some((rows, width)) = grid_run(&blocks[i..]) {
            if rows >= 2 && width >= 2 {
                let (t0, k0) = bx_parts(&blocks[i]).unwrap();
                out.push(Item::Grid {
                    twists: (t0, t0 + rows as i64 - 1),
                    weights: (k0, k0 + width as i64 - 1),
                });
                i += rows * width;
                continue;
            }
        }
        let run = |b: &Block| match b {
            Block::Bx { twist, weight } => Some((RangeKind::Bx, *twist, weight.get())),
            Block::Jz { twist, weight } => Some((RangeKind::Jz, *twist, weight.get())),
            _ => None,
        };
        if let Some((kind, t0, k)) = run(&blocks[i]) {
            let mut len = 1;
            while blocks.get(i + len).and_then(run) == Some((kind, t0 + len as i64, k)) {
                len += 1;
            }
            if len >= 2 {
                out.push(Item::Range { kind, lo: t0, hi: t0 + len as i64 - 1, weight: k });
                i += len;
                continue;
            }
        }
        out.push(Item::Block(BlockLit::from(&blocks[i])));
        i += 1;
    }
    out
}

/// A decomposition as a script list, with grid runs compressed.
pub fn print_sod(s: &Sod) -> String {
    print_list(&compress(s.blocks()))
}

/// Human-readable trace: one line per step followed by its side
/// conditions and their citations.
pub fn print_trace(t: &Trace) -> String {
    let p = t.params();
    let mut out = format!("# params n={} d={} m={} M={}\n", p.n(), p.d(), p.m(), p.big_m());
    for step in &t.steps {
        let show = |bs: &[Block]| bs.iter().map(Block::to_full_string).collect::<Vec<_>>().join(", ");
        writeln!(
            out,
            "{:>4} {} [{},{}) [{}] => [{}]",
            step.index,
            step.rule,
            step.pos.0,
            step.pos.1,
            show(&step.before),
            show(&step.after)
        )
        .unwrap();
        for c in &step.conds {
            writeln!(out, "       Hom({}, {}) = 0  by {}", c.p, c.q, c.cite).unwrap();
        }
    }
    out
}
