use std::fmt::Write;

use sodcalc_core::adjunction::reduce;
use sodcalc_core::{BlockLit, HomVerdict, Params};
use sodcalc_engine::judge;

/// Text for `sodcalc explain`. Errors only on malformed literals.
pub fn explain_text(p: &Params, pl: &BlockLit, ql: &BlockLit) -> Result<String, String> {
    if pl.is_phi() || ql.is_phi() {
        let which = if pl.is_phi() { pl } else { ql };
        return Ok(format!("{which}: provenance-only block; Hom is known only through its defining word\n"));
    }
    let pb = pl.resolve(p).map_err(|e| format!("{pl}: {e}"))?;
    let qb = ql.resolve(p).map_err(|e| format!("{ql}: {e}"))?;
    let mut out = String::new();
    let j = match judge(&pb, &qb, p) {
        Ok(j) => j,
        Err(e) => return Ok(format!("NotGuaranteed: {e}\n")),
    };
    if j.is_guaranteed() {
        let head = if j.detail.is_empty() { j.rule.clone() } else { j.detail.clone() };
        writeln!(out, "Guaranteed: {head}").unwrap();
        writeln!(out, "  rule: \"{}\"", j.rule).unwrap();
    } else {
        writeln!(out, "NotGuaranteed via {}", j.rule).unwrap();
        writeln!(out, "  window: {}", j.detail).unwrap();
        match reduce(&pb, &qb, p) {
            Ok(steps) => {
                for r in steps.iter().filter(|r| r.verdict != HomVerdict::Zero) {
                    writeln!(out, "  reduction: {r}").unwrap();
                }
            }
            Err(e) => writeln!(out, "  reduction: {e}").unwrap(),
        }
    }
    Ok(out)
}
