//! The dual linearization sequence `0 → R_Q* → B* → K* → 0`.

use super::Group;
use crate::report::{invariants_json, Status, VerificationReport};
use bfk_core::burnside::{SectionKey, SparseMap};
use bfk_core::Result;
use serde_json::json;

pub const CLAIMS: &[&str] = &["exact.dual-naturality", "exact.dual-sequence"];

pub fn run(g: &Group) -> Result<Vec<VerificationReport>> {
    let ctx = &g.ctx;
    let l = ctx.lattice();
    let top = (l.whole(), l.trivial());
    let check = ctx.check_exact_sequence(top)?;
    let noncyclic = l.classes().iter().filter(|c| !l.is_cyclic(c[0])).count();
    let ok = check.holds() && check.k_rank == noncyclic;
    let mut out = vec![g.report(
        "exact.dual-sequence",
        Status::from_bool(ok),
        json!({
            "b_rank": check.b_rank,
            "rq_rank": check.rq_rank,
            "k_rank": check.k_rank,
            "noncyclic_classes": noncyclic,
            "quotient": invariants_json(&check.quotient),
            "kernel_matches": check.kernel_matches,
            "surjective": check.surjective,
        }),
    )];

    // Elementary maps out of and into the whole group: restriction to
    // maximal subgroups, deflation by normal subgroups of order p, their
    // adjoints, and conjugation by generators.
    let mut maps: Vec<(String, SectionKey, SectionKey, SparseMap)> = Vec::new();
    for m in l.maximal_subgroups(l.whole()) {
        let small = (m, l.trivial());
        maps.push((format!("defres to ({m}, 1)"), top, small, ctx.defres(top, small)?));
        maps.push((format!("indinf from ({m}, 1)"), small, top, ctx.indinf(small, top)?));
    }
    let p = l.group().prime() as usize;
    for n in (0..l.len()).filter(|&n| l.order_of(n) == p && l.is_normal(n)) {
        let small = (l.whole(), n);
        maps.push((format!("defres to (P, {n})"), top, small, ctx.defres(top, small)?));
        maps.push((format!("indinf from (P, {n})"), small, top, ctx.indinf(small, top)?));
    }
    for &x in l.subgroup(l.whole()).generators() {
        maps.push((format!("conj:{x}"), top, top, ctx.conj(x, top)?));
    }
    let mut failed = Vec::new();
    for (name, src, dst, f) in &maps {
        if !ctx.dual_commutes(f, *src, *dst)? {
            failed.push(name.clone());
        }
    }
    out.push(g.report(
        "exact.dual-naturality",
        Status::from_bool(failed.is_empty()),
        json!({ "maps": maps.len(), "failed": failed }),
    ));
    Ok(out)
}
