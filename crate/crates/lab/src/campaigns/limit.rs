//! Limits of a single system, either built from a functor or read from JSON.

use super::Group;
use crate::report::{invariants_json, matrix_json, Status, VerificationReport};
use bfk_core::functor::FunctorKind;
use bfk_core::group::SectionClass;
use bfk_core::limit::{inverse_limit, nested_pairs, reverify, CoefficientSystem};
use bfk_core::Result;
use serde_json::{json, Value};

pub const CLAIMS: &[&str] = &["limit.eta", "limit.system"];

fn pair_json(p: Option<((usize, usize), (usize, usize))>) -> Value {
    p.map_or(Value::Null, |(a, c)| json!([[a.0, a.1], [c.0, c.1]]))
}

/// `lim_Y F` for a functor on the group, re-verified on all nested pairs,
/// with the unit `F(P) → lim`.
pub fn eta(g: &Group, class: SectionClass, functor: FunctorKind) -> Result<VerificationReport> {
    let sys = g.store.system(&g.ctx, class, functor, false)?;
    let lim = g.store.limit(&sys)?;
    let bad = sys.reverify(&lim, true)?;
    let eta = sys.eta_report(&lim)?;
    Ok(g.report(
        "limit.eta",
        Status::from_bool(bad.is_none()),
        json!({
            "class": class.to_string(),
            "functor": functor.to_string(),
            "sections": sys.system().len(),
            "limit": invariants_json(&eta.limit),
            "limit_basis": matrix_json(lim.basis()),
            "source_rank": eta.source_rank,
            "eta_injective": eta.injective,
            "eta_iso": eta.iso,
            "eta_cokernel": invariants_json(&eta.cokernel),
            "failing_pair": pair_json(bad),
        }),
    ))
}

/// Validates a system given as JSON over the group's lattice and checks its
/// limit against the system's own composite maps.
pub fn ingest(g: &Group, text: &str) -> Result<VerificationReport> {
    let sys = CoefficientSystem::from_json(g.ctx.lattice_arc().clone(), text)?;
    let lim = inverse_limit(&sys)?;
    let bad = reverify(&sys, &lim, &nested_pairs(&sys), |a, c| sys.defres(a, c))?;
    let secs = sys.sections();
    let bad = bad.map(|(a, c)| (secs[a], secs[c]));
    Ok(g.report(
        "limit.system",
        Status::from_bool(bad.is_none()),
        json!({
            "sections": sys.len(),
            "limit": invariants_json(&lim.invariants()),
            "limit_basis": matrix_json(lim.basis()),
            "failing_pair": pair_json(bad),
        }),
    ))
}
