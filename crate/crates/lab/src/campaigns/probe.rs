//! The counit `L_X O_X K → K` and its kernel `M(P)`.

use super::Group;
use crate::report::{invariants_json, Status, VerificationReport};
use bfk_core::functor::FunctorKind;
use bfk_core::group::SectionClass;
use bfk_core::Result;
use serde_json::json;

pub const CLAIMS: &[&str] = &["probe.counit-surjective", "probe.m-finite"];

pub fn run(g: &Group) -> Result<Vec<VerificationReport>> {
    let sys = g.store.system(&g.ctx, SectionClass::X, FunctorKind::K, true)?;
    let m = sys.probe_m()?;
    let w = json!({
        "sections": sys.system().len(),
        "sum_rank": m.sum_rank,
        "colimit_generators": m.colimit_generators,
        "colimit": invariants_json(&m.colimit),
        "k_rank": m.target_rank,
        "counit_cokernel": invariants_json(&m.counit_cokernel),
        "m": invariants_json(&m.m),
        "m_is_zero": m.m.is_zero(),
    });
    Ok(vec![
        g.report("probe.counit-surjective", Status::from_bool(m.surjective), w.clone()),
        g.report("probe.m-finite", Status::from_bool(m.finite), w),
    ])
}
