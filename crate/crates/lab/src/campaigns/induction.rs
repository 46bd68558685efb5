//! Ranks of `B`, `R_Q` and `K`, and the generation of `K` by sections.

use super::Group;
use crate::report::{ints_json, invariants_json, Status, VerificationReport};
use bfk_core::group::{section_keys_in_class, SectionClass, SectionClassLabel};
use bfk_core::lattice::{Int, IntegerLattice};
use bfk_core::Result;
use serde_json::json;

pub const CLAIMS: &[&str] = &[
    "induction.delta-identity",
    "induction.e2-sum",
    "induction.p-multiple",
    "induction.rank-two",
    "induction.ranks",
    "induction.x2-sum",
];

pub fn run(g: &Group) -> Result<Vec<VerificationReport>> {
    let ctx = &g.ctx;
    let l = ctx.lattice();
    let p = l.group().prime();
    let top = (l.whole(), l.trivial());
    let b = ctx.whole();
    let mut out = Vec::new();

    // Independent counts from the lattice against the kernel computation.
    let classes = l.classes().len();
    let cyclic = l.classes().iter().filter(|c| l.is_cyclic(c[0])).count();
    let lin_rank = b.linearization().rank();
    let ok = b.rank() == classes && lin_rank == cyclic && b.k_rank() == classes - cyclic;
    out.push(g.report(
        "induction.ranks",
        Status::from_bool(ok),
        json!({
            "b_rank": b.rank(),
            "linearization_rank": lin_rank,
            "k_rank": b.k_rank(),
            "subgroup_classes": classes,
            "cyclic_classes": cyclic,
        }),
    ));

    if ctx.label(top)? == SectionClassLabel::ElementaryAbelian(2) {
        let eps = ctx.epsilon(top)?;
        let span = IntegerLattice::from_vectors(eps.len(), vec![eps.clone()])?;
        let q = p as usize;
        let ok = b.rank() == q + 3 && lin_rank == q + 2 && b.k_lattice() == span;
        out.push(g.report(
            "induction.rank-two",
            Status::from_bool(ok),
            json!({
                "b_rank": b.rank(),
                "linearization_rank": lin_rank,
                "epsilon": ints_json(&eps),
                "k_basis": crate::report::matrix_json(b.k_basis()),
            }),
        ));
    }

    let k = b.k_lattice();
    let x2 = ctx.k_from_class(top, SectionClass::X2)?;
    out.push(g.report(
        "induction.x2-sum",
        Status::from_bool(x2 == k),
        json!({ "k_rank": k.rank(), "sum_rank": x2.rank(), "index": invariants_json(&k.quotient_invariants(&x2)?) }),
    ));
    let e2 = ctx.k_from_class(top, SectionClass::E2)?;
    let k_eps = ctx.k_epsilon(top)?;
    out.push(g.report(
        "induction.e2-sum",
        Status::from_bool(e2 == k_eps),
        json!({ "sum_rank": e2.rank(), "k_eps_rank": k_eps.rank() }),
    ));
    let pk = k.scaled(&Int::from(p));
    out.push(g.report(
        "induction.p-multiple",
        Status::from_bool(k_eps.contains(&pk)?),
        json!({ "k_mod_k_eps": invariants_json(&k.quotient_invariants(&k_eps)?) }),
    ));

    let mut checked = 0usize;
    let mut failure = None;
    for key in section_keys_in_class(l, SectionClass::X) {
        if ctx.label(key)? != SectionClassLabel::ExtraspecialP3ExpP {
            continue;
        }
        let (t, s) = key;
        let d = ctx.delta(key)?;
        let ind = |sub| -> Result<Vec<Int>> { ctx.indinf_vector((sub, s), key, &ctx.epsilon((sub, s))?) };
        let (a, c) = (ind(d.jz)?, ind(d.iz)?);
        let lhs: Vec<Int> = a.iter().zip(&c).map(|(x, y)| x - y).collect();
        let rhs: Vec<Int> = d.delta.iter().map(|x| x * Int::from(p)).collect();
        checked += 1;
        if lhs != rhs && failure.is_none() {
            failure = Some(json!({ "section": [t, s], "lhs": ints_json(&lhs), "p_delta": ints_json(&rhs) }));
        }
    }
    if checked > 0 {
        let mut w = json!({ "sections": checked });
        if ctx.label(top)? == SectionClassLabel::ExtraspecialP3ExpP {
            let d = ctx.delta(top)?;
            w["delta"] = ints_json(&d.delta);
        }
        let ok = failure.is_none();
        if let Some(f) = failure {
            w["counterexample"] = f;
        }
        out.push(g.report("induction.delta-identity", Status::from_bool(ok), w));
    }
    Ok(out)
}
