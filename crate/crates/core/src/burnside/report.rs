//! JSON summary of `F(P)` as a lattice: `{group, functor, rank, hnf_basis,
//! invariant_factors}`.
//!
//! `B` and `B*` are reported with the identity basis. `K` is the Hermite
//! basis of `K(P)` inside `B(P)`. `K*` is reported through the dual sequence:
//! `hnf_basis` spans `R_Q*(P)` inside `B*(P)` and `rank` is the rank of the
//! quotient `K*(P)`. `invariant_factors` are the nonzero Smith invariants of
//! `hnf_basis`; all ones means the sublattice is saturated.

use super::{BurnsideContext, SectionKey};
use crate::error::Result;
use crate::functor::FunctorKind;
use crate::lattice::{hnf, int_to_json, invariant_factors, matrix_to_json, Matrix};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    pub group: String,
    pub functor: FunctorKind,
    pub rank: usize,
    pub hnf_basis: Matrix,
    pub invariant_factors: Vec<crate::lattice::Int>,
}

impl LatticeReport {
    pub fn compute(ctx: &BurnsideContext, key: SectionKey, functor: FunctorKind) -> Result<Self> {
        let b = ctx.section(key)?;
        let (rank, basis) = match functor {
            FunctorKind::B | FunctorKind::BDual => (b.rank(), Matrix::identity(b.rank())),
            FunctorKind::K => (b.k_rank(), b.k_basis().clone()),
            FunctorKind::KDual => (b.k_rank(), hnf(&ctx.linearization_dual(key)?.m)),
        };
        Ok(LatticeReport {
            group: ctx.lattice().group().label().to_string(),
            functor,
            rank,
            invariant_factors: invariant_factors(&basis),
            hnf_basis: basis,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group,
            "functor": self.functor.to_string(),
            "rank": self.rank,
            "hnf_basis": matrix_to_json(&self.hnf_basis),
            "invariant_factors": self.invariant_factors.iter().map(int_to_json).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::tests::context;

    #[test]
    fn kernel_report_for_rank_two() {
        let ctx = context("elab:3:2");
        let r = LatticeReport::compute(&ctx, (ctx.lattice().whole(), 0), FunctorKind::K).unwrap();
        assert_eq!(r.rank, 1);
        let v = r.to_json();
        assert_eq!(v["hnf_basis"], json!([[1, -1, -1, -1, -1, 3]]));
        assert_eq!(v["invariant_factors"], json!([1]));
        let d = LatticeReport::compute(&ctx, (ctx.lattice().whole(), 0), FunctorKind::KDual).unwrap();
        assert_eq!(d.rank, 1);
        assert_eq!(d.invariant_factors.len(), 5);
    }
}
