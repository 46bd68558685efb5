//! The functors evaluated on sections: `B`, `K` and their duals.
//!
//! Every structure map is derived from a `B`-level map `f` and the `B`-level
//! map `g` of the opposite biset: `B` uses `f`, `K` its restriction to `K`,
//! `B*` uses `gᵀ` and `K*` the transpose of `g` restricted to `K`.

use crate::burnside::{k_matrix, BisetOnSections, BurnsideContext, SectionKey, SparseMap};
use crate::error::{Error, Result};
use crate::lattice::Matrix;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FunctorKind {
    B,
    K,
    BDual,
    KDual,
}

impl FunctorKind {
    pub const ALL: [FunctorKind; 4] = [FunctorKind::B, FunctorKind::K, FunctorKind::BDual, FunctorKind::KDual];

    pub fn is_dual(self) -> bool {
        matches!(self, FunctorKind::BDual | FunctorKind::KDual)
    }

    pub fn rank(self, ctx: &BurnsideContext, key: SectionKey) -> Result<usize> {
        let b = ctx.section(key)?;
        Ok(match self {
            FunctorKind::B | FunctorKind::BDual => b.rank(),
            FunctorKind::K | FunctorKind::KDual => b.k_rank(),
        })
    }

    /// `F(W): F(src) → F(dst)` for a morphism whose `B`-level map is `f`
    /// (`B(src) → B(dst)`) and whose opposite has `B`-level map `g`.
    pub fn from_pair(
        self,
        ctx_src: &BurnsideContext,
        src: SectionKey,
        ctx_dst: &BurnsideContext,
        dst: SectionKey,
        f: impl FnOnce() -> Result<SparseMap>,
        g: impl FnOnce() -> Result<SparseMap>,
    ) -> Result<Matrix> {
        match self {
            FunctorKind::B => Ok(f()?.to_matrix()),
            FunctorKind::K => k_matrix(&f()?, &*ctx_src.section(src)?, &*ctx_dst.section(dst)?),
            FunctorKind::BDual => Ok(g()?.to_matrix().transpose()),
            FunctorKind::KDual => Ok(k_matrix(&g()?, &*ctx_dst.section(dst)?, &*ctx_src.section(src)?)?.transpose()),
        }
    }

    /// `F(Defres^{T/S}_{T'/S'})`.
    pub fn defres(self, ctx: &BurnsideContext, big: SectionKey, small: SectionKey) -> Result<Matrix> {
        self.from_pair(
            ctx,
            big,
            ctx,
            small,
            || ctx.defres(big, small),
            || ctx.indinf(small, big),
        )
    }

    /// `F(Indinf^{T/S}_{T'/S'})`.
    pub fn indinf(self, ctx: &BurnsideContext, small: SectionKey, big: SectionKey) -> Result<Matrix> {
        self.from_pair(
            ctx,
            small,
            ctx,
            big,
            || ctx.indinf(small, big),
            || ctx.defres(big, small),
        )
    }

    /// `F(Conj_x): F(T/S) → F(ˣT/ˣS)`.
    pub fn conj(self, ctx: &BurnsideContext, x: usize, key: SectionKey) -> Result<Matrix> {
        let l = ctx.lattice();
        let target = (l.conjugate(x, key.0), l.conjugate(x, key.1));
        let xi = l.group().inv(x);
        self.from_pair(ctx, key, ctx, target, || ctx.conj(x, key), || ctx.conj(xi, target))
    }

    /// `F(S\Tu): F(Tᵘ/Sᵘ) → F(T/S)`, the term of the action on limits.
    pub fn biset_term(self, on: &BisetOnSections<'_>, sec: SectionKey, u: usize) -> Result<Matrix> {
        let src = on.transported(sec, u);
        self.from_pair(
            on.p_context(),
            src,
            on.q_context(),
            sec,
            || on.forward(sec, u),
            || on.backward(sec, u),
        )
    }

    /// Same as [`FunctorKind::biset_term`], by orbit counting on the concrete biset.
    pub fn biset_term_by_orbits(self, on: &BisetOnSections<'_>, sec: SectionKey, u: usize) -> Result<Matrix> {
        let src = on.transported(sec, u);
        self.from_pair(
            on.p_context(),
            src,
            on.q_context(),
            sec,
            || on.forward_by_orbits(sec, u),
            || on.backward_by_orbits(sec, u),
        )
    }
}

impl fmt::Display for FunctorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FunctorKind::B => "B",
            FunctorKind::K => "K",
            FunctorKind::BDual => "Bdual",
            FunctorKind::KDual => "Kdual",
        })
    }
}

impl FromStr for FunctorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" => Ok(FunctorKind::B),
            "K" => Ok(FunctorKind::K),
            "Bdual" | "B*" => Ok(FunctorKind::BDual),
            "Kdual" | "K*" => Ok(FunctorKind::KDual),
            _ => Err(Error::Domain(format!(
                "unknown functor `{s}` (expected B, K, Bdual or Kdual)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biset::ConcreteBiset;
    use crate::burnside::tests::context;
    use crate::group::SectionClass;

    #[test]
    fn names_round_trip() {
        for f in FunctorKind::ALL {
            assert_eq!(f.to_string().parse::<FunctorKind>().unwrap(), f);
        }
        assert!("D".parse::<FunctorKind>().is_err());
    }

    #[test]
    fn dual_defres_is_transposed_indinf() {
        let ctx = context("elab:3:3");
        let whole = (ctx.lattice().whole(), 0);
        for sub in ctx.subsections(whole, SectionClass::E2).unwrap().into_iter().take(20) {
            let d = FunctorKind::KDual.defres(&ctx, whole, sub).unwrap();
            let i = FunctorKind::K.indinf(&ctx, sub, whole).unwrap();
            assert_eq!(d, i.transpose());
        }
    }

    #[test]
    fn biset_terms_agree_for_all_kinds() {
        let ctx = context("xsp:3");
        let id = ConcreteBiset::identity(ctx.lattice().group_arc().clone());
        let on = BisetOnSections::new(&ctx, &ctx, &id).unwrap();
        let whole = (ctx.lattice().whole(), 0);
        for f in FunctorKind::ALL {
            for (u, _) in on.terms(whole) {
                assert_eq!(
                    f.biset_term(&on, whole, u).unwrap(),
                    f.biset_term_by_orbits(&on, whole, u).unwrap()
                );
            }
        }
    }
}
