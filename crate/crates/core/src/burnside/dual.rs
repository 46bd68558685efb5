//! Duals `B*`, `K*` and the dual of the linearization sequence
//! `0 → R_Q* → B* → K* → 0`.
//!
//! `B*(T/S)` is identified with integer row vectors on `B(T/S)` and `K*(T/S)`
//! with the coordinates dual to the chosen `K` basis. `R_Q(T/S)` is the image
//! of the linearization matrix `L`; writing `L = Bm·M` with `Bm` a basis of
//! that image, `R_Q* → B*` is `Mᵀ`.

use super::{k_matrix, BurnsideContext, SectionKey, SparseMap};
use crate::error::Result;
use crate::lattice::{cokernel_invariants, IntegerLattice, Matrix, QuotientInvariants};

/// The factorization `L = Bm·M` of the linearization of a section.
#[derive(Clone, Debug)]
pub struct LinearizationDual {
    /// Basis of the image of `L` (as rows).
    pub image_basis: Matrix,
    /// Coordinates of the columns of `L` in `image_basis`, one row per
    /// basis vector: the matrix of `B → R_Q`.
    pub m: Matrix,
}

/// Outcome of checking the dual sequence at one section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequenceCheck {
    pub b_rank: usize,
    pub rq_rank: usize,
    pub k_rank: usize,
    /// Structure of `B*/R_Q*`.
    pub quotient: QuotientInvariants,
    /// Kernel of `B* → K*` equals the image of `R_Q*`.
    pub kernel_matches: bool,
    /// `B* → K*` is onto.
    pub surjective: bool,
}

impl ExactSequenceCheck {
    pub fn holds(&self) -> bool {
        self.b_rank == self.rq_rank + self.k_rank
            && self.quotient.is_free()
            && self.quotient.free_rank == self.k_rank
            && self.kernel_matches
            && self.surjective
    }
}

impl BurnsideContext {
    pub fn linearization_dual(&self, key: SectionKey) -> Result<LinearizationDual> {
        let b = self.section(key)?;
        let lin = b.linearization();
        let cols = lin.transpose();
        let image = IntegerLattice::from_generators(&cols);
        let mut m = Matrix::zeros(image.rank(), b.rank());
        for (j, c) in cols.rows().iter().enumerate() {
            let coords = image.coords(c)?.expect("columns lie in their span");
            for (i, x) in coords.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(LinearizationDual {
            image_basis: image.basis().clone(),
            m,
        })
    }

    pub fn check_exact_sequence(&self, key: SectionKey) -> Result<ExactSequenceCheck> {
        let b = self.section(key)?;
        let dual = self.linearization_dual(key)?;
        let rq = IntegerLattice::from_generators(&dual.m);
        let annihilator = IntegerLattice::kernel_of(b.k_basis());
        let surjective = if b.k_rank() == 0 {
            true
        } else {
            cokernel_invariants(&b.k_basis().transpose()).is_zero()
        };
        Ok(ExactSequenceCheck {
            b_rank: b.rank(),
            rq_rank: dual.m.nrows(),
            k_rank: b.k_rank(),
            quotient: cokernel_invariants(&dual.m),
            kernel_matches: annihilator == rq,
            surjective,
        })
    }

    /// Whether restriction `B* → K*` commutes with the dual of a `B`-level
    /// map `f: B(src) → B(dst)`: `res_src ∘ fᵀ = K(f)ᵀ ∘ res_dst`.
    pub fn dual_commutes(&self, f: &SparseMap, src: SectionKey, dst: SectionKey) -> Result<bool> {
        let (a, b) = (self.section(src)?, self.section(dst)?);
        let lhs = a.k_basis().mul(&f.to_matrix().transpose())?;
        let rhs = k_matrix(f, &a, &b)?.transpose().mul(b.k_basis())?;
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use crate::burnside::tests::context;
    use crate::group::SectionClass;

    #[test]
    fn rank_two_sequence() {
        let ctx = context("elab:3:2");
        let c = ctx.check_exact_sequence((ctx.lattice().whole(), 0)).unwrap();
        assert_eq!((c.b_rank, c.rq_rank, c.k_rank), (6, 5, 1));
        assert!(c.holds());
    }

    #[test]
    fn trivial_sequence() {
        let ctx = context("trivial:3");
        let c = ctx.check_exact_sequence((0, 0)).unwrap();
        assert_eq!((c.b_rank, c.rq_rank, c.k_rank), (1, 1, 0));
        assert!(c.holds());
    }

    #[test]
    fn dual_maps_commute_with_restriction() {
        let ctx = context("xsp:3");
        let whole = (ctx.lattice().whole(), 0);
        for sub in ctx.subsections(whole, SectionClass::X).unwrap() {
            let ind = ctx.indinf(sub, whole).unwrap();
            assert!(ctx.dual_commutes(&ind, sub, whole).unwrap());
            let def = ctx.defres(whole, sub).unwrap();
            assert!(ctx.dual_commutes(&def, whole, sub).unwrap());
        }
    }
}
