//! Action of concrete bisets on Burnside groups, both by orbit counting on
//! the biset (the reference route) and by the transporter formulas used when
//! a biset acts on sections.

use super::{BurnsideContext, SectionKey, SparseMap};
use crate::biset::ConcreteBiset;
use crate::error::{Error, Result};
use crate::group::{ElemSet, FiniteGroup, SubgroupId, SubgroupLattice};
use std::sync::Arc;

/// Matrix of `B(U): B(P) → B(Q)` for a `(Q, P)`-biset, over the conjugacy
/// classes of subgroups of the two lattices. `U ×_P P/A` splits as
/// `⊔_{u ∈ [Q\U/A]} Q/ᵘA`.
pub fn act_on_burnside(lq: &SubgroupLattice, lp: &SubgroupLattice, u: &ConcreteBiset) -> Result<SparseMap> {
    if !lq.group().same_table(u.left_group()) || !lp.group().same_table(u.right_group()) {
        return Err(Error::GroupMismatch("biset groups differ from the lattices".into()));
    }
    let nq = lq.group().order();
    let all_q = ElemSet::from_iter(nq, 0..nq);
    let cols = lp
        .classes()
        .iter()
        .map(|cls| {
            let a = lp.subgroup(cls[0]).set();
            u.double_coset_reps(&all_q, a)
                .into_iter()
                .map(|r| {
                    let st = u.left_transporter(r, a);
                    let id = lq.id_of(&st).expect("transporters are subgroups");
                    (lq.class_of(id), 1)
                })
                .collect()
        })
        .collect();
    Ok(SparseMap::new(lq.classes().len(), cols))
}

/// For a lattice `ql` of the quotient group `T/S` built with projection
/// `proj` (parent element → coset index, `usize::MAX` outside `T`), the basis
/// index in `B(T/S)` of each conjugacy class of `ql`.
pub fn quotient_correspondence(
    ctx: &BurnsideContext,
    key: SectionKey,
    ql: &SubgroupLattice,
    proj: &[usize],
) -> Result<Vec<usize>> {
    let sb = ctx.section(key)?;
    let l = ctx.lattice();
    let n = l.group().order();
    ql.classes()
        .iter()
        .map(|cls| {
            let sub = ql.subgroup(cls[0]).set();
            let pre = ElemSet::from_iter(n, (0..n).filter(|&x| proj[x] != usize::MAX && sub.contains(proj[x])));
            let id = l
                .id_of(&pre)
                .ok_or_else(|| Error::Domain("projection does not match the section".into()))?;
            sb.class_of(id)
                .ok_or_else(|| Error::Domain("preimage lies outside the section".into()))
        })
        .collect()
}

/// A quotient `T/S` of a section materialized as a group with its own
/// lattice, for running the orbit-counting route on it.
struct QuotientModel {
    group: Arc<FiniteGroup>,
    lattice: SubgroupLattice,
    to_section: Vec<usize>,
}

impl QuotientModel {
    fn new(ctx: &BurnsideContext, key: SectionKey) -> Result<Self> {
        let l = ctx.lattice();
        let g = l.group();
        let (tg, emb) = g.subgroup_table(l.subgroup(key.0).set())?;
        let s_local = local_set(&emb, l.subgroup(key.1).members());
        let all = ElemSet::from_iter(tg.order(), 0..tg.order());
        let (q, proj_local, _) = tg.quotient_table(&all, &s_local)?;
        let mut proj = vec![usize::MAX; g.order()];
        for (i, &x) in emb.iter().enumerate() {
            proj[x] = proj_local[i];
        }
        let group = Arc::new(q);
        let lattice = SubgroupLattice::with_bound(group.clone(), usize::MAX)?;
        let to_section = quotient_correspondence(ctx, key, &lattice, &proj)?;
        Ok(QuotientModel {
            group,
            lattice,
            to_section,
        })
    }
}

fn local_set(emb: &[usize], members: &[usize]) -> ElemSet {
    ElemSet::from_iter(
        emb.len(),
        members
            .iter()
            .map(|m| emb.binary_search(m).expect("member of the subgroup")),
    )
}

/// A `(Q, P)`-biset acting from sections of `P` to sections of `Q`: the
/// term `S\Tu` of the action formula on limits, as a
/// `(T/S, Tᵘ/Sᵘ)`-biset, together with its effect on Burnside groups.
pub struct BisetOnSections<'a> {
    q: &'a BurnsideContext,
    p: &'a BurnsideContext,
    u: &'a ConcreteBiset,
}

impl<'a> BisetOnSections<'a> {
    pub fn new(q: &'a BurnsideContext, p: &'a BurnsideContext, u: &'a ConcreteBiset) -> Result<Self> {
        if !q.lattice().group().same_table(u.left_group()) || !p.lattice().group().same_table(u.right_group()) {
            return Err(Error::GroupMismatch("biset groups differ from the contexts".into()));
        }
        Ok(BisetOnSections { q, p, u })
    }

    pub fn biset(&self) -> &ConcreteBiset {
        self.u
    }

    pub fn q_context(&self) -> &'a BurnsideContext {
        self.q
    }

    pub fn p_context(&self) -> &'a BurnsideContext {
        self.p
    }

    fn q_id(&self, set: &ElemSet) -> SubgroupId {
        self.q.lattice().id_of(set).expect("transporters are subgroups")
    }

    fn p_id(&self, set: &ElemSet) -> SubgroupId {
        self.p.lattice().id_of(set).expect("transporters are subgroups")
    }

    /// `(Tᵘ, Sᵘ)`, a section of `P`.
    pub fn transported(&self, sec: SectionKey, u: usize) -> SectionKey {
        let lq = self.q.lattice();
        (
            self.p_id(&self.u.right_transporter(lq.subgroup(sec.0).set(), u)),
            self.p_id(&self.u.right_transporter(lq.subgroup(sec.1).set(), u)),
        )
    }

    /// Representatives `[T\U/P]` with the transported section of each.
    pub fn terms(&self, sec: SectionKey) -> Vec<(usize, SectionKey)> {
        let np = self.p.lattice().group().order();
        let all_p = ElemSet::from_iter(np, 0..np);
        self.u
            .double_coset_reps(self.q.lattice().subgroup(sec.0).set(), &all_p)
            .into_iter()
            .map(|u| (u, self.transported(sec, u)))
            .collect()
    }

    /// `((T ∩ ᵘP)S, (T ∩ ᵘ1)S)`: the section of `T/S` through which `S\Tu`
    /// factors as an inflation-induction after an isomorphism.
    pub fn image_section(&self, sec: SectionKey, u: usize) -> SectionKey {
        let lq = self.q.lattice();
        let np = self.p.lattice().group().order();
        let up = self.q_id(&self.u.left_transporter(u, &ElemSet::from_iter(np, 0..np)));
        let u1 = self.q_id(&self.u.left_transporter(u, &ElemSet::from_iter(np, [0])));
        (
            lq.join(lq.intersection(sec.0, up), sec.1),
            lq.join(lq.intersection(sec.0, u1), sec.1),
        )
    }

    /// `B(S\Tu): B(Tᵘ/Sᵘ) → B(T/S)` as `Indinf ∘ Iso`: `A ↦ (T ∩ ᵘA)S`.
    pub fn forward(&self, sec: SectionKey, u: usize) -> Result<SparseMap> {
        let src_key = self.transported(sec, u);
        let mid_key = self.image_section(sec, u);
        let src = self.p.section(src_key)?;
        let mid = self.q.section(mid_key)?;
        let lq = self.q.lattice();
        let iso = SparseMap::new(
            mid.rank(),
            (0..src.rank())
                .map(|c| {
                    let a = self.p.lattice().subgroup(src.representative(c)).set();
                    let img = lq.join(lq.intersection(sec.0, self.q_id(&self.u.left_transporter(u, a))), sec.1);
                    vec![(mid.class_of(img).expect("image lies in the middle section"), 1)]
                })
                .collect(),
        );
        compose(&self.q.indinf(mid_key, sec)?, &iso)
    }

    /// `B((S\Tu)^op): B(T/S) → B(Tᵘ/Sᵘ)` as `Iso⁻¹ ∘ Defres`: `D ↦ Dᵘ` after
    /// deflation-restriction to `((T ∩ ᵘP)S, (T ∩ ᵘ1)S)`.
    pub fn backward(&self, sec: SectionKey, u: usize) -> Result<SparseMap> {
        let dst_key = self.transported(sec, u);
        let mid_key = self.image_section(sec, u);
        let dst = self.p.section(dst_key)?;
        let mid = self.q.section(mid_key)?;
        let lq = self.q.lattice();
        let iso = SparseMap::new(
            dst.rank(),
            (0..mid.rank())
                .map(|c| {
                    let d = lq.subgroup(mid.representative(c)).set();
                    let img = self.p_id(&self.u.right_transporter(d, u));
                    vec![(dst.class_of(img).expect("image lies in the transported section"), 1)]
                })
                .collect(),
        );
        compose(&iso, &self.q.defres(sec, mid_key)?)
    }

    /// The concrete `(T/S, Tᵘ/Sᵘ)`-biset `S\Tu`.
    pub fn term_biset(&self, sec: SectionKey, u: usize) -> Result<ConcreteBiset> {
        let (lq, lp) = (self.q.lattice(), self.p.lattice());
        let (tu, su) = self.transported(sec, u);
        let w = self.u.restrict_left(lq.subgroup(sec.0).set())?;
        let w = w.restrict_right(lp.subgroup(tu).set())?;
        // T·u, numbered in increasing order
        let mut orbit: Vec<usize> = (0..w.left_group().order()).map(|x| w.act_left(x, u)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        let w = w.sub_biset(&orbit)?;
        let (lg, rg) = (w.left_group().clone(), w.right_group().clone());
        let all_l = ElemSet::from_iter(lg.order(), 0..lg.order());
        let all_r = ElemSet::from_iter(rg.order(), 0..rg.order());
        let s_local = local_set(lq.subgroup(sec.0).members(), lq.subgroup(sec.1).members());
        let su_local = local_set(lp.subgroup(tu).members(), lp.subgroup(su).members());
        w.left_quotient(&all_l, &s_local)?.right_quotient(&all_r, &su_local)
    }

    /// `B(S\Tu)` by orbit counting on the concrete biset, in section bases.
    pub fn forward_by_orbits(&self, sec: SectionKey, u: usize) -> Result<SparseMap> {
        let w = self.term_biset(sec, u)?;
        let left = QuotientModel::new(self.q, sec)?;
        let right = QuotientModel::new(self.p, self.transported(sec, u))?;
        let m = act_on_burnside(&left.lattice, &right.lattice, &rebase(&w, &left.group, &right.group)?)?;
        Ok(translate(
            &m,
            &right.to_section,
            &left.to_section,
            self.q.section(sec)?.rank(),
        ))
    }

    /// `B((S\Tu)^op)` by orbit counting, in section bases.
    pub fn backward_by_orbits(&self, sec: SectionKey, u: usize) -> Result<SparseMap> {
        let w = self.term_biset(sec, u)?.opposite();
        let dst = self.transported(sec, u);
        let left = QuotientModel::new(self.p, dst)?;
        let right = QuotientModel::new(self.q, sec)?;
        let m = act_on_burnside(&left.lattice, &right.lattice, &rebase(&w, &left.group, &right.group)?)?;
        Ok(translate(
            &m,
            &right.to_section,
            &left.to_section,
            self.p.section(dst)?.rank(),
        ))
    }
}

/// The same biset over groups with identical tables (labels may differ).
fn rebase(w: &ConcreteBiset, left: &Arc<FiniteGroup>, right: &Arc<FiniteGroup>) -> Result<ConcreteBiset> {
    if !w.left_group().same_table(left) || !w.right_group().same_table(right) {
        return Err(Error::GroupMismatch("quotient tables differ".into()));
    }
    Ok(w.clone())
}

/// Rewrites a map between lattice-class bases into section bases. Distinct
/// lattice classes of a quotient correspond to distinct section classes.
fn translate(m: &SparseMap, src: &[usize], dst: &[usize], rows: usize) -> SparseMap {
    let mut cols = vec![Vec::new(); src.len()];
    for (j, &sj) in src.iter().enumerate() {
        cols[sj] = m.column(j).iter().map(|&(r, v)| (dst[r], v)).collect();
    }
    SparseMap::new(rows, cols)
}

/// `a ∘ b`.
pub fn compose(a: &SparseMap, b: &SparseMap) -> Result<SparseMap> {
    if a.ncols() != b.nrows() {
        return Err(Error::Dimension {
            expected: a.ncols(),
            found: b.nrows(),
        });
    }
    let cols = (0..b.ncols())
        .map(|j| {
            let mut out = Vec::new();
            for &(k, x) in b.column(j) {
                for &(r, y) in a.column(k) {
                    out.push((r, x * y));
                }
            }
            out
        })
        .collect();
    Ok(SparseMap::new(a.nrows(), cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::tests::context;

    #[test]
    fn identity_acts_trivially() {
        let ctx = context("xsp:3");
        let l = ctx.lattice();
        let id = ConcreteBiset::identity(l.group_arc().clone());
        let m = act_on_burnside(l, l, &id).unwrap();
        assert_eq!(m.to_matrix(), crate::lattice::Matrix::identity(l.classes().len()));
    }

    #[test]
    fn restriction_to_trivial_counts_points() {
        let ctx = context("elab:3:2");
        let l = ctx.lattice();
        let g = l.group_arc().clone();
        let (h, emb) = g.subgroup_table(&ElemSet::from_iter(9, [0])).unwrap();
        let h = Arc::new(h);
        let lh = SubgroupLattice::new(h.clone()).unwrap();
        let res = ConcreteBiset::restriction(g, h, &emb).unwrap();
        let m = act_on_burnside(&lh, l, &res).unwrap().to_matrix();
        let want: Vec<i64> = l.classes().iter().map(|c| (9 / l.order_of(c[0])) as i64).collect();
        assert_eq!(m.to_i64().unwrap(), vec![want]);
    }

    #[test]
    fn section_terms_match_orbit_counting() {
        let ctx = context("xsp:3");
        let l = ctx.lattice();
        let g = l.group_arc().clone();
        let id = ConcreteBiset::identity(g);
        let on = BisetOnSections::new(&ctx, &ctx, &id).unwrap();
        let z = l.id_of(&l.group().center()).unwrap();
        for key in [(l.whole(), 0), (l.whole(), z), (z, 0)] {
            for (u, _) in on.terms(key) {
                assert_eq!(on.forward(key, u).unwrap(), on.forward_by_orbits(key, u).unwrap());
                assert_eq!(on.backward(key, u).unwrap(), on.backward_by_orbits(key, u).unwrap());
            }
        }
    }
}
