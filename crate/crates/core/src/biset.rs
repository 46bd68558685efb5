//! Finite bisets stored point by point: a `(Q, P)`-biset is a set with a left
//! `Q`-action and a right `P`-action that commute. These are the reference
//! objects every formula elsewhere in the crate is tested against.

use crate::error::{Error, Result};
use crate::group::{ElemSet, FiniteGroup};
use petgraph::unionfind::UnionFind;
use std::sync::Arc;

#[derive(Clone)]
pub struct ConcreteBiset {
    left: Arc<FiniteGroup>,
    right: Arc<FiniteGroup>,
    points: usize,
    // lact[x * points + u] = x·u
    lact: Vec<u32>,
    // ract[u * |P| + y] = u·y
    ract: Vec<u32>,
}

impl std::fmt::Debug for ConcreteBiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ConcreteBiset({} points, left {:?}, right {:?})",
            self.points, self.left, self.right
        )
    }
}

/// Stabilizer in `Q × P^op` of a point of a transitive biset, as sorted pairs
/// `(x, y)` with `x·u = u·y`. Canonical over the orbit: the least stabilizer
/// among all points of the orbit, which is the least among its conjugates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransitiveBisetLabel {
    pub stabilizer: Vec<(u32, u32)>,
}

impl TransitiveBisetLabel {
    /// Number of points of the transitive biset with this stabilizer.
    pub fn orbit_size(&self, q: usize, p: usize) -> usize {
        q * p / self.stabilizer.len()
    }
}

/// The kinds of elementary bisets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryKind {
    Res,
    Ind,
    Inf,
    Def,
    Iso,
    Conj,
}

impl ConcreteBiset {
    /// Builds a biset from raw action tables after checking every axiom.
    pub fn new(
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
        points: usize,
        lact: Vec<u32>,
        ract: Vec<u32>,
    ) -> Result<Self> {
        if lact.len() != left.order() * points || ract.len() != right.order() * points {
            return Err(Error::Biset("action table sizes do not match".into()));
        }
        if lact.iter().chain(&ract).any(|&v| v as usize >= points) {
            return Err(Error::Biset("action sends a point out of range".into()));
        }
        let b = ConcreteBiset {
            left,
            right,
            points,
            lact,
            ract,
        };
        b.check()?;
        Ok(b)
    }

    /// Exhaustively checks the action laws and that the actions commute.
    pub fn check(&self) -> Result<()> {
        let (q, p) = (&*self.left, &*self.right);
        for u in 0..self.points {
            if self.act_left(0, u) != u || self.act_right(u, 0) != u {
                return Err(Error::Biset(format!("identity moves point {u}")));
            }
            for x in 0..q.order() {
                let xu = self.act_left(x, u);
                for x2 in 0..q.order() {
                    if self.act_left(x2, xu) != self.act_left(q.mul(x2, x), u) {
                        return Err(Error::Biset(format!("left action fails at ({x2}, {x}, {u})")));
                    }
                }
                for y in 0..p.order() {
                    if self.act_right(xu, y) != self.act_left(x, self.act_right(u, y)) {
                        return Err(Error::Biset(format!("actions do not commute at ({x}, {u}, {y})")));
                    }
                }
            }
            for y in 0..p.order() {
                let uy = self.act_right(u, y);
                for y2 in 0..p.order() {
                    if self.act_right(uy, y2) != self.act_right(u, p.mul(y, y2)) {
                        return Err(Error::Biset(format!("right action fails at ({u}, {y}, {y2})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The set `G` with `a·u = α(a)·u` and `u·b = u·β(b)` for homomorphisms
    /// `α: A → G`, `β: B → G`.
    pub fn twisted(
        g: &FiniteGroup,
        left: Arc<FiniteGroup>,
        alpha: &[usize],
        right: Arc<FiniteGroup>,
        beta: &[usize],
    ) -> Result<Self> {
        if !left.is_homomorphism(g, alpha) || !right.is_homomorphism(g, beta) {
            return Err(Error::Biset("twisting maps are not homomorphisms".into()));
        }
        let n = g.order();
        let lact = (0..left.order() * n)
            .map(|i| g.mul(alpha[i / n], i % n) as u32)
            .collect();
        let ract = (0..n * right.order())
            .map(|i| g.mul(i / right.order(), beta[i % right.order()]) as u32)
            .collect();
        Ok(ConcreteBiset {
            left,
            right,
            points: n,
            lact,
            ract,
        })
    }

    /// `P` as a `(P, P)`-biset by left and right multiplication.
    pub fn identity(p: Arc<FiniteGroup>) -> Self {
        let id: Vec<usize> = (0..p.order()).collect();
        Self::twisted(&p.clone(), p.clone(), &id, p, &id).expect("identity is a homomorphism")
    }

    /// `P` as an `(H, P)`-biset, `H` embedded in `P` by `emb`.
    pub fn restriction(p: Arc<FiniteGroup>, h: Arc<FiniteGroup>, emb: &[usize]) -> Result<Self> {
        let id: Vec<usize> = (0..p.order()).collect();
        Self::twisted(&p.clone(), h, emb, p, &id)
    }

    /// `P` as a `(P, H)`-biset, `H` embedded in `P` by `emb`.
    pub fn induction(p: Arc<FiniteGroup>, h: Arc<FiniteGroup>, emb: &[usize]) -> Result<Self> {
        let id: Vec<usize> = (0..p.order()).collect();
        Self::twisted(&p.clone(), p, &id, h, emb)
    }

    /// `T/S` as a `(T, T/S)`-biset, `proj: T → T/S`.
    pub fn inflation(t: Arc<FiniteGroup>, q: Arc<FiniteGroup>, proj: &[usize]) -> Result<Self> {
        let id: Vec<usize> = (0..q.order()).collect();
        Self::twisted(&q.clone(), t, proj, q, &id)
    }

    /// `T/S` as a `(T/S, T)`-biset, `proj: T → T/S`.
    pub fn deflation(t: Arc<FiniteGroup>, q: Arc<FiniteGroup>, proj: &[usize]) -> Result<Self> {
        let id: Vec<usize> = (0..q.order()).collect();
        Self::twisted(&q.clone(), q, &id, t, proj)
    }

    /// `Q` as a `(Q, P)`-biset through an isomorphism `f: P → Q`.
    pub fn isomorphism(p: Arc<FiniteGroup>, q: Arc<FiniteGroup>, f: &[usize]) -> Result<Self> {
        let mut seen = vec![false; q.order()];
        if f.len() != p.order() || p.order() != q.order() || f.iter().any(|&y| std::mem::replace(&mut seen[y], true)) {
            return Err(Error::Biset("isomorphism is not bijective".into()));
        }
        let id: Vec<usize> = (0..q.order()).collect();
        Self::twisted(&q.clone(), q, &id, p, f)
    }

    /// Conjugation by `x ∈ G` from `H` to `xHx⁻¹`, both given as subgroups of `g`.
    pub fn conjugation(g: &FiniteGroup, x: usize, h: &ElemSet) -> Result<Self> {
        let (hg, hemb) = g.subgroup_table(h)?;
        let image = ElemSet::from_iter(g.order(), h.iter().map(|a| g.conj(x, a)));
        let (kg, kemb) = g.subgroup_table(&image)?;
        let mut local = vec![usize::MAX; g.order()];
        for (i, &m) in kemb.iter().enumerate() {
            local[m] = i;
        }
        let f: Vec<usize> = hemb.iter().map(|&a| local[g.conj(x, a)]).collect();
        Self::isomorphism(Arc::new(hg), Arc::new(kg), &f)
    }

    /// The transitive left `G`-set `G/H` as a `(G, 1)`-biset; points are the
    /// cosets `aH` numbered by least element.
    pub fn coset_set(g: Arc<FiniteGroup>, h: &ElemSet) -> Result<Self> {
        if !g.is_subgroup(h) {
            return Err(Error::Biset("coset set of a non-subgroup".into()));
        }
        let n = g.order();
        let mut coset = vec![usize::MAX; n];
        let mut count = 0;
        for a in 0..n {
            if coset[a] != usize::MAX {
                continue;
            }
            for b in h.iter() {
                coset[g.mul(a, b)] = count;
            }
            count += 1;
        }
        let reps: Vec<usize> = {
            let mut r = vec![usize::MAX; count];
            for a in (0..n).rev() {
                r[coset[a]] = a;
            }
            r
        };
        let lact = (0..n * count)
            .map(|i| coset[g.mul(i / count, reps[i % count])] as u32)
            .collect();
        let trivial = Arc::new(FiniteGroup::trivial(g.prime())?);
        Ok(ConcreteBiset {
            left: g,
            right: trivial,
            points: count,
            lact,
            ract: (0..count as u32).collect(),
        })
    }

    pub fn left_group(&self) -> &Arc<FiniteGroup> {
        &self.left
    }

    pub fn right_group(&self) -> &Arc<FiniteGroup> {
        &self.right
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points == 0
    }

    #[inline]
    pub fn act_left(&self, x: usize, u: usize) -> usize {
        self.lact[x * self.points + u] as usize
    }

    #[inline]
    pub fn act_right(&self, u: usize, y: usize) -> usize {
        self.ract[u * self.right.order() + y] as usize
    }

    /// `V ×_Q U` for `V` a `(R, Q)`-biset and `U` a `(Q, P)`-biset. Points are
    /// the orbits of `Q` on `V × U` under `q·(v, u) = (v·q⁻¹, q·u)`, numbered
    /// by their least pair `v·|U| + u`.
    pub fn compose(v: &ConcreteBiset, u: &ConcreteBiset) -> Result<ConcreteBiset> {
        Ok(Self::compose_with_pairs(v, u)?.0)
    }

    /// [`ConcreteBiset::compose`] together with the point `(v, u)` of each
    /// pair, indexed by `v·|U| + u`.
    pub fn compose_with_pairs(v: &ConcreteBiset, u: &ConcreteBiset) -> Result<(ConcreteBiset, Vec<u32>)> {
        if !v.right.same_table(&u.left) {
            return Err(Error::GroupMismatch(
                "right group of the first biset differs from the left group of the second".into(),
            ));
        }
        let q = &*u.left;
        let (nv, nu) = (v.points, u.points);
        let total = nv * nu;
        let mut uf = UnionFind::<usize>::new(total);
        let gens = q.generators();
        for a in 0..nv {
            for b in 0..nu {
                for &g in &gens {
                    let other = v.act_right(a, q.inv(g)) * nu + u.act_left(g, b);
                    uf.union(a * nu + b, other);
                }
            }
        }
        let mut index = vec![usize::MAX; total];
        let mut reps = Vec::new();
        for i in 0..total {
            let r = uf.find(i);
            if index[r] == usize::MAX {
                index[r] = reps.len();
                reps.push(i);
            }
        }
        let orbit = |i: usize| index[uf.find(i)] as u32;
        let points = reps.len();
        let mut lact = vec![0u32; v.left.order() * points];
        for x in 0..v.left.order() {
            for (k, &pair) in reps.iter().enumerate() {
                let (a, b) = (pair / nu, pair % nu);
                lact[x * points + k] = orbit(v.act_left(x, a) * nu + b);
            }
        }
        let pr = u.right.order();
        let mut ract = vec![0u32; points * pr];
        for (k, &pair) in reps.iter().enumerate() {
            let (a, b) = (pair / nu, pair % nu);
            for y in 0..pr {
                ract[k * pr + y] = orbit(a * nu + u.act_right(b, y));
            }
        }
        let pairs = (0..total).map(orbit).collect();
        Ok((
            ConcreteBiset {
                left: v.left.clone(),
                right: u.right.clone(),
                points,
                lact,
                ract,
            },
            pairs,
        ))
    }

    /// The `(P, Q)`-biset on the same points: `y·u = u·y⁻¹`, `u·x = x⁻¹·u`.
    pub fn opposite(&self) -> ConcreteBiset {
        let (q, p) = (&*self.left, &*self.right);
        let n = self.points;
        let lact = (0..p.order() * n)
            .map(|i| self.act_right(i % n, p.inv(i / n)) as u32)
            .collect();
        let ract = (0..n * q.order())
            .map(|i| self.act_left(q.inv(i % q.order()), i / q.order()) as u32)
            .collect();
        ConcreteBiset {
            left: self.right.clone(),
            right: self.left.clone(),
            points: n,
            lact,
            ract,
        }
    }

    pub fn disjoint_union(&self, other: &ConcreteBiset) -> Result<ConcreteBiset> {
        if !self.left.same_table(&other.left) || !self.right.same_table(&other.right) {
            return Err(Error::GroupMismatch(
                "disjoint union of bisets over different groups".into(),
            ));
        }
        let (n1, n2) = (self.points, other.points);
        let n = n1 + n2;
        let mut lact = Vec::with_capacity(self.left.order() * n);
        for x in 0..self.left.order() {
            lact.extend((0..n1).map(|u| self.act_left(x, u) as u32));
            lact.extend((0..n2).map(|u| (other.act_left(x, u) + n1) as u32));
        }
        let mut ract = Vec::with_capacity(n * self.right.order());
        for u in 0..n1 {
            ract.extend((0..self.right.order()).map(|y| self.act_right(u, y) as u32));
        }
        for u in 0..n2 {
            ract.extend((0..self.right.order()).map(|y| (other.act_right(u, y) + n1) as u32));
        }
        Ok(ConcreteBiset {
            left: self.left.clone(),
            right: self.right.clone(),
            points: n,
            lact,
            ract,
        })
    }

    /// `ᵘS = {y ∈ Q | ∃ s ∈ S, u·s = y·u}` for `S ≤ P`.
    pub fn left_transporter(&self, u: usize, s: &ElemSet) -> ElemSet {
        let us = ElemSet::from_iter(self.points, s.iter().map(|y| self.act_right(u, y)));
        ElemSet::from_iter(
            self.left.order(),
            (0..self.left.order()).filter(|&y| us.contains(self.act_left(y, u))),
        )
    }

    /// `Tᵘ = {x ∈ P | ∃ t ∈ T, t·u = u·x}` for `T ≤ Q`.
    pub fn right_transporter(&self, t: &ElemSet, u: usize) -> ElemSet {
        let tu = ElemSet::from_iter(self.points, t.iter().map(|x| self.act_left(x, u)));
        ElemSet::from_iter(
            self.right.order(),
            (0..self.right.order()).filter(|&x| tu.contains(self.act_right(u, x))),
        )
    }

    /// Least point of each orbit of `T × S` (`T ⊆ Q` on the left, `S ⊆ P` on
    /// the right), in increasing order.
    pub fn double_coset_reps(&self, t: &ElemSet, s: &ElemSet) -> Vec<usize> {
        let mut uf = UnionFind::<usize>::new(self.points);
        let tg = self.left.generators_of(&t.to_vec());
        let sg = self.right.generators_of(&s.to_vec());
        for u in 0..self.points {
            for &x in &tg {
                uf.union(u, self.act_left(x, u));
            }
            for &y in &sg {
                uf.union(u, self.act_right(u, y));
            }
        }
        let mut seen = vec![false; self.points];
        let mut reps = Vec::new();
        for u in 0..self.points {
            let r = uf.find(u);
            if !seen[r] {
                seen[r] = true;
                reps.push(u);
            }
        }
        reps
    }

    /// Orbits of `Q × P^op`, each as its sorted list of points.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.points);
        for x in self.left.generators() {
            for u in 0..self.points {
                uf.union(u, self.act_left(x, u));
            }
        }
        for y in self.right.generators() {
            for u in 0..self.points {
                uf.union(u, self.act_right(u, y));
            }
        }
        let mut index = vec![usize::MAX; self.points];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for u in 0..self.points {
            let r = uf.find(u);
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(u);
        }
        out
    }

    /// `{(x, y) ∈ Q × P | x·u = u·y}`
    pub fn stabilizer(&self, u: usize) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        let mut by_point = vec![Vec::new(); self.points];
        for x in 0..self.left.order() {
            by_point[self.act_left(x, u)].push(x as u32);
        }
        for y in 0..self.right.order() {
            for &x in &by_point[self.act_right(u, y)] {
                out.push((x, y as u32));
            }
        }
        out.sort_unstable();
        out
    }

    /// Transitive constituents, labelled by canonical stabilizers; sorted.
    pub fn orbit_decompose(&self) -> Vec<TransitiveBisetLabel> {
        let mut labels: Vec<TransitiveBisetLabel> = self
            .orbits()
            .into_iter()
            .map(|orbit| TransitiveBisetLabel {
                stabilizer: orbit
                    .iter()
                    .map(|&u| self.stabilizer(u))
                    .min()
                    .expect("orbits are nonempty"),
            })
            .collect();
        labels.sort();
        labels
    }

    /// Isomorphism of bisets over the same groups, decided by comparing
    /// decompositions into transitive constituents.
    pub fn is_isomorphic(&self, other: &ConcreteBiset) -> bool {
        self.left.same_table(&other.left)
            && self.right.same_table(&other.right)
            && self.points == other.points
            && self.orbit_decompose() == other.orbit_decompose()
    }

    /// The sub-biset on `points`, which must be a union of orbits. Points are
    /// renumbered in the given order.
    pub fn sub_biset(&self, points: &[usize]) -> Result<ConcreteBiset> {
        let mut local = vec![u32::MAX; self.points];
        for (i, &u) in points.iter().enumerate() {
            if u >= self.points || local[u] != u32::MAX {
                return Err(Error::Biset("repeated or out-of-range point".into()));
            }
            local[u] = i as u32;
        }
        let n = points.len();
        let mut lact = Vec::with_capacity(self.left.order() * n);
        for x in 0..self.left.order() {
            for &u in points {
                lact.push(local[self.act_left(x, u)]);
            }
        }
        let mut ract = Vec::with_capacity(n * self.right.order());
        for &u in points {
            for y in 0..self.right.order() {
                ract.push(local[self.act_right(u, y)]);
            }
        }
        if lact.iter().chain(&ract).any(|&v| v == u32::MAX) {
            return Err(Error::Biset("points are not closed under the actions".into()));
        }
        Ok(ConcreteBiset {
            left: self.left.clone(),
            right: self.right.clone(),
            points: n,
            lact,
            ract,
        })
    }

    /// Restricts the left action to the subgroup `d ≤ Q`; the new left group
    /// is `d` with its elements renumbered in increasing order.
    pub fn restrict_left(&self, d: &ElemSet) -> Result<ConcreteBiset> {
        let (dg, emb) = self.left.subgroup_table(d)?;
        let n = self.points;
        let lact = (0..dg.order() * n)
            .map(|i| self.act_left(emb[i / n], i % n) as u32)
            .collect();
        Ok(ConcreteBiset {
            left: Arc::new(dg),
            right: self.right.clone(),
            points: n,
            lact,
            ract: self.ract.clone(),
        })
    }

    /// Restricts the right action to the subgroup `b ≤ P`.
    pub fn restrict_right(&self, b: &ElemSet) -> Result<ConcreteBiset> {
        Ok(self.opposite().restrict_left(b)?.opposite())
    }

    /// `C\V` as a `(D/C, P)`-biset for a section `(D, C)` of the left group.
    pub fn left_quotient(&self, d: &ElemSet, c: &ElemSet) -> Result<ConcreteBiset> {
        let (qg, _, lifts) = self.left.quotient_table(d, c)?;
        let n = self.points;
        let mut uf = UnionFind::<usize>::new(n);
        for x in c.iter() {
            for u in 0..n {
                uf.union(u, self.act_left(x, u));
            }
        }
        let mut index = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for u in 0..n {
            let r = uf.find(u);
            if index[r] == usize::MAX {
                index[r] = reps.len();
                reps.push(u);
            }
        }
        let points = reps.len();
        let class = |u: usize| index[uf.find(u)] as u32;
        let lact = (0..qg.order() * points)
            .map(|i| class(self.act_left(lifts[i / points], reps[i % points])))
            .collect();
        let pr = self.right.order();
        let ract = (0..points * pr)
            .map(|i| class(self.act_right(reps[i / pr], i % pr)))
            .collect();
        Ok(ConcreteBiset {
            left: Arc::new(qg),
            right: self.right.clone(),
            points,
            lact,
            ract,
        })
    }

    /// `V/A` as a `(Q, B/A)`-biset for a section `(B, A)` of the right group.
    pub fn right_quotient(&self, b: &ElemSet, a: &ElemSet) -> Result<ConcreteBiset> {
        Ok(self.opposite().left_quotient(b, a)?.opposite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDescriptor;

    fn group(d: &str) -> Arc<FiniteGroup> {
        Arc::new(d.parse::<GroupDescriptor>().unwrap().build().unwrap())
    }

    #[test]
    fn identity_biset_is_valid_and_transitive() {
        let p = group("xsp:3");
        let id = ConcreteBiset::identity(p.clone());
        id.check().unwrap();
        let labels = id.orbit_decompose();
        assert_eq!(labels.len(), 1);
        // Stabilizer of the identity point is the diagonal.
        assert_eq!(id.stabilizer(0), (0..27).map(|x| (x, x)).collect::<Vec<_>>());
    }

    #[test]
    fn compose_with_identity() {
        let p = group("elab:3:2");
        let h = ElemSet::from_iter(9, [0, 1, 2]);
        let (hg, emb) = p.subgroup_table(&h).unwrap();
        let ind = ConcreteBiset::induction(p.clone(), Arc::new(hg), &emb).unwrap();
        let c = ConcreteBiset::compose(&ConcreteBiset::identity(p.clone()), &ind).unwrap();
        c.check().unwrap();
        assert!(c.is_isomorphic(&ind));
    }

    #[test]
    fn opposite_of_induction_is_restriction() {
        let p = group("xsp:3");
        let h = p.generate([1]);
        let (hg, emb) = p.subgroup_table(&h).unwrap();
        let hg = Arc::new(hg);
        let ind = ConcreteBiset::induction(p.clone(), hg.clone(), &emb).unwrap();
        let res = ConcreteBiset::restriction(p.clone(), hg, &emb).unwrap();
        assert!(ind.opposite().is_isomorphic(&res));
        assert_eq!(ind.opposite().len(), ind.len());
        let id = ConcreteBiset::identity(p);
        assert!(id.opposite().is_isomorphic(&id));
    }

    #[test]
    fn deflation_has_coset_count_points() {
        let p = group("xsp:3");
        let z = p.center();
        let all = ElemSet::from_iter(27, 0..27);
        let (q, proj, _) = p.quotient_table(&all, &z).unwrap();
        let def = ConcreteBiset::deflation(p.clone(), Arc::new(q), &proj).unwrap();
        def.check().unwrap();
        assert_eq!(def.len(), 9);
    }

    #[test]
    fn raw_constructor_rejects_non_commuting_actions() {
        let c3 = group("cyclic:3");
        // Left multiplication and right multiplication by the inverse do not
        // form a biset on a nonabelian group, but on C3 this is fine; use a
        // left action that is not an action instead.
        let lact = vec![0, 1, 2, 0, 1, 2, 2, 0, 1];
        let ract = vec![0, 1, 2, 1, 2, 0, 2, 0, 1];
        assert!(ConcreteBiset::new(c3.clone(), c3, 3, lact, ract).is_err());
    }

    #[test]
    fn transporters_for_inclusion() {
        // U = P as a (Q, P)-biset with P ≤ Q: ᵘS = uSu⁻¹.
        let q = group("xsp:3");
        let p_set = q.generate([1, 3]);
        let (pg, emb) = q.subgroup_table(&p_set).unwrap();
        let pg = Arc::new(pg);
        let u_b = ConcreteBiset::induction(q.clone(), pg.clone(), &emb).unwrap();
        let s_local = pg.generate([1]);
        for u in 0..q.order() {
            let got = u_b.left_transporter(u, &s_local);
            let want = ElemSet::from_iter(27, s_local.iter().map(|a| q.conj(u, emb[a])));
            assert_eq!(got, want);
        }
        // ᵘ1 is the left stabilizer of u.
        let one = ElemSet::from_iter(pg.order(), [0]);
        assert_eq!(u_b.left_transporter(5, &one).to_vec(), vec![0]);
    }
}
