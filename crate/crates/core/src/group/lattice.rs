//! Complete subgroup lattice of a finite group.
//!
//! Subgroups are found by closure: starting from the trivial subgroup, every
//! subgroup `H` is extended by each element outside it, layer by layer. The
//! list is sorted by order, then by member set, and that position is the
//! [`SubgroupId`] used throughout the crate.

use super::{ElemSet, FiniteGroup};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

pub type SubgroupId = usize;

/// Default bound on the order of groups whose lattice is enumerated.
pub const DEFAULT_LATTICE_BOUND: usize = 81;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    set: ElemSet,
    gens: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn set(&self) -> &ElemSet {
        &self.set
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }
}

pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    index: HashMap<ElemSet, SubgroupId>,
    // conj[x * count + s] is the id of x S x⁻¹
    conj: Vec<u32>,
    class_of: Vec<usize>,
    classes: Vec<Vec<SubgroupId>>,
    moebius_rows: Vec<OnceLock<Vec<i64>>>,
    frattini: Vec<OnceLock<SubgroupId>>,
}

impl std::fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubgroupLattice({:?}, {} subgroups, {} classes)",
            self.group,
            self.subgroups.len(),
            self.classes.len()
        )
    }
}

impl SubgroupLattice {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        Self::with_bound(group, DEFAULT_LATTICE_BOUND)
    }

    pub fn with_bound(group: Arc<FiniteGroup>, bound: usize) -> Result<Self> {
        if group.order() > bound {
            return Err(Error::SizeBound {
                order: group.order(),
                bound,
            });
        }
        let g = &*group;
        let n = g.order();
        let trivial = ElemSet::from_iter(n, [0]);
        // Each subgroup keeps the generators it was first reached with.
        let mut found: HashMap<ElemSet, Vec<usize>> = HashMap::new();
        found.insert(trivial.clone(), Vec::new());
        let mut layer = vec![trivial];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for h in &layer {
                let gens = found[h].clone();
                for x in 0..n {
                    if h.contains(x) {
                        continue;
                    }
                    let k = g.generate(gens.iter().copied().chain([x]));
                    if !found.contains_key(&k) {
                        let mut ext = gens.clone();
                        ext.push(x);
                        found.insert(k.clone(), ext);
                        next.push(k);
                    }
                }
            }
            layer = next;
        }

        let mut subgroups: Vec<Subgroup> = found
            .into_iter()
            .map(|(set, gens)| Subgroup {
                members: set.to_vec(),
                set,
                gens,
            })
            .collect();
        subgroups.sort_by(|a, b| {
            a.members
                .len()
                .cmp(&b.members.len())
                .then_with(|| a.members.cmp(&b.members))
        });
        Ok(Self::assemble(group, subgroups))
    }

    /// Rebuilds a lattice from its subgroups given as `(members, generators)`
    /// in id order, as stored by a cache. Each entry must be a subgroup
    /// generated by its generators, and the order must be the canonical one.
    pub fn from_parts(group: Arc<FiniteGroup>, parts: Vec<(Vec<usize>, Vec<usize>)>) -> Result<Self> {
        let n = group.order();
        let mut subgroups = Vec::with_capacity(parts.len());
        for (members, gens) in parts {
            if members.iter().any(|&m| m >= n) || gens.iter().any(|&x| x >= n) {
                return Err(Error::Domain("subgroup element out of range".into()));
            }
            let set = ElemSet::from_iter(n, members.iter().copied());
            if set.to_vec() != members || group.generate(gens.iter().copied()) != set {
                return Err(Error::Domain("stored subgroup does not match its generators".into()));
            }
            subgroups.push(Subgroup { members, set, gens });
        }
        let sorted = subgroups
            .windows(2)
            .all(|w| (w[0].members.len(), &w[0].members) < (w[1].members.len(), &w[1].members));
        if !sorted
            || subgroups.first().map(|s| s.members.len()) != Some(1)
            || subgroups.last().map(|s| s.members.len()) != Some(n)
        {
            return Err(Error::Domain("stored subgroups are not in canonical order".into()));
        }
        let lat = Self::assemble(group, subgroups);
        if lat.conj.contains(&u32::MAX) {
            return Err(Error::Domain(
                "stored subgroups are not closed under conjugation".into(),
            ));
        }
        Ok(lat)
    }

    /// Installs precomputed Möbius rows; each must match `μ(s, s) = 1` and
    /// vanish outside the interval above `s`.
    pub fn preload_moebius(&self, rows: Vec<Vec<i64>>) -> Result<()> {
        let count = self.subgroups.len();
        if rows.len() != count || rows.iter().any(|r| r.len() != count) {
            return Err(Error::Dimension {
                expected: count,
                found: rows.len(),
            });
        }
        for (s, row) in rows.into_iter().enumerate() {
            if row[s] != 1 || (0..count).any(|t| row[t] != 0 && !self.is_subgroup_of(s, t)) {
                return Err(Error::Domain(format!("stored Möbius row {s} is inconsistent")));
            }
            let _ = self.moebius_rows[s].set(row);
        }
        Ok(())
    }

    fn assemble(group: Arc<FiniteGroup>, subgroups: Vec<Subgroup>) -> Self {
        let g = &*group;
        let n = g.order();
        let index: HashMap<ElemSet, SubgroupId> =
            subgroups.iter().enumerate().map(|(i, s)| (s.set.clone(), i)).collect();

        let count = subgroups.len();
        let mut conj = vec![0u32; n * count];
        for x in 0..n {
            for (id, s) in subgroups.iter().enumerate() {
                let image = ElemSet::from_iter(n, s.members.iter().map(|&a| g.conj(x, a)));
                conj[x * count + id] = index.get(&image).map_or(u32::MAX, |&i| i as u32);
            }
        }

        let mut class_of = vec![usize::MAX; count];
        let mut classes = Vec::new();
        for id in 0..count {
            if class_of[id] != usize::MAX {
                continue;
            }
            let mut members: Vec<SubgroupId> = (0..n)
                .map(|x| conj[x * count + id] as usize)
                .filter(|&m| m < count)
                .collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }

        SubgroupLattice {
            group,
            subgroups,
            index,
            conj,
            class_of,
            classes,
            moebius_rows: (0..count).map(|_| OnceLock::new()).collect(),
            frattini: (0..count).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn order_of(&self, id: SubgroupId) -> usize {
        self.subgroups[id].order()
    }

    pub fn trivial(&self) -> SubgroupId {
        0
    }

    pub fn whole(&self) -> SubgroupId {
        self.subgroups.len() - 1
    }

    pub fn id_of(&self, set: &ElemSet) -> Option<SubgroupId> {
        self.index.get(set).copied()
    }

    /// Id of the subgroup generated by `gens`.
    pub fn generated(&self, gens: impl IntoIterator<Item = usize>) -> SubgroupId {
        self.index[&self.group.generate(gens)]
    }

    pub fn is_subgroup_of(&self, a: SubgroupId, b: SubgroupId) -> bool {
        self.subgroups[a].set.is_subset(&self.subgroups[b].set)
    }

    pub fn intersection(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        self.index[&self.subgroups[a].set.intersection(&self.subgroups[b].set)]
    }

    /// Subgroup generated by `a ∪ b`.
    pub fn join(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let (sa, sb) = (&self.subgroups[a], &self.subgroups[b]);
        if sa.set.is_subset(&sb.set) {
            return b;
        }
        if sb.set.is_subset(&sa.set) {
            return a;
        }
        self.generated(sa.gens.iter().chain(&sb.gens).copied())
    }

    /// `x S x⁻¹`
    #[inline]
    pub fn conjugate(&self, x: usize, s: SubgroupId) -> SubgroupId {
        self.conj[x * self.subgroups.len() + s] as usize
    }

    pub fn normalizer(&self, s: SubgroupId) -> SubgroupId {
        let n = self.group.order();
        self.index[&ElemSet::from_iter(n, (0..n).filter(|&x| self.conjugate(x, s) == s))]
    }

    /// Whether `s` is normalized by every element of `t`.
    pub fn is_normal_in(&self, s: SubgroupId, t: SubgroupId) -> bool {
        self.is_subgroup_of(s, t) && self.subgroups[t].gens.iter().all(|&x| self.conjugate(x, s) == s)
    }

    pub fn is_normal(&self, s: SubgroupId) -> bool {
        self.is_normal_in(s, self.whole())
    }

    pub fn classes(&self) -> &[Vec<SubgroupId>] {
        &self.classes
    }

    pub fn class_of(&self, s: SubgroupId) -> usize {
        self.class_of[s]
    }

    pub fn class_representative(&self, class: usize) -> SubgroupId {
        self.classes[class][0]
    }

    /// Classes of subgroups under conjugation by elements of `t` (only
    /// subgroups of `t` are included). Returned as sorted member lists.
    pub fn classes_within(&self, t: SubgroupId) -> Vec<Vec<SubgroupId>> {
        let tgens = &self.subgroups[t].gens;
        let mut seen = vec![false; self.subgroups.len()];
        let mut out = Vec::new();
        for s in 0..self.subgroups.len() {
            if seen[s] || !self.is_subgroup_of(s, t) {
                continue;
            }
            let mut orbit = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < orbit.len() {
                for &x in tgens {
                    let c = self.conjugate(x, orbit[i]);
                    if !seen[c] {
                        seen[c] = true;
                        orbit.push(c);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Builds the subgroup as a group in its own right. Returns the group and
    /// the embedding (local index → element of the parent).
    pub fn as_group(&self, s: SubgroupId) -> (FiniteGroup, Vec<usize>) {
        let members = &self.subgroups[s].members;
        let k = members.len();
        let mut local = vec![usize::MAX; self.group.order()];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i;
        }
        let table = (0..k * k)
            .map(|i| local[self.group.mul(members[i / k], members[i % k])] as u32)
            .collect();
        let label = format!("{}[{}]", self.group.label(), s);
        (
            FiniteGroup::from_table_unchecked(self.group.prime(), table, label),
            members.clone(),
        )
    }

    /// Möbius function of the subgroup poset, by the defining recursion.
    pub fn moebius(&self, s: SubgroupId, t: SubgroupId) -> Result<i64> {
        if !self.is_subgroup_of(s, t) {
            return Err(Error::Domain(format!("subgroup {s} is not contained in {t}")));
        }
        Ok(self.moebius_row(s)[t])
    }

    /// `μ(s, ·)`, zero outside the interval above `s`.
    pub fn moebius_row(&self, s: SubgroupId) -> &[i64] {
        self.moebius_rows[s].get_or_init(|| {
            let count = self.subgroups.len();
            let mut row = vec![0i64; count];
            row[s] = 1;
            let above: Vec<SubgroupId> = (s..count).filter(|&t| self.is_subgroup_of(s, t)).collect();
            for (i, &t) in above.iter().enumerate().skip(1) {
                let sum: i64 = above[..i]
                    .iter()
                    .filter(|&&u| self.is_subgroup_of(u, t))
                    .map(|&u| row[u])
                    .sum();
                row[t] = -sum;
            }
            row
        })
    }

    /// Maximal proper subgroups of `t`. In a p-group these are exactly the
    /// subgroups of index p.
    pub fn maximal_subgroups(&self, t: SubgroupId) -> Vec<SubgroupId> {
        let target = self.order_of(t) / self.group.prime() as usize;
        (0..t)
            .filter(|&u| self.order_of(u) == target && self.is_subgroup_of(u, t))
            .collect()
    }

    /// Frattini subgroup of `t`: the intersection of its maximal subgroups.
    pub fn frattini(&self, t: SubgroupId) -> SubgroupId {
        *self.frattini[t].get_or_init(|| {
            let mut acc = self.subgroups[t].set.clone();
            for m in self.maximal_subgroups(t) {
                acc = acc.intersection(&self.subgroups[m].set);
            }
            self.index[&acc]
        })
    }

    /// Whether `t / s` is cyclic (`s` normal in `t`): its Frattini quotient
    /// `t / Φ(t)s` has order at most p.
    pub fn is_cyclic_quotient(&self, t: SubgroupId, s: SubgroupId) -> bool {
        let f = self.frattini(t);
        let fs = self.order_of(f) * self.order_of(s) / self.order_of(self.intersection(f, s));
        self.order_of(t) / fs <= self.group.prime() as usize
    }

    /// Subgroups `u` with `s ≤ u ≤ t`, in id order.
    pub fn interval(&self, s: SubgroupId, t: SubgroupId) -> Vec<SubgroupId> {
        (s..=t)
            .filter(|&u| self.is_subgroup_of(s, u) && self.is_subgroup_of(u, t))
            .collect()
    }

    /// Whether the subgroup is cyclic.
    pub fn is_cyclic(&self, s: SubgroupId) -> bool {
        let sub = &self.subgroups[s];
        sub.members.iter().any(|&a| self.group.element_order(a) == sub.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDescriptor;

    fn lattice(d: &str) -> SubgroupLattice {
        let g = d.parse::<GroupDescriptor>().unwrap().build().unwrap();
        SubgroupLattice::new(Arc::new(g)).unwrap()
    }

    #[test]
    fn trivial_group_has_one_subgroup() {
        let l = lattice("trivial:3");
        assert_eq!(l.len(), 1);
        assert_eq!(l.subgroup(0).members(), &[0]);
    }

    #[test]
    fn rank_two_counts() {
        let l = lattice("elab:3:2");
        assert_eq!(l.len(), 6);
        assert_eq!(l.classes().len(), 6);
        assert_eq!(l.moebius(0, l.whole()).unwrap(), 3);
        assert_eq!(l.frattini(l.whole()), 0);
    }

    #[test]
    fn frattini_of_cyclic_nine() {
        let l = lattice("cyclic:9");
        let phi = l.frattini(l.whole());
        assert_eq!(l.order_of(phi), 3);
    }

    #[test]
    fn extraspecial_frattini_is_center() {
        let l = lattice("xsp:3");
        let phi = l.frattini(l.whole());
        assert_eq!(l.subgroup(phi).set(), &l.group().center());
        // Non-central subgroups of order 3 have p conjugates.
        for s in 1..l.len() {
            if l.order_of(s) == 3 && s != phi {
                assert_eq!(l.classes()[l.class_of(s)].len(), 3);
            }
        }
    }

    #[test]
    fn moebius_rejects_non_nested() {
        let l = lattice("elab:3:2");
        assert!(l.moebius(1, 2).is_err());
        assert_eq!(l.moebius(1, 1).unwrap(), 1);
        assert_eq!(l.moebius(0, 1).unwrap(), -1);
    }

    #[test]
    fn bound_is_enforced() {
        let g = "elab:3:5".parse::<GroupDescriptor>().unwrap().build().unwrap();
        assert!(matches!(
            SubgroupLattice::new(Arc::new(g)),
            Err(Error::SizeBound { .. })
        ));
    }
}
