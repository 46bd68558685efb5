//! Finite p-groups stored as explicit multiplication tables.
//!
//! Elements are the indices `0..order`, with `0` the identity. Every
//! constructor produces a table; matrix or semidirect models are only used
//! internally to fill it in.

mod bits;
pub mod cache;
pub mod catalog;
pub mod lattice;
pub mod section;

pub use bits::ElemSet;
pub use cache::{decode as decode_cached_lattice, LatticeCache, CACHE_DIR_ENV};
pub use catalog::{load_group, parse_table_file, GroupDescriptor};
pub use lattice::{Subgroup, SubgroupId, SubgroupLattice};
pub use section::{
    classify_quotient, section_keys_in_class, sections_in_class, Section, SectionClass, SectionClassLabel,
};

use crate::error::{Error, Result};
use sha2::{Digest, Sha256};

/// Largest table accepted from untrusted input.
pub const MAX_TABLE_ORDER: usize = 729;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    prime: u32,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    label: String,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

pub(crate) fn is_odd_prime(p: u64) -> bool {
    p >= 3
        && p % 2 == 1
        && (3..)
            .step_by(2)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Returns `k` with `n = p^k`, if any.
pub fn log_p(n: usize, p: u32) -> Option<u32> {
    let p = p as usize;
    let (mut m, mut k) = (n, 0);
    while m > 1 {
        if m % p != 0 {
            return None;
        }
        m /= p;
        k += 1;
    }
    (m == 1).then_some(k)
}

impl FiniteGroup {
    /// Builds a group from a row-major product table, checking every group axiom.
    pub fn from_table(prime: u32, table: Vec<u32>, label: impl Into<String>) -> Result<Self> {
        if !is_odd_prime(prime as u64) {
            return Err(Error::UnsupportedPrime(prime as u64));
        }
        let order = (table.len() as f64).sqrt().round() as usize;
        if order == 0 || order * order != table.len() {
            return Err(Error::Table(format!("table has {} entries, not a square", table.len())));
        }
        if order > MAX_TABLE_ORDER {
            return Err(Error::SizeBound {
                order,
                bound: MAX_TABLE_ORDER,
            });
        }
        if log_p(order, prime).is_none() {
            return Err(Error::Table(format!("order {order} is not a power of {prime}")));
        }
        if let Some(&bad) = table.iter().find(|&&x| x as usize >= order) {
            return Err(Error::Table(format!("entry {bad} out of range")));
        }
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(Error::Table("element 0 is not the identity".into()));
            }
        }
        // Latin square: every row and column is a permutation.
        let mut seen = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                let c = table[a * order + b] as usize;
                if seen[c] == a {
                    return Err(Error::Table(format!("row {a} repeats {c}")));
                }
                seen[c] = a;
            }
        }
        seen.fill(usize::MAX);
        for b in 0..order {
            for a in 0..order {
                let c = table[a * order + b] as usize;
                if seen[c] == b {
                    return Err(Error::Table(format!("column {b} repeats {c}")));
                }
                seen[c] = b;
            }
        }
        let g = Self::from_table_unchecked(prime, table, label);
        for a in 0..order {
            for b in 0..order {
                let ab = g.mul(a, b);
                for c in 0..order {
                    if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                        return Err(Error::Table(format!("product is not associative on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Table must already be a group table with identity 0.
    pub(crate) fn from_table_unchecked(prime: u32, table: Vec<u32>, label: impl Into<String>) -> Self {
        let order = (table.len() as f64).sqrt().round() as usize;
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            inverse[a] = row.iter().position(|&x| x == 0).expect("latin row") as u32;
        }
        FiniteGroup {
            prime,
            order,
            table,
            inverse,
            label: label.into(),
        }
    }

    pub fn trivial(prime: u32) -> Result<Self> {
        Self::from_table(prime, vec![0], format!("trivial:{prime}"))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `x a x⁻¹`
    #[inline]
    pub fn conj(&self, x: usize, a: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let (mut base, mut acc) = (a, 0);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).max().unwrap_or(1)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> ElemSet {
        ElemSet::from_iter(
            self.order,
            (0..self.order).filter(|&z| (0..self.order).all(|a| self.mul(z, a) == self.mul(a, z))),
        )
    }

    /// Subgroup generated by `gens` (right-multiplication closure from the identity).
    pub fn generate(&self, gens: impl IntoIterator<Item = usize>) -> ElemSet {
        let gens: Vec<usize> = gens.into_iter().filter(|&g| g != 0).collect();
        let mut set = ElemSet::from_iter(self.order, [0]);
        let mut queue = vec![0usize];
        while let Some(a) = queue.pop() {
            for &g in &gens {
                let c = self.mul(a, g);
                if set.insert(c) {
                    queue.push(c);
                }
            }
        }
        set
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        self.generators_of(&(0..self.order).collect::<Vec<_>>())
    }

    /// Greedy generating set of the subgroup with the given members.
    pub fn generators_of(&self, members: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = ElemSet::from_iter(self.order, [0]);
        // Prefer elements of large order so that cyclic subgroups get one generator.
        let mut candidates: Vec<usize> = members.to_vec();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        for a in candidates {
            if !current.contains(a) {
                gens.push(a);
                current = self.generate(gens.iter().copied());
            }
        }
        gens
    }

    /// SHA-256 of the prime and table, hex encoded.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.prime as u64).to_le_bytes());
        h.update((self.order as u64).to_le_bytes());
        for &x in &self.table {
            h.update(x.to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    /// Direct product; the pair `(a, b)` has index `a + |G|·b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Result<FiniteGroup> {
        if self.prime != other.prime {
            return Err(Error::Domain(format!(
                "direct product of {}-group and {}-group",
                self.prime, other.prime
            )));
        }
        let (n1, n2) = (self.order, other.order);
        let n = n1 * n2;
        if n > MAX_TABLE_ORDER {
            return Err(Error::SizeBound {
                order: n,
                bound: MAX_TABLE_ORDER,
            });
        }
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            let (a1, b1) = (x % n1, x / n1);
            for y in 0..n {
                let (a2, b2) = (y % n1, y / n1);
                table[x * n + y] = (self.mul(a1, a2) + n1 * other.mul(b1, b2)) as u32;
            }
        }
        Ok(FiniteGroup::from_table_unchecked(
            self.prime,
            table,
            format!("prod:{},{}", self.label, other.label),
        ))
    }

    /// Same prime and multiplication table (labels are ignored).
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.prime == other.prime && self.table == other.table
    }

    /// Whether `members` is closed under the product (and so is a subgroup).
    pub fn is_subgroup(&self, members: &ElemSet) -> bool {
        members.contains(0)
            && members
                .iter()
                .all(|a| members.iter().all(|b| members.contains(self.mul(a, b))))
    }

    /// The subgroup on `members` as a group in its own right, with the
    /// embedding (local index → element of `self`). Members keep their order.
    pub fn subgroup_table(&self, members: &ElemSet) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(members) {
            return Err(Error::Domain("element set is not a subgroup".into()));
        }
        let emb = members.to_vec();
        let k = emb.len();
        let mut local = vec![usize::MAX; self.order];
        for (i, &m) in emb.iter().enumerate() {
            local[m] = i;
        }
        let table = (0..k * k)
            .map(|i| local[self.mul(emb[i / k], emb[i % k])] as u32)
            .collect();
        Ok((
            FiniteGroup::from_table_unchecked(self.prime, table, format!("{}<{}>", self.label, k)),
            emb,
        ))
    }

    /// The quotient `T/S` for subgroups `S ⊴ T` given as element sets.
    /// Returns the quotient, the projection (`usize::MAX` outside `T`), and the
    /// least element of each coset. Cosets are numbered by their least element.
    pub fn quotient_table(&self, t: &ElemSet, s: &ElemSet) -> Result<(FiniteGroup, Vec<usize>, Vec<usize>)> {
        if !self.is_subgroup(t) || !self.is_subgroup(s) || !s.is_subset(t) {
            return Err(Error::Domain("quotient needs nested subgroups".into()));
        }
        if !t.iter().all(|x| s.iter().all(|y| s.contains(self.conj(x, y)))) {
            return Err(Error::Domain("quotient by a non-normal subgroup".into()));
        }
        let mut proj = vec![usize::MAX; self.order];
        let mut lifts = Vec::new();
        for x in t.iter() {
            if proj[x] != usize::MAX {
                continue;
            }
            let idx = lifts.len();
            lifts.push(x);
            for y in s.iter() {
                proj[self.mul(x, y)] = idx;
            }
        }
        let k = lifts.len();
        let table = (0..k * k)
            .map(|i| proj[self.mul(lifts[i / k], lifts[i % k])] as u32)
            .collect();
        Ok((
            FiniteGroup::from_table_unchecked(self.prime, table, format!("{}/{}", self.label, s.len())),
            proj,
            lifts,
        ))
    }

    /// Whether `f` (indexed by elements of `self`) is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.order
            && (0..self.order).all(|a| (0..self.order).all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b])))
    }

    /// Relabels elements by a permutation fixing 0: the new index of old element `a` is `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<FiniteGroup> {
        if perm.len() != self.order || perm[0] != 0 {
            return Err(Error::Domain("relabeling must fix the identity".into()));
        }
        let mut inv = vec![usize::MAX; self.order];
        for (a, &pa) in perm.iter().enumerate() {
            if pa >= self.order || inv[pa] != usize::MAX {
                return Err(Error::Domain("relabeling is not a permutation".into()));
            }
            inv[pa] = a;
        }
        let n = self.order;
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = perm[self.mul(inv[x], inv[y])] as u32;
            }
        }
        Ok(FiniteGroup::from_table_unchecked(self.prime, table, self.label.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        // Z/2 is rejected for its prime.
        assert!(matches!(
            FiniteGroup::from_table(2, vec![0, 1, 1, 0], "c2"),
            Err(Error::UnsupportedPrime(2))
        ));
        // Not a Latin square.
        assert!(FiniteGroup::from_table(3, vec![0, 1, 2, 1, 1, 0, 2, 0, 1], "x").is_err());
        // Non-square length.
        assert!(FiniteGroup::from_table(3, vec![0, 1], "x").is_err());
        // Identity must be 0.
        assert!(FiniteGroup::from_table(3, vec![1, 2, 0, 2, 0, 1, 0, 1, 2], "x").is_err());
    }

    #[test]
    fn cyclic_three_from_table() {
        let g = FiniteGroup::from_table(3, vec![0, 1, 2, 1, 2, 0, 2, 0, 1], "c3").unwrap();
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.element_order(1), 3);
        assert!(g.is_abelian());
        assert_eq!(g.generators(), vec![1]);
    }

    #[test]
    fn log_p_works() {
        assert_eq!(log_p(81, 3), Some(4));
        assert_eq!(log_p(1, 3), Some(0));
        assert_eq!(log_p(18, 3), None);
    }
}
