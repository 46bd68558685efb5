//! Burnside groups of sections of a fixed group, computed inside its subgroup
//! lattice.
//!
//! For a section `(T, S)` of `P`, `B(T/S)` has one basis element per
//! `T`-conjugacy class of subgroups `A` with `S ≤ A ≤ T` (the transitive set
//! `T/A`, viewed as a `T/S`-set). Basis elements are ordered by the least
//! subgroup id in the class, so by order first. The kernel `K(T/S)` of
//! linearization is the set of vectors whose marks vanish on every class with
//! cyclic `C/S`.

mod action;
mod dual;
mod elements;
mod report;

pub use action::{act_on_burnside, compose, quotient_correspondence, BisetOnSections};
pub use dual::{ExactSequenceCheck, LinearizationDual};
pub use elements::DeltaData;
pub use report::LatticeReport;

use crate::error::{Error, Result};
use crate::group::{SubgroupId, SubgroupLattice};
use crate::lattice::{hnf_with_transform, Int, IntegerLattice, Matrix};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// A section `(T, S)` named by its subgroup ids.
pub type SectionKey = (SubgroupId, SubgroupId);

/// Integer linear map between free groups, stored by columns: column `j` is
/// the image of basis vector `j` as sparse `(row, value)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMap {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMap {
    pub fn new(rows: usize, cols: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_unstable_by_key(|e| e.0);
                let mut out: Vec<(usize, i64)> = Vec::with_capacity(c.len());
                for (r, v) in c {
                    match out.last_mut() {
                        Some(l) if l.0 == r => l.1 += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|e| e.1 != 0);
                out
            })
            .collect();
        SparseMap { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.rows];
        for (c, x) in self.cols.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            for &(r, a) in c {
                out[r] += x * a;
            }
        }
        out
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols.len());
        for (j, c) in self.cols.iter().enumerate() {
            for &(r, a) in c {
                m.set(r, j, Int::from(a));
            }
        }
        m
    }
}

/// Burnside data of one section.
#[derive(Clone, Debug)]
pub struct SectionBurnside {
    t: SubgroupId,
    s: SubgroupId,
    classes: Vec<Vec<SubgroupId>>,
    // class index of each subgroup id of the lattice, u32::MAX outside [S, T]
    class_of: Vec<u32>,
    marks: Vec<Vec<i64>>,
    cyclic: Vec<usize>,
    k_basis: Matrix,
    // rows f_i with f_i · k_j = δ_ij
    k_lifts: Matrix,
}

impl SectionBurnside {
    pub fn build(lat: &SubgroupLattice, t: SubgroupId, s: SubgroupId) -> Result<Self> {
        if !lat.is_normal_in(s, t) {
            return Err(Error::Domain(format!("({t}, {s}) is not a section")));
        }
        let interval = lat.interval(s, t);
        let tgens = lat.subgroup(t).generators();
        let mut class_of = vec![u32::MAX; lat.len()];
        let mut classes: Vec<Vec<SubgroupId>> = Vec::new();
        for &a in &interval {
            if class_of[a] != u32::MAX {
                continue;
            }
            let idx = classes.len() as u32;
            let mut orbit = vec![a];
            class_of[a] = idx;
            let mut i = 0;
            while i < orbit.len() {
                for &x in tgens {
                    let c = lat.conjugate(x, orbit[i]);
                    if class_of[c] == u32::MAX {
                        class_of[c] = idx;
                        orbit.push(c);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        let n = classes.len();
        let ot = lat.order_of(t) as i64;
        let mut marks = vec![vec![0i64; n]; n];
        for (c, crow) in marks.iter_mut().enumerate() {
            let rep = classes[c][0];
            for (a, cls) in classes.iter().enumerate().skip(c) {
                let above = cls.iter().filter(|&&x| lat.is_subgroup_of(rep, x)).count() as i64;
                if above > 0 {
                    crow[a] = ot / (lat.order_of(cls[0]) as i64 * cls.len() as i64) * above;
                }
            }
        }
        let cyclic: Vec<usize> = (0..n).filter(|&c| lat.is_cyclic_quotient(classes[c][0], s)).collect();
        let lin =
            Matrix::from_i64(n, &cyclic.iter().map(|&c| marks[c].clone()).collect::<Vec<_>>()).expect("square marks");
        let k_basis = IntegerLattice::kernel_of(&lin).basis().clone();
        let k_lifts = dual_lifts(&k_basis)?;
        Ok(SectionBurnside {
            t,
            s,
            classes,
            class_of,
            marks,
            cyclic,
            k_basis,
            k_lifts,
        })
    }

    pub fn key(&self) -> SectionKey {
        (self.t, self.s)
    }

    pub fn t(&self) -> SubgroupId {
        self.t
    }

    pub fn s(&self) -> SubgroupId {
        self.s
    }

    /// Rank of `B(T/S)`.
    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    /// `T`-conjugacy classes of subgroups between `S` and `T`, as sorted id lists.
    pub fn classes(&self) -> &[Vec<SubgroupId>] {
        &self.classes
    }

    pub fn representative(&self, class: usize) -> SubgroupId {
        self.classes[class][0]
    }

    /// Basis index of the class of `a`, if `S ≤ a ≤ T`.
    pub fn class_of(&self, a: SubgroupId) -> Option<usize> {
        let c = *self.class_of.get(a)?;
        (c != u32::MAX).then_some(c as usize)
    }

    /// Table of marks: `marks()[c][a]` is the number of fixed points of the
    /// class-`c` representative on `T/A`.
    pub fn marks(&self) -> &[Vec<i64>] {
        &self.marks
    }

    /// Classes `C` with `C/S` cyclic.
    pub fn cyclic_classes(&self) -> &[usize] {
        &self.cyclic
    }

    /// Rows of the table of marks at the cyclic classes.
    pub fn linearization(&self) -> Matrix {
        let rows: Vec<Vec<i64>> = self.cyclic.iter().map(|&c| self.marks[c].clone()).collect();
        Matrix::from_i64(self.rank(), &rows).expect("marks rows")
    }

    /// Hermite basis of `K(T/S)` as rows in `B(T/S)`.
    pub fn k_basis(&self) -> &Matrix {
        &self.k_basis
    }

    pub fn k_rank(&self) -> usize {
        self.k_basis.nrows()
    }

    pub fn k_lattice(&self) -> IntegerLattice {
        IntegerLattice::from_generators(&self.k_basis)
    }

    /// Functionals on `B(T/S)` dual to the `K` basis: `k_lifts · k_basisᵀ = I`.
    pub fn k_lifts(&self) -> &Matrix {
        &self.k_lifts
    }

    /// Coordinates in the `K` basis of a vector assumed to lie in `K(T/S)`.
    pub fn k_coords(&self, v: &[Int]) -> Vec<Int> {
        let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        self.k_lifts
            .rows()
            .iter()
            .map(|f| nz.iter().map(|&i| &f[i] * &v[i]).sum())
            .collect()
    }

    /// The vector of `K(T/S)` with the given coordinates.
    pub fn k_vector(&self, coords: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.rank()];
        for (row, c) in self.k_basis.rows().iter().zip(coords) {
            for (o, x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        out
    }

    /// Whether `v` lies in `K(T/S)`.
    pub fn in_kernel(&self, v: &[Int]) -> bool {
        let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        self.cyclic
            .iter()
            .all(|&c| nz.iter().map(|&i| &v[i] * self.marks[c][i]).sum::<Int>().is_zero())
    }
}

/// For a basis `k` (rows) of a saturated lattice, functionals `f` (rows) with
/// `f · kᵀ = I`.
fn dual_lifts(k: &Matrix) -> Result<Matrix> {
    let r = k.nrows();
    let n = k.ncols();
    if r == 0 {
        return Ok(Matrix::zeros(0, n));
    }
    let (h, u) = hnf_with_transform(&k.transpose());
    for i in 0..r {
        for j in 0..r {
            let want = if i == j { Int::one() } else { Int::zero() };
            if h.get(i, j) != &want {
                return Err(Error::System("kernel basis is not saturated".into()));
            }
        }
    }
    Matrix::from_rows(n, u.rows()[..r].to_vec())
}

/// Burnside data for all sections of one group, built on demand and shared.
pub struct BurnsideContext {
    lattice: Arc<SubgroupLattice>,
    cache: Mutex<HashMap<SectionKey, Arc<SectionBurnside>>>,
}

impl std::fmt::Debug for BurnsideContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BurnsideContext({:?})", self.lattice)
    }
}

impl BurnsideContext {
    pub fn new(lattice: Arc<SubgroupLattice>) -> Self {
        BurnsideContext {
            lattice,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn section(&self, key: SectionKey) -> Result<Arc<SectionBurnside>> {
        if let Some(b) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(b.clone());
        }
        let built = Arc::new(SectionBurnside::build(&self.lattice, key.0, key.1)?);
        Ok(self
            .cache
            .lock()
            .expect("cache lock")
            .entry(key)
            .or_insert(built)
            .clone())
    }

    /// `B(P)` itself, as the section `(P, 1)`.
    pub fn whole(&self) -> Arc<SectionBurnside> {
        self.section((self.lattice.whole(), self.lattice.trivial()))
            .expect("the whole group is a section")
    }

    fn check_nested(&self, big: SectionKey, small: SectionKey) -> Result<()> {
        let l = &self.lattice;
        let (t, s) = big;
        let (t2, s2) = small;
        if l.is_subgroup_of(s, s2) && l.is_subgroup_of(s2, t2) && l.is_subgroup_of(t2, t) {
            Ok(())
        } else {
            Err(Error::Domain(format!("({t2}, {s2}) is not a subsection of ({t}, {s})")))
        }
    }

    /// `Defres^{T/S}_{T'/S'}: B(T/S) → B(T'/S')`, sending `T/A` to
    /// `Σ_{x ∈ [T'\T/A]} T'/(T' ∩ xAx⁻¹)S'`.
    pub fn defres(&self, big: SectionKey, small: SectionKey) -> Result<SparseMap> {
        self.check_nested(big, small)?;
        let (b, sm) = (self.section(big)?, self.section(small)?);
        let l = &self.lattice;
        let g = l.group();
        let (t2, s2) = small;
        let tm = l.subgroup(big.0).members();
        let t2m = l.subgroup(t2).members();
        let cols = (0..b.rank())
            .map(|c| {
                let a = b.representative(c);
                let am = l.subgroup(a).members();
                let mut seen = vec![false; g.order()];
                let mut col = Vec::new();
                for &x in tm {
                    if seen[x] {
                        continue;
                    }
                    for &y in t2m {
                        let yx = g.mul(y, x);
                        for &z in am {
                            seen[g.mul(yx, z)] = true;
                        }
                    }
                    let img = l.join(l.intersection(t2, l.conjugate(x, a)), s2);
                    col.push((sm.class_of(img).expect("image lies in the subsection"), 1));
                }
                col
            })
            .collect();
        Ok(SparseMap::new(sm.rank(), cols))
    }

    /// `Indinf^{T/S}_{T'/S'}: B(T'/S') → B(T/S)`, sending `T'/A` to `T/A`.
    pub fn indinf(&self, small: SectionKey, big: SectionKey) -> Result<SparseMap> {
        self.check_nested(big, small)?;
        let (b, sm) = (self.section(big)?, self.section(small)?);
        let cols = (0..sm.rank())
            .map(|c| vec![(b.class_of(sm.representative(c)).expect("nested"), 1)])
            .collect();
        Ok(SparseMap::new(b.rank(), cols))
    }

    /// `Conj_x: B(T/S) → B(ˣT/ˣS)`.
    pub fn conj(&self, x: usize, sec: SectionKey) -> Result<SparseMap> {
        let l = &self.lattice;
        let target = (l.conjugate(x, sec.0), l.conjugate(x, sec.1));
        let (src, dst) = (self.section(sec)?, self.section(target)?);
        let cols = (0..src.rank())
            .map(|c| {
                let img = l.conjugate(x, src.representative(c));
                vec![(dst.class_of(img).expect("conjugate section"), 1)]
            })
            .collect();
        Ok(SparseMap::new(dst.rank(), cols))
    }

    /// Restriction of a `B`-level map to `K`: the matrix of `K(src) → K(dst)`
    /// in the chosen `K` bases.
    pub fn restrict_to_k(&self, map: &SparseMap, src: SectionKey, dst: SectionKey) -> Result<Matrix> {
        let (a, b) = (self.section(src)?, self.section(dst)?);
        k_matrix(map, &a, &b)
    }

    /// Image of the `K`-value lattice of each listed section under Indinf,
    /// summed inside `B(T/S)` of `target`.
    pub fn indinf_image_sum(&self, target: SectionKey, parts: &[(SectionKey, Matrix)]) -> Result<IntegerLattice> {
        let tb = self.section(target)?;
        let mut gens = Vec::new();
        for (key, vectors) in parts {
            let m = self.indinf(*key, target)?;
            for v in vectors.rows() {
                gens.push(m.apply(v));
            }
        }
        IntegerLattice::from_vectors(tb.rank(), gens)
    }
}

/// `K`-matrix of a `B`-level map between two sections.
pub fn k_matrix(map: &SparseMap, src: &SectionBurnside, dst: &SectionBurnside) -> Result<Matrix> {
    if map.ncols() != src.rank() || map.nrows() != dst.rank() {
        return Err(Error::Dimension {
            expected: src.rank(),
            found: map.ncols(),
        });
    }
    let mut out = Matrix::zeros(dst.k_rank(), src.k_rank());
    for (j, kv) in src.k_basis().rows().iter().enumerate() {
        let img = map.apply(kv);
        if !dst.in_kernel(&img) {
            return Err(Error::System("map does not preserve K".into()));
        }
        for (i, c) in dst.k_coords(&img).into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::group::GroupDescriptor;

    pub(crate) fn context(d: &str) -> BurnsideContext {
        let g = d.parse::<GroupDescriptor>().unwrap().build().unwrap();
        BurnsideContext::new(Arc::new(SubgroupLattice::new(Arc::new(g)).unwrap()))
    }

    #[test]
    fn rank_two_bookkeeping() {
        let ctx = context("elab:3:2");
        let b = ctx.whole();
        assert_eq!(b.rank(), 6);
        assert_eq!(b.linearization().rank(), 5);
        assert_eq!(b.k_rank(), 1);
        // Marks of an order-3 subgroup on its own coset space.
        assert_eq!(b.marks()[1][1], 3);
        assert_eq!(b.marks()[0], vec![9, 3, 3, 3, 3, 1]);
    }

    #[test]
    fn small_groups_have_zero_kernel() {
        for d in ["trivial:3", "cyclic:3", "cyclic:9"] {
            assert_eq!(context(d).whole().k_rank(), 0, "{d}");
        }
    }

    #[test]
    fn extraspecial_kernel_rank() {
        let ctx = context("xsp:3");
        let b = ctx.whole();
        assert_eq!(b.rank(), 11);
        assert_eq!(b.cyclic_classes().len(), 6);
        assert_eq!(b.k_rank(), 5);
    }

    #[test]
    fn marks_are_triangular() {
        let ctx = context("xsp:3");
        let b = ctx.whole();
        for (c, row) in b.marks().iter().enumerate() {
            assert_ne!(row[c], 0);
            assert!(row[..c].iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn lifts_are_dual() {
        let ctx = context("prod:elab:3:2,cyclic:3");
        let b = ctx.whole();
        let prod = b.k_lifts().mul(&b.k_basis().transpose()).unwrap();
        assert_eq!(prod, Matrix::identity(b.k_rank()));
    }

    #[test]
    fn defres_to_trivial_counts_points() {
        let ctx = context("xsp:3");
        let l = ctx.lattice();
        let whole = (l.whole(), 0);
        let m = ctx.defres(whole, (0, 0)).unwrap().to_matrix();
        let b = ctx.whole();
        for c in 0..b.rank() {
            let idx = 27 / l.order_of(b.representative(c));
            assert_eq!(m.get(0, c), &Int::from(idx as i64));
        }
    }

    #[test]
    fn identity_defres_is_identity() {
        let ctx = context("xsp:3");
        let l = ctx.lattice();
        let key = (l.whole(), l.generated([]));
        let m = ctx.defres(key, key).unwrap().to_matrix();
        assert_eq!(m, Matrix::identity(ctx.whole().rank()));
    }
}
