//! Inverse and direct limits of coefficient systems.
//!
//! Elements of `⊕_{(T,S)} F(T/S)` are integer vectors over the concatenated
//! generators of the values. The inverse limit is the set of vectors whose
//! components satisfy the Defres and conjugation conditions modulo the value
//! relations; the direct limit is the quotient of the sum by the Indinf and
//! conjugation identifications.

use super::presentation::AbelianPresentation;
use super::system::{small_entries, CoefficientSystem};
use crate::error::{Error, Result};
use crate::lattice::{Elimination, Int, IntegerLattice, Matrix, QuotientInvariants, SolvedKernel, SparseMatrix};
use num_traits::Zero;
use rayon::prelude::*;

/// Start of each section's block in the concatenated generators; the last
/// entry is the total.
pub fn block_offsets(sys: &CoefficientSystem) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(sys.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for v in sys.values() {
        acc += v.generators();
        offsets.push(acc);
    }
    offsets
}

#[derive(Clone, Debug)]
enum Coordinates {
    Free(SolvedKernel),
    Lattice(IntegerLattice),
}

/// `lim F(T/S)` presented on a basis of the lattice of compatible families
/// of representatives.
#[derive(Clone, Debug)]
pub struct InverseLimit {
    offsets: Vec<usize>,
    basis: Matrix,
    coordinates: Coordinates,
    presentation: AbelianPresentation,
}

impl InverseLimit {
    /// Number of generators (the rank of the lattice of families).
    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient(&self) -> usize {
        *self.offsets.last().expect("offsets are never empty")
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Generators as rows over the concatenated section blocks.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn presentation(&self) -> &AbelianPresentation {
        &self.presentation
    }

    pub fn invariants(&self) -> QuotientInvariants {
        self.presentation.invariants()
    }

    /// Coordinates of a family in the generators, or `None` if it is not
    /// compatible.
    pub fn coords(&self, x: &[Int]) -> Result<Option<Vec<Int>>> {
        match &self.coordinates {
            Coordinates::Free(k) => k.coords(x),
            Coordinates::Lattice(l) => l.coords(x),
        }
    }

    pub fn element(&self, coords: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.ambient()];
        for (row, c) in self.basis.rows().iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }

    /// The component of a family at section `i`.
    pub fn component<'a>(&self, x: &'a [Int], i: usize) -> &'a [Int] {
        &x[self.offsets[i]..self.offsets[i + 1]]
    }

    /// The projection to section `i` as a matrix on the generators.
    pub fn projection(&self, i: usize) -> Matrix {
        let (a, b) = (self.offsets[i], self.offsets[i + 1]);
        let rows: Vec<Vec<Int>> = (a..b).map(|r| self.basis.column(r)).collect();
        Matrix::from_rows(self.rank(), rows).expect("rank columns")
    }
}

/// Solves the compatibility conditions along generating steps and
/// conjugation by generators of `P`. Values with relations are handled by one
/// slack variable per relation of the target of each condition.
pub fn inverse_limit(sys: &CoefficientSystem) -> Result<InverseLimit> {
    let offsets = block_offsets(sys);
    let n = *offsets.last().expect("nonempty");
    let rels: Vec<Vec<Vec<(usize, i64)>>> = sys
        .values()
        .iter()
        .map(|v| small_entries(v.relations()))
        .collect::<Result<_>>()?;
    let mut conditions: Vec<(usize, usize, &Matrix)> = Vec::new();
    for a in 0..sys.len() {
        for &c in sys.steps(a) {
            conditions.push((a, c, sys.defres_step(a, c)?));
        }
        for &x in sys.conj_generators() {
            let (b, m) = sys.conj_generator(x, a)?;
            conditions.push((a, b, m));
        }
    }
    let slack: usize = conditions.iter().map(|&(_, c, _)| rels[c].len()).sum();
    let mut a_mat = SparseMatrix::new(n + slack);
    let mut y = n;
    for &(a, c, m) in &conditions {
        let entries = small_entries(m)?;
        for (i, row) in entries.into_iter().enumerate() {
            let mut r: Vec<(usize, i64)> = row.into_iter().map(|(j, v)| (offsets[a] + j, v)).collect();
            r.push((offsets[c] + i, -1));
            for (k, rel) in rels[c].iter().enumerate() {
                if let Some(&(_, v)) = rel.iter().find(|e| e.0 == i) {
                    r.push((y + k, -v));
                }
            }
            a_mat.push_row(r)?;
        }
        y += rels[c].len();
    }
    let kernel = a_mat.solve_kernel();
    if slack == 0 {
        let basis = kernel.basis().clone();
        let presentation = AbelianPresentation::free(basis.nrows());
        return Ok(InverseLimit {
            offsets,
            basis,
            coordinates: Coordinates::Free(kernel),
            presentation,
        });
    }
    let projected: Vec<Vec<Int>> = kernel.basis().rows().iter().map(|r| r[..n].to_vec()).collect();
    let lat = IntegerLattice::from_vectors(n, projected)?;
    let mut relations = Vec::new();
    for (a, v) in sys.values().iter().enumerate() {
        for r in v.relations().rows() {
            let mut x = vec![Int::zero(); n];
            x[offsets[a]..offsets[a + 1]].clone_from_slice(r);
            relations.push(
                lat.coords(&x)?
                    .ok_or_else(|| Error::System("a relation is not a compatible family".into()))?,
            );
        }
    }
    let presentation = AbelianPresentation::new(lat.rank(), Matrix::from_rows(lat.rank(), relations)?)?;
    Ok(InverseLimit {
        offsets,
        basis: lat.basis().clone(),
        coordinates: Coordinates::Lattice(lat),
        presentation,
    })
}

/// Solver-independent check that every generator of the limit is a
/// compatible family: for each listed nested pair `(big, small)`,
/// `defres(big, small)` sends the `big` component to the `small` component
/// modulo relations, and conjugation by each generator of `P` permutes the
/// components accordingly. Returns the first failing pair.
pub fn reverify<F>(
    sys: &CoefficientSystem,
    lim: &InverseLimit,
    pairs: &[(usize, usize)],
    defres: F,
) -> Result<Option<(usize, usize)>>
where
    F: Fn(usize, usize) -> Result<Matrix> + Sync,
{
    let blocks: Vec<Matrix> = (0..sys.len()).map(|i| lim.projection(i)).collect();
    let bad = pairs
        .par_iter()
        .map(|&(a, c)| -> Result<Option<(usize, usize)>> {
            let m = defres(a, c)?.mul(&blocks[a])?;
            Ok((!sys.maps_agree(c, &m, &blocks[c])?).then_some((a, c)))
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(p) = bad.into_iter().flatten().next() {
        return Ok(Some(p));
    }
    for a in 0..sys.len() {
        for &x in sys.conj_generators() {
            let (b, m) = sys.conj_generator(x, a)?;
            if !sys.maps_agree(b, &m.mul(&blocks[a])?, &blocks[b])? {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}

/// All pairs `(big, small)` of sections of the system with `small` a
/// subsection of `big`, excluding equal pairs.
pub fn nested_pairs(sys: &CoefficientSystem) -> Vec<(usize, usize)> {
    let l = sys.lattice();
    let secs = sys.sections();
    (0..secs.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let (t, s) = secs[a];
            (0..secs.len())
                .filter(move |&c| {
                    let (t2, s2) = secs[c];
                    c != a && l.is_subgroup_of(t2, t) && l.is_subgroup_of(s, s2) && l.is_subgroup_of(s2, t2)
                })
                .map(move |c| (a, c))
        })
        .collect()
}

/// `colim F(T/S)`: the sum of the values modulo `x ~ Indinf(x)` along steps,
/// `x ~ Conj_g(x)` for generators `g` of `P`, and the value relations,
/// simplified by eliminating generators on unit pivots.
#[derive(Clone, Debug)]
pub struct Colimit {
    offsets: Vec<usize>,
    elimination: Elimination,
    presentation: AbelianPresentation,
}

impl Colimit {
    pub fn build(sys: &CoefficientSystem) -> Result<Self> {
        if !sys.has_indinf() && sys.steps_total() > 0 {
            return Err(Error::System("colimit needs Indinf maps".into()));
        }
        let offsets = block_offsets(sys);
        let n = *offsets.last().expect("nonempty");
        let mut rel = SparseMatrix::new(n);
        for a in 0..sys.len() {
            for &c in sys.steps(a) {
                let m = small_entries(&sys.indinf_step(c, a)?.transpose())?;
                for (j, col) in m.into_iter().enumerate() {
                    let mut r: Vec<(usize, i64)> = col.into_iter().map(|(i, v)| (offsets[a] + i, -v)).collect();
                    r.push((offsets[c] + j, 1));
                    rel.push_row(r)?;
                }
            }
            for &x in sys.conj_generators() {
                let (b, m) = sys.conj_generator(x, a)?;
                let m = small_entries(&m.transpose())?;
                for (j, col) in m.into_iter().enumerate() {
                    let mut r: Vec<(usize, i64)> = col.into_iter().map(|(i, v)| (offsets[b] + i, -v)).collect();
                    r.push((offsets[a] + j, 1));
                    rel.push_row(r)?;
                }
            }
            for r in small_entries(sys.value(a).relations())? {
                rel.push_row(r.into_iter().map(|(j, v)| (offsets[a] + j, v)).collect())?;
            }
        }
        let elimination = rel.eliminate();
        let presentation = AbelianPresentation::new(elimination.free().len(), elimination.core().clone())?;
        Ok(Colimit {
            offsets,
            elimination,
            presentation,
        })
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Positions (in the concatenated generators) of the surviving generators.
    pub fn free_generators(&self) -> &[usize] {
        self.elimination.free()
    }

    pub fn presentation(&self) -> &AbelianPresentation {
        &self.presentation
    }

    pub fn invariants(&self) -> QuotientInvariants {
        self.presentation.invariants()
    }

    /// Class of an element of the sum, on the surviving generators.
    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        self.elimination.reduce(x)
    }
}

impl CoefficientSystem {
    pub fn steps_total(&self) -> usize {
        (0..self.len()).map(|a| self.steps(a).len()).sum()
    }
}
