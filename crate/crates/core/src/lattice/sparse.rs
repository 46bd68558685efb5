//! Sparse integer matrices and elimination on unit pivots.
//!
//! A row with a `±1` entry in column `j` lets variable `j` be written as an
//! integer combination of the others, so it can be removed without changing
//! either the integer kernel (read the row as an equation) or the quotient
//! `Z^n / rowspan` (read it as a relation). What is left after all unit pivots
//! are used is a small dense core, handed to the `BigInt` routines.

use super::{kernel, Int, IntegerLattice, Matrix};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::collections::BTreeSet;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

fn normalize(mut entries: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    entries.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    /// Adds a row given as `(column, value)` pairs; repeated columns are summed.
    /// Zero rows are dropped.
    pub fn push_row(&mut self, entries: Vec<(usize, i64)>) -> Result<()> {
        if let Some(&(c, _)) = entries.iter().find(|e| e.0 >= self.ncols) {
            return Err(Error::Dimension {
                expected: self.ncols,
                found: c + 1,
            });
        }
        let row = normalize(entries);
        if !row.is_empty() {
            self.rows.push(row);
        }
        Ok(())
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<(usize, i64)>] {
        &self.rows
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows.len(), self.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, v) in r {
                m.set(i, c, Int::from(v));
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        self.rows
            .iter()
            .map(|r| r.iter().filter(|e| !v[e.0].is_zero()).map(|&(c, x)| &v[c] * x).sum())
            .collect()
    }

    /// Eliminates unit pivots until none remain.
    pub fn eliminate(&self) -> Elimination {
        match eliminate_units(self) {
            Some(e) => e,
            // Coefficients outgrew i128: skip the sparse phase entirely.
            None => Elimination {
                n: self.ncols,
                free: (0..self.ncols).collect(),
                subs: Vec::new(),
                core: self.to_dense(),
            },
        }
    }

    /// Integer kernel `{x : A x = 0}`.
    pub fn solve_kernel(&self) -> SolvedKernel {
        self.eliminate().into_kernel()
    }
}

/// Outcome of unit-pivot elimination on a sparse matrix `A` with `n` columns.
#[derive(Clone, Debug)]
pub struct Elimination {
    n: usize,
    free: Vec<usize>,
    // x_j = Σ c_k x_k, in elimination order
    subs: Vec<(usize, Vec<(usize, Int)>)>,
    core: Matrix,
}

impl Elimination {
    pub fn ncols(&self) -> usize {
        self.n
    }

    /// Columns that survived, in increasing order.
    pub fn free(&self) -> &[usize] {
        &self.free
    }

    /// Remaining rows, over the surviving columns.
    pub fn core(&self) -> &Matrix {
        &self.core
    }

    pub fn eliminated(&self) -> usize {
        self.subs.len()
    }

    /// Full vector from values on the surviving columns, solving the
    /// eliminated equations.
    pub fn expand(&self, free_vals: &[Int]) -> Vec<Int> {
        let mut x = vec![Int::zero(); self.n];
        for (&c, v) in self.free.iter().zip(free_vals) {
            x[c] = v.clone();
        }
        for (j, expr) in self.subs.iter().rev() {
            x[*j] = expr.iter().filter(|e| !x[e.0].is_zero()).map(|(k, c)| c * &x[*k]).sum();
        }
        x
    }

    pub fn restrict(&self, v: &[Int]) -> Vec<Int> {
        self.free.iter().map(|&c| v[c].clone()).collect()
    }

    /// Image of `v ∈ Z^n` in `Z^free / core`, i.e. rewritten with the
    /// eliminated generators replaced by their expressions.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        let mut x = v.to_vec();
        for (j, expr) in &self.subs {
            if x[*j].is_zero() {
                continue;
            }
            let m = std::mem::take(&mut x[*j]);
            for (k, c) in expr {
                x[*k] += &m * c;
            }
        }
        self.restrict(&x)
    }

    pub fn into_kernel(self) -> SolvedKernel {
        let core_kernel = if self.core.nrows() == 0 {
            Matrix::identity(self.free.len())
        } else {
            kernel(&self.core)
        };
        let core_lattice = IntegerLattice::from_generators(&core_kernel);
        let rows: Vec<Vec<Int>> = core_lattice.basis().rows().iter().map(|r| self.expand(r)).collect();
        let basis = Matrix::from_rows(self.n, rows).expect("expanded widths");
        SolvedKernel {
            elim: self,
            core_lattice,
            basis,
        }
    }
}

/// Integer kernel of a sparse matrix with a basis and a coordinate map.
#[derive(Clone, Debug)]
pub struct SolvedKernel {
    elim: Elimination,
    core_lattice: IntegerLattice,
    basis: Matrix,
}

impl SolvedKernel {
    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient(&self) -> usize {
        self.elim.n
    }

    /// Basis vectors as rows of an `rank × n` matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn elimination(&self) -> &Elimination {
        &self.elim
    }

    /// Coordinates of `v` in the kernel basis, or `None` if `v` is not in the kernel.
    pub fn coords(&self, v: &[Int]) -> Result<Option<Vec<Int>>> {
        if v.len() != self.elim.n {
            return Err(Error::Dimension {
                expected: self.elim.n,
                found: v.len(),
            });
        }
        let r = self.elim.restrict(v);
        let Some(c) = self.core_lattice.coords(&r)? else {
            return Ok(None);
        };
        Ok((self.elim.expand(&r) == v).then_some(c))
    }

    /// Vector with the given coordinates.
    pub fn vector(&self, coords: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.elim.n];
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
}

fn combine(target: &[(usize, i128)], src: &[(usize, i128)], f: i128) -> Option<Vec<(usize, i128)>> {
    let mut out = Vec::with_capacity(target.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < src.len() {
        let take_t = j == src.len() || (i < target.len() && target[i].0 < src[j].0);
        let take_s = i == target.len() || (j < src.len() && src[j].0 < target[i].0);
        if take_t {
            out.push(target[i]);
            i += 1;
        } else if take_s {
            out.push((src[j].0, src[j].1.checked_mul(f)?.checked_neg()?));
            j += 1;
        } else {
            let v = target[i].1.checked_sub(src[j].1.checked_mul(f)?)?;
            if v != 0 {
                out.push((target[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

const GROWTH_LIMIT: i128 = 1 << 100;

fn eliminate_units(m: &SparseMatrix) -> Option<Elimination> {
    let n = m.ncols;
    let mut rows: Vec<Option<Vec<(usize, i128)>>> = m
        .rows
        .iter()
        .map(|r| Some(r.iter().map(|&(c, v)| (c, v as i128)).collect()))
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r.as_ref().expect("fresh") {
            col_rows[c].insert(i);
        }
    }
    let mut eliminated = vec![false; n];
    let mut subs = Vec::new();
    // Rows bucketed by length; a row is re-examined whenever it changes.
    let mut queue: BTreeSet<(usize, usize)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.as_ref().expect("fresh").len(), i))
        .collect();
    while let Some((len, i)) = queue.pop_first() {
        let Some(row) = rows[i].as_ref() else { continue };
        if row.len() != len {
            continue;
        }
        // Markowitz-style choice: the unit entry whose column is sparsest.
        let Some(&(j, a)) = row
            .iter()
            .filter(|e| e.1 == 1 || e.1 == -1)
            .min_by_key(|e| (col_rows[e.0].len(), e.0))
        else {
            continue;
        };
        let row = rows[i].take().expect("checked above");
        for &(c, _) in &row {
            col_rows[c].remove(&i);
        }
        let others: Vec<usize> = col_rows[j].iter().copied().collect();
        for r in others {
            let target = rows[r].take().expect("indexed rows are alive");
            let b = target.iter().find(|e| e.0 == j).expect("indexed").1;
            let combined = combine(&target, &row, b.checked_mul(a)?)?;
            if combined.iter().any(|e| e.1.abs() > GROWTH_LIMIT) {
                return None;
            }
            for &(c, _) in &target {
                col_rows[c].remove(&r);
            }
            for &(c, _) in &combined {
                col_rows[c].insert(r);
            }
            if !combined.is_empty() {
                queue.insert((combined.len(), r));
                rows[r] = Some(combined);
            }
        }
        eliminated[j] = true;
        // a·x_j + Σ r_k x_k = 0  ⇒  x_j = Σ (−a·r_k) x_k
        let expr = row
            .iter()
            .filter(|e| e.0 != j)
            .map(|&(k, v)| (k, Int::from(-a * v)))
            .collect();
        subs.push((j, expr));
    }

    let free: Vec<usize> = (0..n).filter(|&c| !eliminated[c]).collect();
    let mut local = vec![usize::MAX; n];
    for (i, &c) in free.iter().enumerate() {
        local[c] = i;
    }
    let mut core = Matrix::zeros(0, free.len());
    for r in rows.into_iter().flatten() {
        let mut dense = vec![Int::zero(); free.len()];
        for (c, v) in r {
            debug_assert!(local[c] != usize::MAX);
            dense[local[c]] = Int::from(v);
        }
        core.push_row(dense).expect("core width");
    }
    Some(Elimination { n, free, subs, core })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::to_int_vec;

    #[test]
    fn kernel_matches_dense() {
        let mut a = SparseMatrix::new(5);
        a.push_row(vec![(0, 1), (1, -1)]).unwrap();
        a.push_row(vec![(1, 2), (2, 2), (3, 4)]).unwrap();
        a.push_row(vec![(3, 3), (4, 1), (0, 1)]).unwrap();
        let k = a.solve_kernel();
        let dense = IntegerLattice::kernel_of(&a.to_dense());
        let sparse = IntegerLattice::from_generators(k.basis());
        assert_eq!(dense, sparse);
        for r in k.basis().rows() {
            assert!(a.mul_vec(r).iter().all(Zero::is_zero));
            let c = k.coords(r).unwrap().unwrap();
            assert_eq!(k.vector(&c), r.to_vec());
        }
        assert!(k.coords(&to_int_vec(&[1, 0, 0, 0, 0])).unwrap().is_none());
    }

    #[test]
    fn reduce_respects_relations() {
        // Z^3 / <(1, -1, 0), (0, 2, 2)> has the relation x0 = x1.
        let mut a = SparseMatrix::new(3);
        a.push_row(vec![(0, 1), (1, -1)]).unwrap();
        a.push_row(vec![(1, 2), (2, 2)]).unwrap();
        let e = a.eliminate();
        assert_eq!(e.free().len() + e.eliminated(), 3);
        let x0 = e.reduce(&to_int_vec(&[1, 0, 0]));
        let x1 = e.reduce(&to_int_vec(&[0, 1, 0]));
        assert_eq!(x0, x1);
    }

    #[test]
    fn duplicate_entries_are_summed() {
        let mut a = SparseMatrix::new(2);
        a.push_row(vec![(0, 1), (0, -1)]).unwrap();
        assert_eq!(a.nrows(), 0);
        assert!(a.push_row(vec![(2, 1)]).is_err());
    }
}
