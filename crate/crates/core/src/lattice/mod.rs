//! Exact integer linear algebra: dense matrices over `BigInt`, Hermite and
//! Smith normal forms, integer kernels, and sublattices of `Z^n`.

mod hnf;
mod snf;
pub mod sparse;

pub use hnf::{hnf, hnf_with_transform, kernel};
pub use snf::{elementary_divisors, invariant_factors};
pub use sparse::{Elimination, SolvedKernel, SparseMatrix};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Int = BigInt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Int>>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![Int::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Int::one();
        }
        m
    }

    /// Builds from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Int>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn from_i64(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect(),
        )
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Int>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Dimension {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Int {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Int] {
        &self.data[r]
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<Vec<Int>> {
        self.data
    }

    pub fn column(&self, c: usize) -> Vec<Int> {
        self.data.iter().map(|r| r[c].clone()).collect()
    }

    pub fn push_row(&mut self, row: Vec<Int>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.data.push(row);
        self.rows += 1;
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                t.data[j][i] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.data[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Int]) -> Result<Vec<Int>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self.data.iter().map(|r| dot(r, v)).collect())
    }

    pub fn scale(&self, k: &Int) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|x| x * k).collect()).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn rank(&self) -> usize {
        hnf(self).nrows()
    }

    /// Entries as `i64` when they all fit.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.data
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    /// Columns selected by `idx`, in that order.
    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: idx.len(),
            data: self
                .data
                .iter()
                .map(|r| idx.iter().map(|&j| r[j].clone()).collect())
                .collect(),
        }
    }

    /// Whether `self` is square with determinant ±1.
    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols
            && invariant_factors(self).len() == self.rows
            && invariant_factors(self).iter().all(One::is_one)
    }
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

pub fn to_int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Structure of a finitely generated abelian group: `Z^free_rank ⊕ ⊕ Z/t_i`
/// with `t_1 | t_2 | …`, all `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientInvariants {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl QuotientInvariants {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion part.
    pub fn torsion_order(&self) -> Int {
        self.torsion.iter().product()
    }

    /// Prime-power decomposition of the torsion part.
    pub fn elementary_divisors(&self) -> Vec<Int> {
        elementary_divisors(&self.torsion)
    }
}

impl fmt::Display for QuotientInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Sublattice of `Z^n`, stored by its Hermite normal form basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntegerLattice {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    pub fn zero(ambient: usize) -> Self {
        IntegerLattice {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_generators(&Matrix::identity(ambient))
    }

    /// Lattice spanned by the rows of `gens`.
    pub fn from_generators(gens: &Matrix) -> Self {
        let basis = hnf(gens);
        let pivots = basis
            .rows()
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero HNF row"))
            .collect();
        IntegerLattice {
            ambient: gens.ncols(),
            basis,
            pivots,
        }
    }

    pub fn from_vectors(ambient: usize, vs: Vec<Vec<Int>>) -> Result<Self> {
        Ok(Self::from_generators(&Matrix::from_rows(ambient, vs)?))
    }

    /// The integer kernel `{x : m·x = 0}`.
    pub fn kernel_of(m: &Matrix) -> Self {
        Self::from_generators(&kernel(m))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.ambient {
            return Err(Error::Dimension {
                expected: self.ambient,
                found: n,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[Int]) -> Result<Option<Vec<Int>>> {
        self.check_dim(v.len())?;
        let mut rest = v.to_vec();
        let mut out = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.rows().iter().zip(&self.pivots) {
            if let Some(j) = rest[..p].iter().position(|x| !x.is_zero()) {
                let _ = j;
                return Ok(None);
            }
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for (x, y) in rest.iter_mut().zip(row).skip(p) {
                    *x -= &q * y;
                }
            }
            out.push(q);
        }
        Ok(rest.iter().all(Zero::is_zero).then_some(out))
    }

    pub fn member(&self, v: &[Int]) -> Result<bool> {
        Ok(self.coords(v)?.is_some())
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &IntegerLattice) -> Result<bool> {
        self.check_dim(other.ambient)?;
        for r in other.basis.rows() {
            if !self.member(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &IntegerLattice) -> Result<IntegerLattice> {
        self.check_dim(other.ambient)?;
        let mut rows = self.basis.rows().to_vec();
        rows.extend(other.basis.rows().iter().cloned());
        IntegerLattice::from_vectors(self.ambient, rows)
    }

    pub fn scaled(&self, k: &Int) -> IntegerLattice {
        IntegerLattice::from_generators(&self.basis.scale(k))
    }

    /// Structure of `self / sub`; errors if `sub ⊄ self`.
    pub fn quotient_invariants(&self, sub: &IntegerLattice) -> Result<QuotientInvariants> {
        self.check_dim(sub.ambient)?;
        let mut coords = Vec::with_capacity(sub.rank());
        for r in sub.basis.rows() {
            coords.push(
                self.coords(r)?
                    .ok_or_else(|| Error::Domain("sublattice is not contained in the lattice".into()))?,
            );
        }
        let c = Matrix::from_rows(self.rank(), coords)?;
        Ok(invariants_of_cokernel(&c, self.rank()))
    }

    /// Whether `Z^n / self` is torsion-free.
    pub fn is_saturated(&self) -> bool {
        IntegerLattice::full(self.ambient)
            .quotient_invariants(self)
            .map(|q| q.is_free())
            .unwrap_or(false)
    }
}

/// Structure of `Z^n / rowspan(m)` where `n = m.ncols()`.
pub fn cokernel_invariants(m: &Matrix) -> QuotientInvariants {
    invariants_of_cokernel(m, m.ncols())
}

fn invariants_of_cokernel(m: &Matrix, n: usize) -> QuotientInvariants {
    let d = invariant_factors(m);
    QuotientInvariants {
        free_rank: n - d.len(),
        torsion: d.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

/// Renders an integer for JSON: a number when it fits in `i64`, else a string.
pub fn int_to_json(x: &Int) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

pub fn matrix_to_json(m: &Matrix) -> serde_json::Value {
    serde_json::Value::Array(
        m.rows()
            .iter()
            .map(|r| serde_json::Value::Array(r.iter().map(int_to_json).collect()))
            .collect(),
    )
}

pub(crate) fn abs_cmp(a: &Int, b: &Int) -> std::cmp::Ordering {
    a.abs().cmp(&b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64(cols, rows).unwrap()
    }

    #[test]
    fn quotient_of_diag_two_three() {
        let full = IntegerLattice::full(2);
        let sub = IntegerLattice::from_generators(&m(2, &[vec![2, 0], vec![0, 3]]));
        let q = full.quotient_invariants(&sub).unwrap();
        assert_eq!(q.free_rank, 0);
        assert_eq!(q.torsion, vec![Int::from(6)]);
        assert_eq!(q.elementary_divisors(), vec![Int::from(2), Int::from(3)]);
    }

    #[test]
    fn membership_and_containment() {
        let l = IntegerLattice::from_generators(&m(3, &[vec![2, 4, 0], vec![0, 3, 3]]));
        assert!(l.member(&to_int_vec(&[0, 0, 0])).unwrap());
        assert!(l.member(&to_int_vec(&[2, 7, 3])).unwrap());
        assert!(!l.member(&to_int_vec(&[1, 2, 0])).unwrap());
        let sub = l.scaled(&Int::from(3));
        assert!(l.contains(&sub).unwrap());
        assert!(!sub.contains(&l).unwrap());
        let q = l.quotient_invariants(&sub).unwrap();
        assert_eq!(q.torsion, vec![Int::from(3), Int::from(3)]);
        assert!(l.member(&[Int::from(1)]).is_err());
    }

    #[test]
    fn kernel_is_saturated() {
        let a = m(3, &[vec![2, 4, 6]]);
        let k = IntegerLattice::kernel_of(&a);
        assert_eq!(k.rank(), 2);
        assert!(k.is_saturated());
        for r in k.basis().rows() {
            assert!(a.mul_vec(r).unwrap().iter().all(Zero::is_zero));
        }
    }
}
