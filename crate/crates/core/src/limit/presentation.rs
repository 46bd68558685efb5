use crate::error::{Error, Result};
use crate::lattice::{cokernel_invariants, hnf, Int, IntegerLattice, Matrix, QuotientInvariants};
use num_integer::Integer;
use num_traits::Zero;

/// `Z^n / rowspan(relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPresentation {
    generators: usize,
    relations: Matrix,
    relation_hnf: Matrix,
}

impl AbelianPresentation {
    pub fn new(generators: usize, relations: Matrix) -> Result<Self> {
        if relations.ncols() != generators {
            return Err(Error::Dimension {
                expected: generators,
                found: relations.ncols(),
            });
        }
        let relation_hnf = hnf(&relations);
        Ok(AbelianPresentation {
            generators,
            relations,
            relation_hnf,
        })
    }

    pub fn free(generators: usize) -> Self {
        AbelianPresentation {
            generators,
            relations: Matrix::zeros(0, generators),
            relation_hnf: Matrix::zeros(0, generators),
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn is_free_presentation(&self) -> bool {
        self.relation_hnf.nrows() == 0
    }

    pub fn invariants(&self) -> QuotientInvariants {
        cokernel_invariants(&self.relations)
    }

    /// Canonical representative of the class of `v`: entries at the pivot
    /// columns of the relation HNF are reduced into `[0, pivot)`.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        let mut x = v.to_vec();
        for row in self.relation_hnf.rows() {
            let Some(c) = row.iter().position(|a| !a.is_zero()) else {
                continue;
            };
            let q = x[c].div_floor(&row[c]);
            if q.is_zero() {
                continue;
            }
            for (xi, r) in x.iter_mut().zip(row) {
                *xi -= &q * r;
            }
        }
        x
    }

    pub fn equal(&self, a: &[Int], b: &[Int]) -> bool {
        self.reduce(a) == self.reduce(b)
    }

    pub fn is_zero(&self, v: &[Int]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn relation_lattice(&self) -> IntegerLattice {
        IntegerLattice::from_generators(&self.relations)
    }
}

/// A homomorphism given on generators: column `j` is the image of generator `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: AbelianPresentation,
    pub target: AbelianPresentation,
    pub matrix: Matrix,
}

impl GroupHom {
    pub fn new(source: AbelianPresentation, target: AbelianPresentation, matrix: Matrix) -> Result<Self> {
        if matrix.nrows() != target.generators() || matrix.ncols() != source.generators() {
            return Err(Error::Dimension {
                expected: target.generators() * source.generators(),
                found: matrix.nrows() * matrix.ncols(),
            });
        }
        let h = GroupHom { source, target, matrix };
        if !h.is_well_defined()? {
            return Err(Error::System("map does not send relations to relations".into()));
        }
        Ok(h)
    }

    /// Relations of the source map into the relation lattice of the target.
    pub fn is_well_defined(&self) -> Result<bool> {
        well_defined(&self.matrix, &self.source, &self.target)
    }

    pub fn apply(&self, v: &[Int]) -> Result<Vec<Int>> {
        self.matrix.mul_vec(v)
    }
}

pub fn well_defined(m: &Matrix, source: &AbelianPresentation, target: &AbelianPresentation) -> Result<bool> {
    let rel = target.relation_lattice();
    for r in source.relations().rows() {
        if !rel.member(&m.mul_vec(r)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_six() {
        let p = AbelianPresentation::new(1, Matrix::from_i64(1, &[vec![6]]).unwrap()).unwrap();
        assert_eq!(p.invariants().torsion, vec![Int::from(6)]);
        assert!(p.equal(&[Int::from(7)], &[Int::from(1)]));
        assert!(p.is_zero(&[Int::from(-12)]));
    }

    #[test]
    fn hom_well_definedness() {
        let z6 = AbelianPresentation::new(1, Matrix::from_i64(1, &[vec![6]]).unwrap()).unwrap();
        let z3 = AbelianPresentation::new(1, Matrix::from_i64(1, &[vec![3]]).unwrap()).unwrap();
        assert!(GroupHom::new(z6.clone(), z3.clone(), Matrix::from_i64(1, &[vec![1]]).unwrap()).is_ok());
        assert!(GroupHom::new(z3, z6, Matrix::from_i64(1, &[vec![1]]).unwrap()).is_err());
    }
}
