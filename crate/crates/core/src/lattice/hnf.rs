use super::{abs_cmp, Int, Matrix};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row Hermite normal form with zero rows dropped: pivots strictly increase,
/// are positive, and entries above a pivot lie in `[0, pivot)`.
pub fn hnf(m: &Matrix) -> Matrix {
    let rows = reduce(m.rows().to_vec(), m.ncols(), None);
    Matrix::from_rows(m.ncols(), rows).expect("widths preserved")
}

/// Returns `(h, u)` with `u` unimodular and `u·m = h`, `h` in Hermite normal
/// form. Unlike [`hnf`], zero rows of `h` are kept at the bottom.
pub fn hnf_with_transform(m: &Matrix) -> (Matrix, Matrix) {
    let n = m.nrows();
    let mut u = Matrix::identity(n).into_rows();
    let mut rows = reduce(m.rows().to_vec(), m.ncols(), Some(&mut u));
    rows.resize(n, vec![Int::zero(); m.ncols()]);
    (
        Matrix::from_rows(m.ncols(), rows).expect("widths preserved"),
        Matrix::from_rows(n, u).expect("square"),
    )
}

/// Basis (as rows) of the integer kernel `{x : m·x = 0}`, in Hermite normal form.
pub fn kernel(m: &Matrix) -> Matrix {
    let t = m.transpose();
    let (h, u) = hnf_with_transform(&t);
    let rank = h.rows().iter().take_while(|r| r.iter().any(|x| !x.is_zero())).count();
    let basis: Vec<Vec<Int>> = u.rows()[rank..].to_vec();
    hnf(&Matrix::from_rows(m.ncols(), basis).expect("widths preserved"))
}

fn sub_multiple(target: &mut [Int], src: &[Int], q: &Int, from: usize) {
    for (x, y) in target.iter_mut().zip(src).skip(from) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn reduce(mut rows: Vec<Vec<Int>>, ncols: usize, mut u: Option<&mut Vec<Vec<Int>>>) -> Vec<Vec<Int>> {
    let n = rows.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == n {
            break;
        }
        loop {
            // Smallest nonzero entry in column c at or below row r.
            let pick = (r..n)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| abs_cmp(&rows[a][c], &rows[b][c]).then(a.cmp(&b)));
            let Some(i) = pick else { break };
            rows.swap(r, i);
            if let Some(u) = u.as_deref_mut() {
                u.swap(r, i);
            }
            let mut done = true;
            for k in r + 1..n {
                if rows[k][c].is_zero() {
                    continue;
                }
                let q = rows[k][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(k);
                sub_multiple(&mut tail[0], &head[r], &q, c);
                if let Some(u) = u.as_deref_mut() {
                    let (uh, ut) = u.split_at_mut(k);
                    sub_multiple(&mut ut[0], &uh[r], &q, 0);
                }
                if !rows[k][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r == n || rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
            if let Some(u) = u.as_deref_mut() {
                for x in u[r].iter_mut() {
                    *x = -&*x;
                }
            }
        }
        for k in 0..r {
            if rows[k][c].is_zero() {
                continue;
            }
            let q = rows[k][c].div_floor(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(r);
            sub_multiple(&mut head[k], &tail[0], &q, c);
            if let Some(u) = u.as_deref_mut() {
                let (uh, ut) = u.split_at_mut(r);
                sub_multiple(&mut uh[k], &ut[0], &q, 0);
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_is_canonical() {
        let a = Matrix::from_i64(3, &[vec![2, 3, 1], vec![4, 1, 0], vec![6, 4, 1]]).unwrap();
        let b = Matrix::from_i64(3, &[vec![4, 1, 0], vec![2, 3, 1]]).unwrap();
        assert_eq!(hnf(&a), hnf(&b));
        let h = hnf(&a);
        assert_eq!(h.nrows(), 2);
    }

    #[test]
    fn transform_reproduces_hnf() {
        let a = Matrix::from_i64(2, &[vec![3, 5], vec![6, 10], vec![1, 7]]).unwrap();
        let (h, u) = hnf_with_transform(&a);
        assert_eq!(u.mul(&a).unwrap(), h);
        assert!(u.is_unimodular());
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let a = Matrix::from_i64(3, &[vec![1, 2, 3], vec![2, 4, 6]]).unwrap();
        let k = kernel(&a);
        assert_eq!(k.nrows(), 2);
        for r in k.rows() {
            assert!(a.mul_vec(r).unwrap().iter().all(Zero::is_zero));
        }
    }
}
