use super::{abs_cmp, hnf, Int, Matrix};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Nonzero Smith invariants `d_1 | d_2 | … | d_r` of `m` (all positive).
pub fn invariant_factors(m: &Matrix) -> Vec<Int> {
    // Row HNF first: it is square-ish and shrinks the work for tall inputs.
    let mut a = hnf(m).into_rows();
    let rows = a.len();
    let cols = m.ncols();
    let mut diag = Vec::with_capacity(rows);
    for t in 0..rows {
        // Choose the smallest nonzero entry in the remaining block as pivot.
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| abs_cmp(x, &a[bi][bj]).is_lt()) {
                        best = Some((i, j));
                        if x.abs().is_one() {
                            break;
                        }
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(diag);
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                let (head, tail) = a.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[t]).skip(t) {
                    if !y.is_zero() {
                        *x -= &q * y;
                    }
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    if !row[t].is_zero() {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold a row in.
            let bad = (t + 1..rows).find(|&i| a[i].iter().skip(t + 1).any(|x| !x.mod_floor(&p).is_zero()));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(&tail[0]).skip(t) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    finish(diag)
}

fn finish(mut d: Vec<Int>) -> Vec<Int> {
    // Enforce the divisibility chain (a no-op when the pivoting already did).
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Prime-power factors of a list of positive integers, sorted.
pub fn elementary_divisors(factors: &[Int]) -> Vec<Int> {
    let mut out = Vec::new();
    for f in factors {
        let mut n = f.abs();
        let mut p = Int::from(2);
        while &p * &p <= n {
            if (&n % &p).is_zero() {
                let mut q = Int::one();
                while (&n % &p).is_zero() {
                    n /= &p;
                    q *= &p;
                }
                out.push(q);
            }
            p += 1;
        }
        if n > Int::one() {
            out.push(n);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(rows: &[Vec<i64>], cols: usize) -> Vec<i64> {
        invariant_factors(&Matrix::from_i64(cols, rows).unwrap())
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect()
    }

    #[test]
    fn diagonal_cases() {
        assert_eq!(f(&[vec![2, 0], vec![0, 3]], 2), vec![1, 6]);
        assert_eq!(f(&[vec![2, 0], vec![0, 4]], 2), vec![2, 4]);
        assert_eq!(f(&[vec![0, 0]], 2), Vec::<i64>::new());
    }

    #[test]
    fn non_diagonal() {
        // Classic example with invariants 2, 6, 12.
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(f(&m, 3), vec![2, 6, 12]);
    }

    #[test]
    fn elementary_divisors_split() {
        let d = elementary_divisors(&[Int::from(6), Int::from(12)]);
        let d: Vec<i64> = d.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 3, 3, 4]);
    }
}
