//! Exact linear algebra over the rationals and the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;

/// Reduced row echelon form; returns the reduced rows and the pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn to_rational(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let ncols = m.first().map_or(0, Vec::len);
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    rref(to_rational(m)).1.len()
}

/// Indices of a maximal set of linearly independent columns (the first
/// such set in column order).
pub fn independent_columns(m: &[Vec<i64>]) -> Vec<usize> {
    rref(to_rational(m)).1
}

/// True when `v` is a rational combination of the rows of `m`.
pub fn in_row_span(m: &[Vec<i64>], v: &[i64]) -> bool {
    let mut ext = m.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == rank(m)
}

/// Row-style Hermite normal form of an integer matrix, zero rows dropped.
/// Pivots are positive and entries above a pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let (h, _) = hnf_with_transform(m);
    h.into_iter().filter(|r| r.iter().any(|v| !v.is_zero())).collect()
}

/// Returns `(E, U)` with `U` unimodular and `U * m = E` in Hermite form
/// (zero rows last).
fn hnf_with_transform(m: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut a = m.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..nrows)
        .map(|i| {
            (0..nrows)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // Euclid on column c among rows r.. until one nonzero entry remains
        loop {
            let nz: Vec<usize> = (r..nrows).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz
                .iter()
                .min_by(|&&x, &&y| a[x][c].abs().cmp(&a[y][c].abs()))
                .expect("nonempty");
            a.swap(r, p);
            u.swap(r, p);
            if nz.len() == 1 {
                break;
            }
            for i in r + 1..nrows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                combine(&mut a, i, r, &q);
                combine(&mut u, i, r, &q);
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for v in a[r].iter_mut().chain(u[r].iter_mut()) {
                *v = -&*v;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                combine(&mut a, i, r, &q);
                combine(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (a, u)
}

/// `rows[i] -= q * rows[k]`
fn combine(rows: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
    let src = rows[k].clone();
    for (v, s) in rows[i].iter_mut().zip(&src) {
        *v -= q * s;
    }
}

/// A lattice basis of `{a in Z^m : a * m = 0}` in Hermite normal form.
pub fn integer_left_kernel(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let (e, u) = hnf_with_transform(&big);
    let kernel: Vec<Vec<BigInt>> = e
        .iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(Zero::is_zero))
        .map(|(_, urow)| urow)
        .collect();
    hermite_normal_form(&kernel)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(m: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
        m.iter()
            .map(|r| r.iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect()
    }

    #[test]
    fn rank_and_pivots() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&m), 2);
        assert_eq!(independent_columns(&m), vec![0, 1]);
        assert!(in_row_span(&m, &[1, 3, 4]));
        assert!(!in_row_span(&m, &[0, 0, 1]));
    }

    #[test]
    fn left_kernel_of_coin_matrix() {
        let h = vec![vec![2, 1, 0], vec![0, 1, 1], vec![-2, -2, -1]];
        assert_eq!(big(&integer_left_kernel(&h)), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn left_kernel_is_a_lattice_basis() {
        // kernel of the column (2, 4) is spanned by (2, -1), not (4, -2)
        let h = vec![vec![2], vec![4]];
        assert_eq!(big(&integer_left_kernel(&h)), vec![vec![2, -1]]);
    }

    #[test]
    fn hermite_form_is_reduced() {
        let m: Vec<Vec<BigInt>> = [[4, 6, 0], [2, 3, 5]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert_eq!(big(&hermite_normal_form(&m)), vec![vec![2, 3, 5], vec![0, 0, 10]]);
    }
}
