//! Column-style Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::ext_gcd;
use crate::matrix::Matrix;

/// Result of [`hermite_normal_form`]: `h = m * u` with `u` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hermite {
    pub h: Matrix<BigInt>,
    pub u: Matrix<BigInt>,
    /// `(row, col)` of each pivot; the first `rank` columns of `h` are
    /// nonzero and the remaining ones vanish.
    pub pivots: alloc::vec::Vec<(usize, usize)>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn col_combine(m: &mut Matrix<BigInt>, a: usize, b: usize, coeffs: [&BigInt; 4]) {
    // new_a = p*A + q*B, new_b = r*A + s*B
    let [p, q, r, s] = coeffs;
    for i in 0..m.rows() {
        let x = m[(i, a)].clone();
        let y = m[(i, b)].clone();
        m[(i, a)] = p * &x + q * &y;
        m[(i, b)] = r * &x + s * &y;
    }
}

fn col_axpy(m: &mut Matrix<BigInt>, dst: usize, k: &BigInt, src: usize) {
    for i in 0..m.rows() {
        let v = k * &m[(i, src)];
        m[(i, dst)] -= v;
    }
}

fn negate_col(m: &mut Matrix<BigInt>, j: usize) {
    for i in 0..m.rows() {
        let v = -m[(i, j)].clone();
        m[(i, j)] = v;
    }
}

/// Computes `H = M U` in column Hermite normal form.
///
/// Pivot rows increase strictly with the column index, pivots are positive,
/// entries to the right of a pivot are zero and entries to its left lie in
/// `[0, pivot)`.
pub fn hermite_normal_form(m: &Matrix<BigInt>) -> Hermite {
    let mut h = m.clone();
    let n = h.cols();
    let mut u = Matrix::identity(n);
    let mut pivots = alloc::vec::Vec::new();
    let mut col = 0;
    for row in 0..h.rows() {
        if col == n {
            break;
        }
        for j in col + 1..n {
            if h[(row, j)].is_zero() {
                continue;
            }
            let x = h[(row, col)].clone();
            let y = h[(row, j)].clone();
            let (g, s, t) = ext_gcd(&x, &y);
            let r = -(&y / &g);
            let q = &x / &g;
            col_combine(&mut h, col, j, [&s, &t, &r, &q]);
            col_combine(&mut u, col, j, [&s, &t, &r, &q]);
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            negate_col(&mut h, col);
            negate_col(&mut u, col);
        }
        let pivot = h[(row, col)].clone();
        for k in 0..col {
            let q = h[(row, k)].div_floor(&pivot);
            if !q.is_zero() {
                col_axpy(&mut h, k, &q, col);
                col_axpy(&mut u, k, &q, col);
            }
        }
        pivots.push((row, col));
        col += 1;
    }
    Hermite { h, u, pivots }
}

/// Row-style echelon form of an integer basis: rows span the same lattice,
/// pivot columns strictly increase down the rows and zero rows are dropped.
pub fn row_echelon_basis(rows: &Matrix<BigInt>) -> Matrix<BigInt> {
    let t = hermite_normal_form(&rows.transpose());
    let r = t.rank();
    let idx: alloc::vec::Vec<usize> = (0..r).collect();
    t.h.select_cols(&idx).transpose()
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn determinant(m: &Matrix<BigInt>) -> BigInt {
    let n = m.rows();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a = m.clone();
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn big(rows: &[Vec<i64>]) -> Matrix<BigInt> {
        Matrix::from_rows(rows).unwrap().map(|&x| BigInt::from(x))
    }

    fn check_form(m: &Matrix<BigInt>, res: &Hermite) {
        assert_eq!(m.mul(&res.u).unwrap(), res.h);
        assert_eq!(determinant(&res.u).abs(), BigInt::from(1));
        for (k, &(row, col)) in res.pivots.iter().enumerate() {
            assert_eq!(col, k);
            let p = &res.h[(row, col)];
            assert!(p.is_positive());
            for j in col + 1..m.cols() {
                assert!(res.h[(row, j)].is_zero());
            }
            for j in 0..col {
                assert!(!res.h[(row, j)].is_negative() && &res.h[(row, j)] < p);
            }
            for i in 0..row {
                assert!(res.h[(i, col)].is_zero());
            }
        }
        for j in res.rank()..m.cols() {
            assert!((0..m.rows()).all(|i| res.h[(i, j)].is_zero()));
        }
    }

    #[test]
    fn identity_is_fixed() {
        let m = big(&[vec![1, 0], vec![0, 1]]);
        let r = hermite_normal_form(&m);
        assert_eq!(r.h, m);
        assert_eq!(r.u, m);
    }

    #[test]
    fn coprime_row_reduces_to_unit() {
        let m = big(&[vec![3, 5, 7]]);
        let r = hermite_normal_form(&m);
        assert_eq!(r.h, big(&[vec![1, 0, 0]]));
        check_form(&m, &r);
    }

    #[test]
    fn diagonal_two_is_already_reduced() {
        let m = big(&[vec![2, 0], vec![0, 2]]);
        let r = hermite_normal_form(&m);
        assert_eq!(r.h, m);
        assert_eq!(r.u, Matrix::identity(2));
    }

    #[test]
    fn determinant_small() {
        assert_eq!(
            determinant(&big(&[vec![2, 1], vec![1, 3]])),
            BigInt::from(5)
        );
        assert_eq!(
            determinant(&big(&[vec![0, 1], vec![1, 0]])),
            BigInt::from(-1)
        );
        assert_eq!(
            determinant(&big(&[vec![1, 2], vec![2, 4]])),
            BigInt::from(0)
        );
    }

    #[test]
    fn echelon_basis_spans_same_lattice() {
        let rows = big(&[vec![2, 4, 6], vec![1, 1, 1], vec![3, 5, 7]]);
        let e = row_echelon_basis(&rows);
        assert_eq!(e.rows(), 2);
        assert_eq!(e.row(0)[0], BigInt::from(1));
    }

    proptest! {
        #[test]
        fn reassembles_input(rows in 1usize..4, cols in 1usize..5,
                             seed in proptest::collection::vec(-6i64..7, 16)) {
            let data: Vec<i64> = seed.into_iter().take(rows * cols).collect();
            prop_assume!(data.len() == rows * cols);
            let m = Matrix::from_vec(rows, cols, data).unwrap().map(|&x| BigInt::from(x));
            let r = hermite_normal_form(&m);
            check_form(&m, &r);
        }
    }
}
