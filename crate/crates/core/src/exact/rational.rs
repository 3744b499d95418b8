//! Gaussian elimination over the rationals.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;

pub fn to_rational(m: &Matrix<BigInt>) -> Matrix<BigRational> {
    m.map(|x| BigRational::from_integer(x.clone()))
}

/// Reduced row echelon form. Returns the reduced matrix and its pivot columns.
pub fn rref(m: &Matrix<BigRational>) -> (Matrix<BigRational>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a[(row, col)].recip();
        for j in 0..a.cols() {
            let v = &a[(row, j)] * &inv;
            a[(row, j)] = v;
        }
        for i in 0..a.rows() {
            if i == row || a[(i, col)].is_zero() {
                continue;
            }
            let f = a[(i, col)].clone();
            for j in 0..a.cols() {
                let v = &f * &a[(row, j)];
                a[(i, j)] -= v;
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix<BigInt>) -> usize {
    rref(&to_rational(m)).1.len()
}

/// Indices of the earliest maximal linearly independent set of rows.
pub fn independent_rows(m: &Matrix<BigInt>) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut current = 0;
    for i in 0..m.rows() {
        let mut idx = kept.clone();
        idx.push(i);
        let r = rank(&m.select_rows(&idx));
        if r > current {
            kept.push(i);
            current = r;
        }
    }
    kept
}

/// Solves `m x = b` for square invertible `m`.
pub fn solve_square(m: &Matrix<BigRational>, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.rows();
    let mut aug = Matrix::zeros(n, n + 1);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let (r, piv) = rref(&aug);
    if piv.len() != n || piv.iter().enumerate().any(|(k, &c)| k != c) {
        return None;
    }
    Some((0..n).map(|i| r[(i, n)].clone()).collect())
}

/// Integer basis of the rational null space of `m` (as rows), each row primitive.
pub fn kernel_basis(m: &Matrix<BigInt>) -> Vec<Vec<BigInt>> {
    let cols = m.cols();
    let (r, pivots) = rref(&to_rational(m));
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = alloc::vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r[(k, f)].clone();
            }
            primitive_integer(&v)
        })
        .collect()
}

/// Scales a rational vector to the primitive integer vector with the same direction.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    primitive(&ints)
}

pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn is_nonneg(v: &BigRational) -> bool {
    !v.is_negative()
}
