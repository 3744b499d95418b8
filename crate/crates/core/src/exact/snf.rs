//! Smith normal form with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::Matrix;

/// `d = u * m * v`, `d` diagonal with `d_1 | d_2 | ...`, `u` and `v` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub d: Matrix<BigInt>,
    pub u: Matrix<BigInt>,
    pub v: Matrix<BigInt>,
}

impl Smith {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> alloc::vec::Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect()
    }
}

fn row_axpy(m: &mut Matrix<BigInt>, dst: usize, k: &BigInt, src: usize) {
    for j in 0..m.cols() {
        let v = k * &m[(src, j)];
        m[(dst, j)] -= v;
    }
}

fn col_axpy(m: &mut Matrix<BigInt>, dst: usize, k: &BigInt, src: usize) {
    for i in 0..m.rows() {
        let v = k * &m[(i, src)];
        m[(i, dst)] -= v;
    }
}

pub fn smith_normal_form(m: &Matrix<BigInt>) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Smith { d, u, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                if !q.is_zero() {
                    row_axpy(&mut d, i, &q, t);
                    row_axpy(&mut u, i, &q, t);
                }
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                if !q.is_zero() {
                    col_axpy(&mut d, j, &q, t);
                    col_axpy(&mut v, j, &q, t);
                }
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offending {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    row_axpy(&mut d, t, &minus_one, i);
                    row_axpy(&mut u, t, &minus_one, i);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            for j in 0..cols {
                let x = -d[(t, j)].clone();
                d[(t, j)] = x;
            }
            for j in 0..rows {
                let x = -u[(t, j)].clone();
                u[(t, j)] = x;
            }
        }
    }
    Smith { d, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::hnf::determinant;
    use alloc::vec;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn big(rows: &[Vec<i64>]) -> Matrix<BigInt> {
        Matrix::from_rows(rows).unwrap().map(|&x| BigInt::from(x))
    }

    fn check(m: &Matrix<BigInt>, s: &Smith) {
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(determinant(&s.u).abs(), BigInt::from(1));
        assert_eq!(determinant(&s.v).abs(), BigInt::from(1));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(f.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn identity() {
        let m = big(&[vec![1, 0], vec![0, 1]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, m);
        check(&m, &s);
    }

    #[test]
    fn row_two_four() {
        let m = big(&[vec![2, 4]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, big(&[vec![2, 0]]));
        check(&m, &s);
    }

    #[test]
    fn diag_six_four() {
        let m = big(&[vec![6, 0], vec![0, 4]]);
        let s = smith_normal_form(&m);
        assert_eq!(
            s.invariant_factors(),
            vec![BigInt::from(2), BigInt::from(12)]
        );
        check(&m, &s);
    }

    proptest! {
        #[test]
        fn reassembles_input(rows in 1usize..4, cols in 1usize..5,
                             seed in proptest::collection::vec(-6i64..7, 16)) {
            let data: Vec<i64> = seed.into_iter().take(rows * cols).collect();
            prop_assume!(data.len() == rows * cols);
            let m = Matrix::from_vec(rows, cols, data).unwrap().map(|&x| BigInt::from(x));
            let s = smith_normal_form(&m);
            check(&m, &s);
        }
    }
}
