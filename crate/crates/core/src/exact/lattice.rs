//! Coordinates in which the columns of `A` generate the full lattice `Z^r`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hnf::hermite_normal_form;
use crate::error::{Error, Result};
use crate::matrix::{GeneratorMatrix, Matrix};
use crate::vector::Point;

/// Lattice `L` generated by the columns of a generator matrix.
///
/// A lattice point `y` (original coordinates, length `d`) has normalized
/// coordinates `z = transform * y / denominator` (length `r`), and
/// `y = basis * z`. The columns of `reduced` generate `Z^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeNormalization {
    pub rank: usize,
    /// `d x r`, columns form a basis of `L` (column Hermite form).
    pub basis: Matrix<BigInt>,
    /// `r x d` integer matrix; divide by `denominator` to get coordinates.
    pub transform: Matrix<BigInt>,
    pub denominator: BigInt,
    /// `r x n` image of `A`.
    pub reduced: GeneratorMatrix,
}

pub fn lattice_normalize(a: &GeneratorMatrix) -> Result<LatticeNormalization> {
    let h = hermite_normal_form(&a.to_big());
    let r = h.rank();
    let d = a.dim();
    let cols: Vec<usize> = (0..r).collect();
    let basis = h.h.select_cols(&cols);
    let pivot_rows: Vec<usize> = h.pivots.iter().map(|&(row, _)| row).collect();

    // inverse of the lower-triangular pivot block, by forward substitution
    let block = basis.select_rows(&pivot_rows);
    let mut inv = Matrix::<BigRational>::zeros(r, r);
    for k in 0..r {
        // solve block * x = e_k
        for i in 0..r {
            let mut acc = if i == k {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            for j in 0..i {
                acc -= BigRational::from_integer(block[(i, j)].clone()) * &inv[(j, k)];
            }
            inv[(i, k)] = acc / BigRational::from_integer(block[(i, i)].clone());
        }
    }
    let denominator = (0..r)
        .flat_map(|i| (0..r).map(move |k| (i, k)))
        .fold(BigInt::one(), |acc, (i, k)| acc.lcm(inv[(i, k)].denom()));
    let mut transform = Matrix::zeros(r, d);
    for i in 0..r {
        for (k, &row) in pivot_rows.iter().enumerate() {
            transform[(i, row)] =
                (&inv[(i, k)] * BigRational::from_integer(denominator.clone())).to_integer();
        }
    }

    let mut norm = LatticeNormalization {
        rank: r,
        basis,
        transform,
        denominator,
        reduced: a.clone(),
    };
    let reduced_cols = a
        .columns()
        .iter()
        .map(|c| {
            norm.normalize(c)?
                .ok_or(Error::Invalid("column outside its own lattice"))
        })
        .collect::<Result<Vec<_>>>()?;
    norm.reduced = GeneratorMatrix::from_columns(&reduced_cols)?;
    Ok(norm)
}

impl LatticeNormalization {
    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Normalized coordinates of `y`, or `None` when `y` is not in `L`.
    pub fn normalize(&self, y: &Point) -> Result<Option<Point>> {
        if y.dim() != self.ambient_dim() {
            return Err(Error::Dimension(
                "point does not match the ambient dimension",
            ));
        }
        let yb = y.to_big();
        let scaled = self.transform.mul_vec(&yb);
        let mut z = Vec::with_capacity(self.rank);
        for s in scaled {
            let (q, rem) = s.div_rem(&self.denominator);
            if !rem.is_zero() {
                return Ok(None);
            }
            z.push(q);
        }
        if self.basis.mul_vec(&z) != yb {
            return Ok(None);
        }
        Point::from_big(&z).map(Some)
    }

    pub fn contains(&self, y: &Point) -> Result<bool> {
        Ok(self.normalize(y)?.is_some())
    }

    /// Maps normalized coordinates back to the original space.
    pub fn denormalize(&self, z: &Point) -> Result<Point> {
        Point::from_big(&self.basis.mul_vec(&z.to_big()))
    }

    /// Pulls a linear form on the original space back to normalized
    /// coordinates: `f . y = (f * basis) . z`.
    pub fn pull_back_form(&self, f: &[i64]) -> Result<Vec<i64>> {
        let fb: Vec<BigInt> = f.iter().map(|&x| BigInt::from(x)).collect();
        let out: Vec<BigInt> = (0..self.rank)
            .map(|k| {
                (0..self.ambient_dim())
                    .map(|i| &fb[i] * &self.basis[(i, k)])
                    .sum()
            })
            .collect();
        Ok(Point::from_big(&out)?.0)
    }

    /// Pushes a linear form on normalized coordinates forward to a primitive
    /// integer form on the original space that agrees with it on `L` up to a
    /// positive factor.
    pub fn push_forward_form(&self, g: &[i64]) -> Result<Vec<i64>> {
        let out: Vec<BigInt> = (0..self.ambient_dim())
            .map(|i| {
                (0..self.rank)
                    .map(|k| BigInt::from(g[k]) * &self.transform[(k, i)])
                    .sum()
            })
            .collect();
        Ok(Point::from_big(&super::rational::primitive(&out))?.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::snf::smith_normal_form;
    use alloc::vec;

    fn gm(rows: &[Vec<i64>]) -> GeneratorMatrix {
        GeneratorMatrix::from_rows(rows).unwrap()
    }

    fn full_lattice(n: &LatticeNormalization) -> bool {
        let s = smith_normal_form(&n.reduced.to_big());
        let f = s.invariant_factors();
        f.len() == n.rank && f.iter().all(|x| x.is_one())
    }

    #[test]
    fn coprime_row_unchanged() {
        let a = gm(&[vec![3, 5, 7]]);
        let n = lattice_normalize(&a).unwrap();
        assert_eq!(n.rank, 1);
        assert_eq!(n.reduced, a);
        assert!(full_lattice(&n));
    }

    #[test]
    fn even_row_rescaled() {
        let n = lattice_normalize(&gm(&[vec![2, 4]])).unwrap();
        assert_eq!(n.rank, 1);
        assert_eq!(n.reduced, gm(&[vec![1, 2]]));
        assert!(!n.contains(&Point::from([3])).unwrap());
        assert_eq!(
            n.normalize(&Point::from([6])).unwrap(),
            Some(Point::from([3]))
        );
    }

    #[test]
    fn identity_unchanged() {
        let a = gm(&[vec![1, 0], vec![0, 1]]);
        let n = lattice_normalize(&a).unwrap();
        assert_eq!(n.rank, 2);
        assert_eq!(n.reduced, a);
    }

    #[test]
    fn rank_deficient_lattice() {
        // columns span the line y = 2x inside Z^2, lattice generated by (1,2)
        let a = gm(&[vec![1, 2], vec![2, 4]]);
        let n = lattice_normalize(&a).unwrap();
        assert_eq!(n.rank, 1);
        assert!(full_lattice(&n));
        assert!(n.contains(&Point::from([3, 6])).unwrap());
        assert!(!n.contains(&Point::from([1, 3])).unwrap());
        let z = n.normalize(&Point::from([-2, -4])).unwrap().unwrap();
        assert_eq!(n.denormalize(&z).unwrap(), Point::from([-2, -4]));
    }

    #[test]
    fn forms_are_compatible() {
        let a = gm(&[vec![2, 0, 2], vec![0, 3, 3]]);
        let n = lattice_normalize(&a).unwrap();
        let f = [1, 1];
        let g = n.pull_back_form(&f).unwrap();
        for col in a.columns() {
            let z = n.normalize(&col).unwrap().unwrap();
            assert_eq!(col.dot(&f).unwrap(), z.dot(&g).unwrap());
        }
        let back = n.push_forward_form(&g).unwrap();
        // positive multiple of the original on L
        let ratio: Vec<i64> = a.columns().iter().map(|c| c.dot(&back).unwrap()).collect();
        let orig: Vec<i64> = a.columns().iter().map(|c| c.dot(&f).unwrap()).collect();
        for (r, o) in ratio.iter().zip(&orig) {
            assert_eq!(r * orig[0], o * ratio[0]);
        }
    }
}
