//! Lattice points with checked 64-bit coordinates.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// An integer vector. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point(pub Vec<i64>);

impl Point {
    pub fn zero(dim: usize) -> Self {
        Point(alloc::vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn checked_add(&self, other: &Point) -> Result<Point> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Point)
    }

    pub fn checked_sub(&self, other: &Point) -> Result<Point> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Point)
    }

    /// `self + k * other`
    pub fn checked_add_scaled(&self, k: i64, other: &Point) -> Result<Point> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| {
                b.checked_mul(k)
                    .and_then(|kb| a.checked_add(kb))
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()
            .map(Point)
    }

    pub fn dot(&self, other: &[i64]) -> Result<i64> {
        self.0.iter().zip(other).try_fold(0i64, |acc, (a, b)| {
            a.checked_mul(*b)
                .and_then(|p| acc.checked_add(p))
                .ok_or(Error::Overflow)
        })
    }

    pub fn from_big(v: &[BigInt]) -> Result<Point> {
        v.iter()
            .map(|x| x.to_i64().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Point)
    }

    pub fn to_big(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }
}

impl Deref for Point {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Point {
    fn from(v: Vec<i64>) -> Self {
        Point(v)
    }
}

impl From<&[i64]> for Point {
    fn from(v: &[i64]) -> Self {
        Point(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(v: [i64; N]) -> Self {
        Point(v.to_vec())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Sorts by `grading`-degree, then lexicographically, and removes duplicates.
pub fn sort_graded(points: &mut Vec<Point>, grading: &[i64]) {
    points.sort_by_cached_key(|p| (p.dot(grading).unwrap_or(i64::MAX), p.clone()));
    points.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_is_reported() {
        let a = Point::from([i64::MAX, 0]);
        let b = Point::from([1, 0]);
        assert_eq!(a.checked_add(&b), Err(Error::Overflow));
        assert_eq!(a.dot(&[2, 0]), Err(Error::Overflow));
    }

    #[test]
    fn graded_sort_breaks_ties_lexicographically() {
        let mut pts = alloc::vec![
            Point::from([1, 4]),
            Point::from([1, 0]),
            Point::from([0, 0]),
            Point::from([1, 0]),
            Point::from([2, 1]),
        ];
        sort_graded(&mut pts, &[1, 0]);
        assert_eq!(
            pts,
            alloc::vec![
                Point::from([0, 0]),
                Point::from([1, 0]),
                Point::from([1, 4]),
                Point::from([2, 1]),
            ]
        );
    }
}
