//! Geometry of the cone `K` spanned by the generator columns.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::lattice::{lattice_normalize, LatticeNormalization};
use crate::exact::lp::{LinearSystem, Optimum, Relation};
use crate::exact::rational::{independent_rows, primitive, primitive_integer, to_rational};
use crate::matrix::GeneratorMatrix;
use crate::pool::{Pool, Sequential};
use crate::vector::Point;

/// Pointedness certificate, extreme columns and facets of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeProfile {
    /// Primitive integer grading with `grading . a_i >= 1` for every column.
    pub grading: Vec<i64>,
    /// Zero-based indices of the columns kept as extreme rays, ascending.
    pub extreme_columns: Vec<usize>,
    /// Rows `b` with `K = { x in span(A) : b . x >= 0 }`, original coordinates.
    pub inequalities: Vec<Vec<i64>>,
    /// The same facets in normalized lattice coordinates.
    pub normalized_inequalities: Vec<Vec<i64>>,
}

impl ConeProfile {
    pub fn new(a: &GeneratorMatrix, lattice: &LatticeNormalization) -> Result<Self> {
        Self::with_pool(a, lattice, &Sequential)
    }

    pub fn with_pool<P: Pool>(
        a: &GeneratorMatrix,
        lattice: &LatticeNormalization,
        pool: &P,
    ) -> Result<Self> {
        let grading = pointedness_certificate(a)?;
        let extreme_columns = extreme_columns_in(a, &grading, pool)?;
        let normalized_inequalities = dual_extreme_rays(&lattice.reduced)?;
        let mut inequalities = normalized_inequalities
            .iter()
            .map(|g| lattice.push_forward_form(g))
            .collect::<Result<Vec<_>>>()?;
        inequalities.sort();
        Ok(ConeProfile {
            grading,
            extreme_columns,
            inequalities,
            normalized_inequalities,
        })
    }
}

fn big_rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Finds a primitive integer `c` with `c . a_i >= 1` for all columns.
///
/// Among rational solutions the one minimizing `sum_i c . a_i` is taken,
/// then denominators are cleared.
pub fn pointedness_certificate(a: &GeneratorMatrix) -> Result<Vec<i64>> {
    let d = a.dim();
    let mut lp = LinearSystem::new(d);
    let mut objective = alloc::vec![BigRational::zero(); d];
    for col in a.columns() {
        lp.push(
            col.iter().map(|&x| big_rat(x)).collect(),
            Relation::Ge,
            big_rat(1),
        );
        for (o, &x) in objective.iter_mut().zip(col.iter()) {
            *o += big_rat(x);
        }
    }
    let point = match lp.minimize(&objective) {
        Optimum::Optimal { point, .. } => point,
        Optimum::Infeasible(_) => return Err(Error::NotPointed),
        Optimum::Unbounded => unreachable!("objective is bounded below by n"),
    };
    let c = Point::from_big(&primitive_integer(&point))?;
    debug_assert!(a
        .columns()
        .iter()
        .all(|col| col.dot(&c).is_ok_and(|v| v >= 1)));
    Ok(c.0)
}

/// `true` iff `x` is a nonnegative rational combination of `cols`.
fn in_cone_of(cols: &[Point], x: &Point) -> bool {
    let dim = x.dim();
    let mut lp = LinearSystem::new(cols.len()).all_nonneg();
    for i in 0..dim {
        lp.push(
            cols.iter().map(|c| big_rat(c[i])).collect(),
            Relation::Eq,
            big_rat(x[i]),
        );
    }
    lp.feasible().is_feasible()
}

/// Membership in `K = A R_+^n`, decided by an exact LP.
pub fn cone_membership(a: &GeneratorMatrix, x: &Point) -> Result<bool> {
    if x.dim() != a.dim() {
        return Err(Error::Dimension(
            "point does not match the ambient dimension",
        ));
    }
    Ok(in_cone_of(&a.columns(), x))
}

/// Membership in `Q_sat = K ∩ L`.
pub fn qsat_membership(a: &GeneratorMatrix, x: &Point) -> Result<bool> {
    let lattice = lattice_normalize(a)?;
    Ok(lattice.contains(x)? && cone_membership(a, x)?)
}

fn primitive_direction(p: &Point) -> Result<Point> {
    Point::from_big(&primitive(&p.to_big()))
}

/// Columns spanning extreme rays of `K`, one per ray: the column of least
/// degree, then lexicographically smallest, then lowest index.
pub fn extreme_ray_columns(a: &GeneratorMatrix) -> Result<Vec<usize>> {
    let grading = pointedness_certificate(a)?;
    extreme_columns_in(a, &grading, &Sequential)
}

fn extreme_columns_in<P: Pool>(
    a: &GeneratorMatrix,
    grading: &[i64],
    pool: &P,
) -> Result<Vec<usize>> {
    let cols = a.columns();
    let dirs = cols
        .iter()
        .map(primitive_direction)
        .collect::<Result<Vec<_>>>()?;
    // representatives of each direction class
    let mut reps: Vec<usize> = Vec::new();
    for j in 0..cols.len() {
        match reps.iter().position(|&r| dirs[r] == dirs[j]) {
            Some(k) => {
                let r = reps[k];
                let key_j = (cols[j].dot(grading)?, &cols[j], j);
                let key_r = (cols[r].dot(grading)?, &cols[r], r);
                if key_j < key_r {
                    reps[k] = j;
                }
            }
            None => reps.push(j),
        }
    }
    let verdicts = pool.map(&reps, |&r| {
        let others: Vec<Point> = reps
            .iter()
            .filter(|&&o| o != r)
            .map(|&o| dirs[o].clone())
            .collect();
        !in_cone_of(&others, &dirs[r])
    });
    let mut out: Vec<usize> = reps
        .iter()
        .zip(verdicts)
        .filter_map(|(&r, extreme)| extreme.then_some(r))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Inequality description of `K` in original coordinates (valid on the
/// linear span of the columns), one primitive row per facet.
pub fn cone_inequality_rep(a: &GeneratorMatrix) -> Result<Vec<Vec<i64>>> {
    let lattice = lattice_normalize(a)?;
    pointedness_certificate(a)?;
    let mut rows = dual_extreme_rays(&lattice.reduced)?
        .iter()
        .map(|g| lattice.push_forward_form(g))
        .collect::<Result<Vec<_>>>()?;
    rows.sort();
    Ok(rows)
}

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    zeros: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn bits_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn dot_big(a: &[BigInt], b: &[i64]) -> BigInt {
    a.iter().zip(b).map(|(x, &y)| x * BigInt::from(y)).sum()
}

/// Extreme rays of the dual cone `{g : g . z_i >= 0}` for a full-rank,
/// pointed generator matrix (double description method).
fn dual_extreme_rays(reduced: &GeneratorMatrix) -> Result<Vec<Vec<i64>>> {
    let r = reduced.dim();
    let cols = reduced.columns();
    let words = cols.len().div_ceil(64);
    let rows_big = reduced.to_big().transpose();
    let start = independent_rows(&rows_big);
    if start.len() != r {
        return Err(Error::Dimension("normalized generators are not full rank"));
    }
    // initial simplicial cone: columns of the inverse of the start block
    let block = to_rational(&rows_big.select_rows(&start));
    let mut rays: Vec<Ray> = Vec::with_capacity(r);
    for k in 0..r {
        let mut e = alloc::vec![BigRational::zero(); r];
        e[k] = big_rat(1);
        let v = crate::exact::rational::solve_square(&block, &e)
            .ok_or(Error::Dimension("singular start block"))?;
        let v = primitive_integer(&v);
        let mut zeros = alloc::vec![0u64; words];
        for (j, &s) in start.iter().enumerate() {
            if j != k {
                bit_set(&mut zeros, s);
            }
        }
        rays.push(Ray { v, zeros });
    }
    for (i, col) in cols.iter().enumerate() {
        if start.contains(&i) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|ray| dot_big(&ray.v, col)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (ray, val) in rays.iter().zip(&vals) {
            if !val.is_negative() {
                let mut ray = ray.clone();
                if val.is_zero() {
                    bit_set(&mut ray.zeros, i);
                }
                next.push(ray);
            }
        }
        for (p, vp) in rays.iter().zip(&vals) {
            if !vp.is_positive() {
                continue;
            }
            for (n, vn) in rays.iter().zip(&vals) {
                if !vn.is_negative() {
                    continue;
                }
                let common: Vec<u64> = p.zeros.iter().zip(&n.zeros).map(|(x, y)| x & y).collect();
                let adjacent = rays.iter().all(|w| {
                    core::ptr::eq(w, p) || core::ptr::eq(w, n) || !bits_subset(&common, &w.zeros)
                });
                if !adjacent {
                    continue;
                }
                let v: Vec<BigInt> = p.v.iter().zip(&n.v).map(|(x, y)| vp * y - vn * x).collect();
                let mut zeros = common;
                bit_set(&mut zeros, i);
                next.push(Ray {
                    v: primitive(&v),
                    zeros,
                });
            }
        }
        rays = next;
    }
    let mut out = rays
        .iter()
        .map(|ray| Point::from_big(&ray.v).map(|p| p.0))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Checks `K = {x : B x >= 0}` against the generators: every column
/// satisfies every row.
pub fn inequalities_hold(rows: &[Vec<i64>], a: &GeneratorMatrix) -> bool {
    a.columns()
        .iter()
        .all(|c| rows.iter().all(|b| c.dot(b).is_ok_and(|v| v >= 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gm(rows: &[Vec<i64>]) -> GeneratorMatrix {
        GeneratorMatrix::from_rows(rows).unwrap()
    }

    fn ex22() -> GeneratorMatrix {
        gm(&[vec![1, 1, 1, 1], vec![0, 1, 3, 4]])
    }

    #[test]
    fn certificate_for_example() {
        let c = pointedness_certificate(&ex22()).unwrap();
        assert_eq!(c, vec![1, 0]);
        assert_eq!(
            pointedness_certificate(&gm(&[vec![3, 5, 7]])).unwrap(),
            vec![1]
        );
    }

    #[test]
    fn opposite_rays_are_not_pointed() {
        let a = gm(&[vec![1, -1], vec![0, 0]]);
        assert_eq!(pointedness_certificate(&a), Err(Error::NotPointed));
        assert_eq!(extreme_ray_columns(&a), Err(Error::NotPointed));
    }

    #[test]
    fn extreme_columns() {
        assert_eq!(extreme_ray_columns(&ex22()).unwrap(), vec![0, 3]);
        assert_eq!(extreme_ray_columns(&gm(&[vec![3, 5, 7]])).unwrap(), vec![0]);
        // same direction: the shorter column wins even if it comes later
        let a = gm(&[vec![2, 1, 0], vec![2, 1, 1]]);
        assert_eq!(extreme_ray_columns(&a).unwrap(), vec![1, 2]);
        // equal columns: lowest index
        let a = gm(&[vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(extreme_ray_columns(&a).unwrap(), vec![0, 2]);
    }

    #[test]
    fn membership() {
        let a = ex22();
        assert!(cone_membership(&a, &Point::from([1, 2])).unwrap());
        assert!(!cone_membership(&a, &Point::from([1, 5])).unwrap());
        assert!(!cone_membership(&a, &Point::from([-1, 0])).unwrap());
        assert!(qsat_membership(&gm(&[vec![3, 5, 7]]), &Point::from([4])).unwrap());
        assert!(!qsat_membership(&gm(&[vec![2, 4]]), &Point::from([3])).unwrap());
        assert!(qsat_membership(&a, &Point::from([0, 0])).unwrap());
    }

    #[test]
    fn inequality_rep() {
        let rows = cone_inequality_rep(&ex22()).unwrap();
        assert_eq!(rows, vec![vec![0, 1], vec![4, -1]]);
        let id = gm(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(
            cone_inequality_rep(&id).unwrap(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(
            cone_inequality_rep(&gm(&[vec![3, 5, 7]])).unwrap(),
            vec![vec![1]]
        );
    }

    #[test]
    fn inequality_rep_of_square_pyramid() {
        // four rays over a square: four facets
        let a = gm(&[vec![1, 1, 1, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]);
        let rows = cone_inequality_rep(&a).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(inequalities_hold(&rows, &a));
        assert!(cone_membership(&a, &Point::from([2, 1, 1])).unwrap());
    }
}
