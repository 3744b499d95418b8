//! Pottier-style completion, lifted one coordinate at a time.
//!
//! Input is a lattice `Λ ⊂ Z^N` given by a basis, a prefix of "processed"
//! coordinates (each either sign-constrained `>= 0` or free) and a suffix of
//! passive coordinates that are carried along. The projection onto the
//! processed coordinates must be injective on `Λ`.
//!
//! The output is the set of nonzero elements of `Λ ∩ {constraints}` that are
//! minimal for the conformal order `u ⊑ v` (same sign and `|u_k| <= |v_k|` on
//! every processed coordinate). For purely nonnegative constraints this is
//! the Hilbert basis of the pointed monoid.
//!
//! Coordinate `j` is lifted from the minimal set of the projection onto
//! `0..j`: the lifted set, together with `±` the generator of the kernel of
//! the projection, generates the monoid with coordinate `j` unconstrained.
//! Sums of elements with opposite signs in coordinate `j` are reduced to
//! normal form and added until no new element appears; the elements that
//! satisfy the constraint on `j` and are conformally minimal form the next
//! set.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::hnf::row_echelon_basis;
use crate::matrix::Matrix;
use crate::vector::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Coord {
    NonNeg,
    Free,
}

pub(crate) struct Problem {
    /// Lattice basis, one row per generator, processed coordinates first.
    pub basis: Vec<Vec<i64>>,
    /// Kinds of the processed coordinates `0..kinds.len()`.
    pub kinds: Vec<Coord>,
    /// Optional upper bound on one nonnegative processed coordinate.
    pub bound: Option<(usize, i64)>,
}

#[derive(Clone, Debug)]
struct Elem {
    v: Vec<i64>,
    pos: Vec<u64>,
    neg: Vec<u64>,
    norm: i64,
}

impl Elem {
    fn new(v: Vec<i64>, processed: usize) -> Result<Elem> {
        let words = processed.div_ceil(64).max(1);
        let mut e = Elem {
            v,
            pos: alloc::vec![0; words],
            neg: alloc::vec![0; words],
            norm: 0,
        };
        for k in 0..processed {
            e.absorb(k)?;
        }
        Ok(e)
    }

    /// Adds coordinate `k` to the masks and the norm.
    fn absorb(&mut self, k: usize) -> Result<()> {
        let x = self.v[k];
        if x > 0 {
            self.pos[k / 64] |= 1 << (k % 64);
        } else if x < 0 {
            self.neg[k / 64] |= 1 << (k % 64);
        }
        self.norm = self
            .norm
            .checked_add(x.checked_abs().ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
        Ok(())
    }

    fn is_zero(&self) -> bool {
        self.norm == 0
    }

    /// `self ⊑ other` on the processed coordinates `0..processed`.
    fn below(&self, other: &Elem, processed: usize) -> bool {
        if self.norm > other.norm {
            return false;
        }
        let masks_ok = self
            .pos
            .iter()
            .zip(&other.pos)
            .chain(self.neg.iter().zip(&other.neg))
            .all(|(a, b)| a & !b == 0);
        masks_ok && (0..processed).all(|k| self.v[k].abs() <= other.v[k].abs())
    }
}

fn add(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
        .collect()
}

struct State<'a> {
    problem: &'a Problem,
    elems: Vec<Elem>,
}

impl State<'_> {
    /// True when a coordinate among `0..settled` exceeds the bound. During the
    /// stage of the bounded coordinate itself it may still decrease.
    fn violates_bound(&self, v: &[i64], settled: usize) -> bool {
        matches!(self.problem.bound, Some((k, b)) if k < settled && v[k] > b)
    }

    /// Subtracts elements of the current set until none fits below `s`.
    fn normal_form(&self, mut s: Elem, processed: usize) -> Result<Elem> {
        'outer: loop {
            if s.is_zero() {
                return Ok(s);
            }
            for g in &self.elems {
                if !g.below(&s, processed) {
                    continue;
                }
                // largest multiple that still fits
                let mut k = i64::MAX;
                for c in 0..processed {
                    if g.v[c] != 0 {
                        k = k.min(s.v[c] / g.v[c]);
                    }
                }
                let v: Vec<i64> =
                    s.v.iter()
                        .zip(&g.v)
                        .map(|(a, b)| {
                            b.checked_mul(k)
                                .and_then(|kb| a.checked_sub(kb))
                                .ok_or(Error::Overflow)
                        })
                        .collect::<Result<_>>()?;
                s = Elem::new(v, processed)?;
                continue 'outer;
            }
            return Ok(s);
        }
    }

    fn complete(&mut self, j: usize) -> Result<()> {
        let processed = j + 1;
        let mut queue: BTreeSet<(i64, Vec<i64>)> = BTreeSet::new();
        let bound = self.problem.bound;
        let push = |queue: &mut BTreeSet<(i64, Vec<i64>)>, a: &Elem, b: &Elem| -> Result<()> {
            let v = add(&a.v, &b.v)?;
            if matches!(bound, Some((k, b)) if k < j && v[k] > b) {
                return Ok(());
            }
            let norm = v[..processed]
                .iter()
                .try_fold(0i64, |acc, x| acc.checked_add(x.abs()))
                .ok_or(Error::Overflow)?;
            queue.insert((norm, v));
            Ok(())
        };
        for p in self.elems.iter().filter(|e| e.v[j] > 0) {
            for n in self.elems.iter().filter(|e| e.v[j] < 0) {
                push(&mut queue, p, n)?;
            }
        }
        while let Some((_, v)) = queue.pop_first() {
            let s = self.normal_form(Elem::new(v, processed)?, processed)?;
            if s.is_zero() {
                continue;
            }
            for g in self
                .elems
                .iter()
                .filter(|g| g.v[j].signum() * s.v[j].signum() < 0)
            {
                push(&mut queue, &s, g)?;
            }
            self.elems.push(s);
        }
        Ok(())
    }

    fn select(&mut self, j: usize) {
        let processed = j + 1;
        let kind = self.problem.kinds[j];
        let mut kept: Vec<Elem> = core::mem::take(&mut self.elems)
            .into_iter()
            .filter(|e| !e.is_zero())
            .filter(|e| kind == Coord::Free || e.v[j] >= 0)
            .filter(|e| !self.violates_bound(&e.v, processed))
            .collect();
        kept.sort_by(|a, b| (a.norm, &a.v).cmp(&(b.norm, &b.v)));
        let mut out: Vec<Elem> = Vec::with_capacity(kept.len());
        for e in kept {
            let redundant = out.iter().any(|o| {
                o.below(&e, processed) && (o.norm < e.norm || o.v[..processed] == e.v[..processed])
            });
            if !redundant {
                out.push(e);
            }
        }
        self.elems = out;
    }
}

/// Conformally minimal nonzero elements of the constrained lattice, as full
/// vectors (passive coordinates included), in a deterministic order.
pub(crate) fn minimal_elements(problem: &Problem) -> Result<Vec<Vec<i64>>> {
    let processed = problem.kinds.len();
    let Some(width) = problem.basis.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    if problem.basis.iter().any(|r| r.len() != width) || processed > width {
        return Err(Error::Dimension("lattice basis rows"));
    }
    let rows: Vec<BigInt> = problem
        .basis
        .iter()
        .flat_map(|r| r.iter().map(|&x| BigInt::from(x)))
        .collect();
    let echelon = row_echelon_basis(&Matrix::from_vec(problem.basis.len(), width, rows)?);
    let mut pivot_rows: Vec<Option<Vec<i64>>> = alloc::vec![None; processed];
    for i in 0..echelon.rows() {
        let row = Point::from_big(echelon.row(i))?.0;
        let pivot = row
            .iter()
            .position(|&x| x != 0)
            .expect("echelon rows are nonzero");
        if pivot >= processed {
            return Err(Error::Invalid(
                "processed coordinates do not determine the lattice point",
            ));
        }
        pivot_rows[pivot] = Some(row);
    }

    let mut state = State {
        problem,
        elems: Vec::new(),
    };
    for j in 0..processed {
        for e in state.elems.iter_mut() {
            e.absorb(j)?;
        }
        if let Some(row) = &pivot_rows[j] {
            let neg: Vec<i64> = row.iter().map(|x| -x).collect();
            state.elems.push(Elem::new(row.clone(), j + 1)?);
            state.elems.push(Elem::new(neg, j + 1)?);
        }
        state.complete(j)?;
        state.select(j);
    }
    let mut out: Vec<Vec<i64>> = state.elems.into_iter().map(|e| e.v).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn orthant_of_full_lattice() {
        let p = Problem {
            basis: vec![vec![1, 0], vec![0, 1]],
            kinds: vec![Coord::NonNeg, Coord::NonNeg],
            bound: None,
        };
        assert_eq!(minimal_elements(&p).unwrap(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn kernel_of_two_three() {
        // {x in N^2 : 2x_1 - 3x_2 = 0} is generated by (3, 2)
        let p = Problem {
            basis: vec![vec![3, 2]],
            kinds: vec![Coord::NonNeg, Coord::NonNeg],
            bound: None,
        };
        assert_eq!(minimal_elements(&p).unwrap(), vec![vec![3, 2]]);
    }

    #[test]
    fn free_coordinate_gives_graver_like_set() {
        // lattice Z (x, 2x): with x free the minimal elements are ±(1, 2)
        let p = Problem {
            basis: vec![vec![1, 2]],
            kinds: vec![Coord::Free, Coord::Free],
            bound: None,
        };
        assert_eq!(
            minimal_elements(&p).unwrap(),
            vec![vec![-1, -2], vec![1, 2]]
        );
    }

    #[test]
    fn passive_coordinates_are_carried() {
        // facets x >= 0, 4x - y >= 0 as processed coordinates, (x, y) passive
        let basis = vec![vec![0, 4, 1, 0], vec![1, -1, 0, 1]];
        let p = Problem {
            basis,
            kinds: vec![Coord::NonNeg, Coord::NonNeg],
            bound: None,
        };
        let got: Vec<Vec<i64>> = minimal_elements(&p)
            .unwrap()
            .into_iter()
            .map(|v| v[2..].to_vec())
            .collect();
        let mut got = got;
        got.sort();
        assert_eq!(
            got,
            vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3], vec![1, 4]]
        );
    }
}
