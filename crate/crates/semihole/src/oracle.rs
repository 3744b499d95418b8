//! Brute-force reference answers on small boxes.
//!
//! Nothing here touches the completion engine or the analyzer: `Q` is
//! decided by memoized search over `x - a_i` ordered by degree, `Q_sat` by
//! an exact LP plus the lattice test, and the minimal sets by evaluating
//! their definitions pairwise.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semihole_core::exact::lattice::{lattice_normalize, LatticeNormalization};
use semihole_core::exact::lp::{LinearSystem, Optimum, Relation};
use semihole_core::exact::rational::primitive_integer;
use semihole_core::{GeneratorMatrix, Point, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    InQ,
    Hole,
    OutsideQsat,
}

/// Classification of every lattice point of an axis-parallel box.
#[derive(Clone, Debug)]
pub struct BoxCensus {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    pub classes: BTreeMap<Point, Class>,
    /// Points of `Q` in the box shown to be non-saturation points by a hole
    /// of the box above them. Complete when the box contains every hole.
    pub non_saturation: BTreeSet<Point>,
}

impl BoxCensus {
    pub fn holes(&self) -> Vec<Point> {
        self.with_class(Class::Hole)
    }

    pub fn q_points(&self) -> Vec<Point> {
        self.with_class(Class::InQ)
    }

    fn with_class(&self, c: Class) -> Vec<Point> {
        self.classes
            .iter()
            .filter(|(_, &k)| k == c)
            .map(|(p, _)| p.clone())
            .collect()
    }

    pub fn class(&self, x: &Point) -> Option<Class> {
        self.classes.get(x).copied()
    }

    pub fn contains(&self, x: &Point) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (l, h))| l <= v && v <= h)
    }

    /// Saturation points of the box, assuming it holds every hole.
    pub fn saturation_points(&self) -> Vec<Point> {
        self.q_points()
            .into_iter()
            .filter(|p| !self.non_saturation.contains(p))
            .collect()
    }
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Membership tests that share only exact arithmetic with the analyzer.
pub struct Reference {
    a: GeneratorMatrix,
    columns: Vec<Point>,
    lattice: LatticeNormalization,
    grading: Vec<i64>,
    memo: HashMap<Point, bool>,
}

impl Reference {
    pub fn new(a: &GeneratorMatrix) -> Result<Self> {
        // any c with c . a_i >= 1 will do as a degree
        let d = a.dim();
        let mut lp = LinearSystem::new(d);
        for col in a.columns() {
            lp.push(col.iter().map(|&x| rat(x)).collect(), Relation::Ge, rat(1));
        }
        let mut objective = vec![rat(0); d];
        for col in a.columns() {
            for (o, &x) in objective.iter_mut().zip(col.iter()) {
                *o += rat(x);
            }
        }
        let point = match lp.minimize(&objective) {
            Optimum::Optimal { point, .. } => point,
            _ => return Err(semihole_core::Error::NotPointed),
        };
        let grading = Point::from_big(&primitive_integer(&point))?.0;
        Ok(Reference {
            a: a.clone(),
            columns: a.columns(),
            lattice: lattice_normalize(a)?,
            grading,
            memo: HashMap::new(),
        })
    }

    pub fn degree(&self, x: &Point) -> i64 {
        x.dot(&self.grading).expect("small instance")
    }

    pub fn in_q(&mut self, x: &Point) -> bool {
        if x.is_zero() {
            return true;
        }
        if self.degree(x) <= 0 {
            return false;
        }
        if let Some(&v) = self.memo.get(x) {
            return v;
        }
        let mut found = false;
        for k in 0..self.columns.len() {
            let y = x.checked_sub(&self.columns[k]).expect("small instance");
            if self.in_q(&y) {
                found = true;
                break;
            }
        }
        self.memo.insert(x.clone(), found);
        found
    }

    pub fn in_cone(&self, x: &Point) -> bool {
        let mut lp = LinearSystem::new(self.a.len()).all_nonneg();
        for r in 0..self.a.dim() {
            lp.push(
                self.a.entries().row(r).iter().map(|&v| rat(v)).collect(),
                Relation::Eq,
                rat(x[r]),
            );
        }
        lp.feasible().is_feasible()
    }

    pub fn in_qsat(&mut self, x: &Point) -> bool {
        self.in_q(x) || (self.lattice.contains(x).expect("small instance") && self.in_cone(x))
    }
}

fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Point> {
    let mut out = vec![Point::from(Vec::new())];
    for (&l, &h) in lo.iter().zip(hi) {
        out = out
            .into_iter()
            .flat_map(|p| {
                (l..=h).map(move |v| {
                    let mut q = p.0.clone();
                    q.push(v);
                    Point::from(q)
                })
            })
            .collect();
    }
    out
}

/// Classifies every lattice point of `[lo, hi]`.
pub fn census(a: &GeneratorMatrix, lo: &[i64], hi: &[i64]) -> Result<BoxCensus> {
    let mut r = Reference::new(a)?;
    let mut classes = BTreeMap::new();
    for p in box_points(lo, hi) {
        let c = if r.in_q(&p) {
            Class::InQ
        } else if r.lattice.contains(&p)? && r.in_cone(&p) {
            Class::Hole
        } else {
            Class::OutsideQsat
        };
        classes.insert(p, c);
    }
    let mut cen = BoxCensus {
        lo: lo.to_vec(),
        hi: hi.to_vec(),
        classes,
        non_saturation: BTreeSet::new(),
    };
    // x ∈ Q is a non-saturation point iff x + q is a hole for some q ∈ Q_sat
    let holes = cen.holes();
    for x in cen.q_points() {
        for h in &holes {
            let q = h.checked_sub(&x)?;
            let inside = match cen.class(&q) {
                Some(c) => c != Class::OutsideQsat,
                None => r.in_qsat(&q),
            };
            if inside {
                cen.non_saturation.insert(x.clone());
                break;
            }
        }
    }
    Ok(cen)
}

/// The three minimal sets inside the census box, by their definitions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleMinSets {
    pub min_ss: Vec<Point>,
    pub min_sq: Vec<Point>,
    pub min_sqsat: Vec<Point>,
}

/// Evaluates the minimality definitions for the saturation points of the
/// sub-box `[lo, hi]` of the census.
///
/// Differences `a - p` are classified from the census when they fall in its
/// box and recomputed otherwise; a difference in `Q` must fall in the box.
/// The answer is exact when the census box holds every hole.
pub fn oracle_min_sets(
    a: &GeneratorMatrix,
    cen: &BoxCensus,
    lo: &[i64],
    hi: &[i64],
) -> Result<OracleMinSets> {
    let mut r = Reference::new(a)?;
    let s: Vec<Point> = cen.saturation_points();
    let s_set: BTreeSet<&Point> = s.iter().collect();
    let nonneg = (0..a.dim()).all(|i| a.entries().row(i).iter().all(|&v| v >= 0));
    let mut classify = |x: &Point| -> Class {
        if let Some(c) = cen.class(x) {
            return c;
        }
        if nonneg && x.iter().any(|&v| v < 0) {
            return Class::OutsideQsat;
        }
        if r.in_q(x) {
            Class::InQ
        } else if r.in_qsat(x) {
            Class::Hole
        } else {
            Class::OutsideQsat
        }
    };
    let in_sub = |x: &Point| {
        x.iter()
            .zip(lo.iter().zip(hi))
            .all(|(v, (l, h))| l <= v && v <= h)
    };
    let mut out = OracleMinSets::default();
    for x in s.iter().filter(|x| in_sub(x)) {
        let (mut ss, mut sq, mut sqsat) = (true, true, true);
        for p in &s {
            if p == x {
                continue;
            }
            let q = x.checked_sub(p)?;
            match classify(&q) {
                Class::OutsideQsat => continue,
                Class::Hole => sqsat = false,
                Class::InQ => {
                    sqsat = false;
                    sq = false;
                    assert!(cen.contains(&q), "down-set of {x} leaves the census box");
                    if s_set.contains(&q) {
                        ss = false;
                    }
                }
            }
            if !ss {
                break;
            }
        }
        if ss {
            out.min_ss.push(x.clone());
        }
        if sq {
            out.min_sq.push(x.clone());
        }
        if sqsat {
            out.min_sqsat.push(x.clone());
        }
    }
    Ok(out)
}

/// Holes of the census whose every `h - a_i` leaves `Q_sat`. Complete when
/// the box contains `{ Σ δ_i a_i : 0 <= δ_i <= 1 }`.
pub fn fundamental_holes(a: &GeneratorMatrix, cen: &BoxCensus) -> Result<Vec<Point>> {
    let mut r = Reference::new(a)?;
    let mut out = Vec::new();
    for h in cen.holes() {
        let mut fundamental = true;
        for col in a.columns() {
            if r.in_qsat(&h.checked_sub(&col)?) {
                fundamental = false;
                break;
            }
        }
        if fundamental {
            out.push(h);
        }
    }
    Ok(out)
}

/// The three minimal sets among points of degree at most `bound`, with `S`
/// decided by `x + y ∈ Q` for every given fundamental hole `y`.
///
/// Everything below a point in either order has smaller degree, so the
/// answer is exact up to the bound even when there are infinitely many
/// holes.
pub fn degree_bounded_min_sets(
    a: &GeneratorMatrix,
    h0: &[Point],
    bound: i64,
) -> Result<OracleMinSets> {
    let mut r = Reference::new(a)?;
    let cols = a.columns();
    let mut q: BTreeSet<Point> = BTreeSet::new();
    let mut frontier = vec![Point::zero(a.dim())];
    q.insert(Point::zero(a.dim()));
    while let Some(x) = frontier.pop() {
        for c in &cols {
            let y = x.checked_add(c)?;
            if r.degree(&y) <= bound && q.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let in_s = |r: &mut Reference, x: &Point| -> bool {
        r.in_q(x)
            && h0
                .iter()
                .all(|y| r.in_q(&x.checked_add(y).expect("small instance")))
    };
    let s: Vec<Point> = q.iter().filter(|x| in_s(&mut r, x)).cloned().collect();
    let s_set: BTreeSet<&Point> = s.iter().collect();
    let mut out = OracleMinSets::default();
    for x in &s {
        let (mut ss, mut sq, mut sqsat) = (true, true, true);
        for p in &s {
            if p == x {
                continue;
            }
            let d = x.checked_sub(p)?;
            if r.in_q(&d) {
                sq = false;
                sqsat = false;
                if s_set.contains(&d) {
                    ss = false;
                    break;
                }
            } else if sqsat && r.in_qsat(&d) {
                sqsat = false;
            }
        }
        if ss {
            out.min_ss.push(x.clone());
        }
        if sq {
            out.min_sq.push(x.clone());
        }
        if sqsat {
            out.min_sqsat.push(x.clone());
        }
    }
    Ok(out)
}

/// A reproducible small matrix with entries in `[0, entry_max]`, no zero
/// column, `1 <= d <= max_d` rows and `1 <= n <= max_n` columns.
pub fn random_instance(seed: u64, max_d: usize, max_n: usize, entry_max: i64) -> GeneratorMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rng.random_range(1..=max_d.max(1));
    let n = rng.random_range(1..=max_n.max(1));
    loop {
        let rows: Vec<Vec<i64>> = (0..d)
            .map(|_| (0..n).map(|_| rng.random_range(0..=entry_max)).collect())
            .collect();
        if let Ok(a) = GeneratorMatrix::from_rows(&rows) {
            if semihole_core::cone::pointedness_certificate(&a).is_ok() {
                return a;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gm(rows: &[Vec<i64>]) -> GeneratorMatrix {
        GeneratorMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn numerical_semigroup_census() {
        let a = gm(&[vec![3, 5, 7]]);
        let c = census(&a, &[0], &[20]).unwrap();
        let holes: Vec<i64> = c.holes().iter().map(|p| p[0]).collect();
        assert_eq!(holes, vec![1, 2, 4]);
        let sbar: Vec<i64> = c.non_saturation.iter().map(|p| p[0]).collect();
        assert_eq!(sbar, vec![0, 3]);
        let m = oracle_min_sets(&a, &c, &[0], &[20]).unwrap();
        let ss: Vec<i64> = m.min_ss.iter().map(|p| p[0]).collect();
        assert_eq!(ss, vec![5, 6, 7, 8, 9]);
        let sqsat: Vec<i64> = m.min_sqsat.iter().map(|p| p[0]).collect();
        assert_eq!(sqsat, vec![5]);
    }

    #[test]
    fn two_dimensional_census() {
        let a = gm(&[vec![1, 1, 1, 1], vec![0, 1, 3, 4]]);
        let c = census(&a, &[0, 0], &[3, 12]).unwrap();
        assert_eq!(c.holes(), vec![Point::from([1, 2])]);
        let m = oracle_min_sets(&a, &c, &[0, 0], &[3, 12]).unwrap();
        let want: Vec<Point> = [[1, 0], [1, 1], [1, 3], [1, 4]].map(Point::from).to_vec();
        assert_eq!(m.min_ss, want);
    }

    #[test]
    fn fundamental_holes_of_numerical_semigroup() {
        let a = gm(&[vec![3, 5, 7]]);
        let c = census(&a, &[0], &[15]).unwrap();
        let h0: Vec<i64> = fundamental_holes(&a, &c)
            .unwrap()
            .iter()
            .map(|p| p[0])
            .collect();
        assert_eq!(h0, vec![1, 2]);
    }

    #[test]
    fn bounded_sets_with_infinitely_many_holes() {
        let a = gm(&[vec![1, 1, 1, 1], vec![0, 2, 3, 4]]);
        let m = degree_bounded_min_sets(&a, &[Point::from([1, 1])], 10).unwrap();
        let want: Vec<Point> = [[1, 2], [1, 3], [1, 4]].map(Point::from).to_vec();
        assert_eq!(m.min_sq, want);
    }

    #[test]
    fn identity_has_no_holes() {
        let a = gm(&[vec![1, 0], vec![0, 1]]);
        let c = census(&a, &[0, 0], &[5, 5]).unwrap();
        assert!(c.holes().is_empty());
        assert!(c.non_saturation.is_empty());
    }

    #[test]
    fn random_instances_are_reproducible_and_pointed() {
        assert_eq!(random_instance(1, 3, 5, 4), random_instance(1, 3, 5, 4));
        for seed in 0..100 {
            let a = random_instance(seed, 3, 5, 4);
            assert!(a.dim() <= 3 && a.len() <= 5);
            assert!(a.entries().row(0).iter().all(|&x| (0..=4).contains(&x)));
        }
    }
}
