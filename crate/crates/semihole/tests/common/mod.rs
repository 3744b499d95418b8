//! Analyzer-versus-oracle comparison shared by the integration tests.

use std::collections::BTreeSet;

use rayon::prelude::*;
use semihole::oracle::{
    census, degree_bounded_min_sets, fundamental_holes, oracle_min_sets, random_instance, Reference,
};
use semihole_core::{
    Analyzer, Completeness, FinitenessVerdict, FinitenessWitness, GeneratorMatrix, HoleSet, Point,
};

pub fn set(v: &[Point]) -> BTreeSet<Point> {
    v.iter().cloned().collect()
}

/// Coordinatewise upper corner of `{ Σ δ_i a_i : 0 <= δ_i <= 1 }`, which
/// holds every fundamental hole (entries are nonnegative).
fn column_sum(a: &GeneratorMatrix) -> Vec<i64> {
    (0..a.dim())
        .map(|r| a.entries().row(r).iter().sum())
        .collect()
}

/// Upper corner of a box holding every hole `y_h + Σ λ_i a_i`, `λ_i < λ̄_hi`.
/// With nonnegative entries every non-saturation point lies below a hole,
/// so the box holds `S̄` as well.
fn hole_box(a: &GeneratorMatrix, holes: &HoleSet) -> Vec<i64> {
    let mut hi = column_sum(a);
    let shifts = holes.fundamental_shifts.as_ref().unwrap();
    for (h, y) in holes.fundamental.iter().enumerate() {
        for (r, top) in hi.iter_mut().enumerate() {
            let mut v = y[r];
            for i in 0..a.len() {
                v += shifts.get(h, i).unwrap().value().unwrap() as i64 * a.entries()[(r, i)];
            }
            *top = (*top).max(v);
        }
    }
    hi
}

#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub saturated: usize,
    pub finite: usize,
    pub infinite: usize,
    pub censused: usize,
    pub min_points_checked: usize,
    pub min_points_outside: usize,
}

/// Compares one random instance with the oracle.
pub fn check_instance(
    seed: u64,
    max_d: usize,
    max_n: usize,
    entry_max: i64,
) -> Result<Tally, String> {
    let a = random_instance(seed, max_d, max_n, entry_max);
    let fail = |what: &str| Err(format!("seed {seed} {a:?}: {what}"));
    let an = Analyzer::sequential(a.clone()).unwrap();
    let holes = an.hole_set().unwrap();
    let d = a.dim();
    let lo = vec![0; d];

    let p = column_sum(&a);
    let cen = census(&a, &lo, &p).unwrap();
    if set(&fundamental_holes(&a, &cen).unwrap()) != set(&holes.fundamental) {
        return fail("fundamental holes");
    }
    let mut tally = Tally {
        censused: cen.classes.len(),
        ..Tally::default()
    };

    match holes.verdict {
        FinitenessVerdict::Finite => {
            let hi = if holes.is_saturated() {
                p
            } else {
                hole_box(&a, &holes)
            };
            let cen = census(&a, &lo, &hi).unwrap();
            tally.censused += cen.classes.len();
            if Some(set(&cen.holes())) != holes.all.as_deref().map(set) {
                return fail("holes");
            }
            let sets = an.saturation_sets(&holes, None).unwrap();
            let sbar: BTreeSet<Point> = cen.non_saturation.iter().cloned().collect();
            if Some(sbar) != sets.non_saturation.as_deref().map(set) {
                return fail("non-saturation points");
            }
            if holes.is_saturated() {
                tally.saturated = 1;
                return Ok(tally);
            }
            tally.finite = 1;
            // widen the box to every reported minimal point; it still holds
            // every hole, so the oracle stays exact on it
            let mut hi = hi;
            for x in sets
                .min_ss
                .points
                .iter()
                .chain(&sets.min_sq.points)
                .chain(&sets.min_sqsat.points)
            {
                for (top, &v) in hi.iter_mut().zip(x.iter()) {
                    *top = (*top).max(v);
                }
            }
            let cen = census(&a, &lo, &hi).unwrap();
            tally.censused += cen.classes.len();
            let inside = |v: &[Point]| -> BTreeSet<Point> {
                v.iter().filter(|x| cen.contains(x)).cloned().collect()
            };
            let m = oracle_min_sets(&a, &cen, &lo, &hi).unwrap();
            if set(&m.min_ss) != inside(&sets.min_ss.points) {
                return fail("min(S;S)");
            }
            if set(&m.min_sq) != inside(&sets.min_sq.points) {
                return fail("min(S;Q)");
            }
            if set(&m.min_sqsat) != inside(&sets.min_sqsat.points) {
                return fail("min(S;Q_sat)");
            }
            for ms in [&sets.min_ss, &sets.min_sq, &sets.min_sqsat] {
                let n = inside(&ms.points).len();
                tally.min_points_checked += n;
                tally.min_points_outside += ms.points.len() - n;
            }
        }
        FinitenessVerdict::Infinite => {
            let FinitenessWitness::InfiniteShift {
                element, column, ..
            } = &holes.witness
            else {
                return fail("missing witness");
            };
            let mut r = Reference::new(&a).unwrap();
            let mut x = element.clone();
            for _ in 0..6 {
                if r.in_q(&x) || !r.in_qsat(&x) {
                    return fail("witness family");
                }
                x = x.checked_add(&a.column(*column)).unwrap();
            }
            let bound = 8;
            let sets = an.saturation_sets(&holes, Some(bound)).unwrap();
            let Completeness::Bounded(reached) = sets.min_ss.completeness else {
                return fail("completeness flag");
            };
            let m = degree_bounded_min_sets(&a, &holes.fundamental, reached).unwrap();
            if set(&m.min_ss) != set(&sets.min_ss.points)
                || set(&m.min_sq) != set(&sets.min_sq.points)
                || set(&m.min_sqsat) != set(&sets.min_sqsat.points)
            {
                return fail("bounded minimal sets");
            }
            tally.infinite = 1;
            tally.min_points_checked += m.min_ss.len() + m.min_sq.len() + m.min_sqsat.len();
        }
        FinitenessVerdict::NotRun => return fail("undecided"),
    }
    Ok(tally)
}

/// Runs `check_instance` over the seeds in parallel and sums the tallies,
/// or lists every disagreement.
pub fn check_seeds(
    seeds: std::ops::Range<u64>,
    max_d: usize,
    max_n: usize,
    entry_max: i64,
) -> Result<Tally, Vec<String>> {
    let results: Vec<Result<Tally, String>> = seeds
        .into_par_iter()
        .map(|s| check_instance(s, max_d, max_n, entry_max))
        .collect();
    let failures: Vec<String> = results.iter().filter_map(|r| r.clone().err()).collect();
    if !failures.is_empty() {
        return Err(failures);
    }
    let mut t = Tally::default();
    for r in results.iter().flatten() {
        t.saturated += r.saturated;
        t.finite += r.finite;
        t.infinite += r.infinite;
        t.censused += r.censused;
        t.min_points_checked += r.min_points_checked;
        t.min_points_outside += r.min_points_outside;
    }
    Ok(t)
}

impl std::fmt::Display for Tally {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} saturated, {} finite with holes, {} infinite; {} lattice points censused; \
             {} minimal points checked, {} outside the census box",
            self.saturated,
            self.finite,
            self.infinite,
            self.censused,
            self.min_points_checked,
            self.min_points_outside
        )
    }
}
