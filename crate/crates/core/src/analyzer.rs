//! Holes, saturation points and minimal saturation points.
//!
//! An [`Analyzer`] fixes the geometry of one generator matrix (lattice,
//! grading, facets, Hilbert basis). The stages build on each other:
//! [`Analyzer::hole_set`] finds the fundamental holes and decides whether
//! the hole set is finite, [`Analyzer::saturation_sets`] then derives the
//! non-saturation points and the three minimal sets.
//!
//! Write `E = H ∪ S̄` for the points of `Q_sat` outside `S`. When `E` is
//! finite every minimal set is cut out of an explicit finite candidate set:
//!
//! * a `Q_sat`-minimal `a` has `a - b ∈ E` for any Hilbert basis element
//!   `b` below it, so it lies in `E + B`;
//! * a `Q`-minimal `a` likewise lies in `E + {a_1, ..., a_n}`;
//! * if `a = s + t` with `s, t ∈ S`, then `s` lies above some
//!   `Q_sat`-minimal `m` and `a - m ∈ S`; so an `S`-minimal `a` is either
//!   `Q_sat`-minimal or `m + e` for such an `m` and some `e ∈ E`, and the
//!   test "`a - m ∉ S` for all `Q_sat`-minimal `m`" is exact.
//!
//! When `E` is infinite the same exact per-point tests run over the points
//! of `Q` up to a degree bound.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::cone::ConeProfile;
use crate::engine::{hilbert_basis_with, HilbertBasis, InfinityCertificate, ShiftTable};
use crate::error::{Error, Result};
use crate::exact::gcd_slice;
use crate::exact::lattice::{lattice_normalize, LatticeNormalization};
use crate::matrix::GeneratorMatrix;
use crate::pool::{Pool, Sequential};
use crate::vector::{sort_graded, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FinitenessVerdict {
    Finite,
    Infinite,
    NotRun,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FinitenessWitness {
    /// No Hilbert basis element is a hole, so `Q = Q_sat`.
    Saturated,
    /// Every shift index of the hole elements of the Hilbert basis is
    /// finite.
    AllFinite,
    /// A hole element of the Hilbert basis with an infinite shift along an
    /// extreme column.
    InfiniteShift {
        element: Point,
        column: usize,
        certificate: InfinityCertificate,
    },
    NotRun,
}

/// Fundamental holes, all holes when finite, and the finiteness decision.
#[derive(Clone, Debug, PartialEq)]
pub struct HoleSet {
    pub fundamental: Vec<Point>,
    pub all: Option<Vec<Point>>,
    pub verdict: FinitenessVerdict,
    pub witness: FinitenessWitness,
    /// `μ̄` over the hole elements of the Hilbert basis: along the extreme
    /// columns, and along all columns when finite.
    pub basis_shifts: Option<ShiftTable>,
    /// `λ̄` over fundamental holes and all columns, when finite.
    pub fundamental_shifts: Option<ShiftTable>,
}

impl HoleSet {
    /// A hole set with nothing decided yet.
    pub fn undecided(fundamental: Vec<Point>) -> Self {
        HoleSet {
            fundamental,
            all: None,
            verdict: FinitenessVerdict::NotRun,
            witness: FinitenessWitness::NotRun,
            basis_shifts: None,
            fundamental_shifts: None,
        }
    }

    pub fn is_saturated(&self) -> bool {
        matches!(self.witness, FinitenessWitness::Saturated)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    /// Exact for points of degree at most the bound.
    Bounded(i64),
    /// Not computed: the semigroup is saturated.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalSet {
    pub points: Vec<Point>,
    pub completeness: Completeness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationSets {
    pub non_saturation: Option<Vec<Point>>,
    pub min_ss: MinimalSet,
    pub min_sq: MinimalSet,
    pub min_sqsat: MinimalSet,
}

/// The five equivalent finiteness statements, each read off its own
/// evidence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JointVerdict {
    pub min_ss_finite: bool,
    pub cone_polyhedral: bool,
    pub extreme_rays_saturated: bool,
    pub holes_finite: bool,
    pub non_saturation_finite: bool,
}

impl JointVerdict {
    pub fn consistent(&self) -> bool {
        let v = [
            self.min_ss_finite,
            self.cone_polyhedral,
            self.extreme_rays_saturated,
            self.holes_finite,
            self.non_saturation_finite,
        ];
        v.iter().all(|&x| x == v[0])
    }
}

/// Most points of `Q` a bounded search visits; past it the degree bound is
/// lowered and reported.
pub const SEARCH_BUDGET: usize = 50_000;

/// Geometry of one semigroup plus the pool used for independent work.
pub struct Analyzer<'p, P: Pool = Sequential> {
    a: GeneratorMatrix,
    columns: Vec<Point>,
    lattice: LatticeNormalization,
    profile: ConeProfile,
    basis: HilbertBasis,
    pool: &'p P,
}

impl Analyzer<'static, Sequential> {
    pub fn sequential(a: GeneratorMatrix) -> Result<Self> {
        Analyzer::new(a, &Sequential)
    }
}

impl<'p, P: Pool> Analyzer<'p, P> {
    pub fn new(a: GeneratorMatrix, pool: &'p P) -> Result<Self> {
        let lattice = lattice_normalize(&a)?;
        let profile = ConeProfile::with_pool(&a, &lattice, pool)?;
        let columns = a.columns();
        let mut an = Analyzer {
            a,
            columns,
            lattice,
            profile,
            basis: HilbertBasis {
                elements: Vec::new(),
            },
            pool,
        };
        an.basis = hilbert_basis_with(&an.a, &an.lattice, &an.profile, |p| an.in_q(p))?;
        Ok(an)
    }

    pub fn matrix(&self) -> &GeneratorMatrix {
        &self.a
    }

    pub fn lattice(&self) -> &LatticeNormalization {
        &self.lattice
    }

    pub fn profile(&self) -> &ConeProfile {
        &self.profile
    }

    pub fn hilbert_basis(&self) -> &HilbertBasis {
        &self.basis
    }

    pub fn degree(&self, x: &Point) -> Result<i64> {
        x.dot(&self.profile.grading)
    }

    fn in_cone(&self, x: &Point) -> Result<bool> {
        for f in &self.profile.inequalities {
            if x.dot(f)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn in_qsat(&self, x: &Point) -> Result<bool> {
        if x.dim() != self.a.dim() {
            return Err(Error::Dimension(
                "point does not match the ambient dimension",
            ));
        }
        Ok(self.in_cone(x)? && self.lattice.contains(x)?)
    }

    /// `Q`-membership by depth-first search over `x - a_i`, pruned to `K`.
    pub fn in_q(&self, x: &Point) -> Result<bool> {
        if !self.in_qsat(x)? {
            return Ok(false);
        }
        let mut dead = BTreeSet::new();
        self.reach(x, &mut dead)
    }

    fn reach(&self, x: &Point, dead: &mut BTreeSet<Point>) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        if dead.contains(x) {
            return Ok(false);
        }
        for col in &self.columns {
            let y = x.checked_sub(col)?;
            if self.in_cone(&y)? && self.reach(&y, dead)? {
                return Ok(true);
            }
        }
        dead.insert(x.clone());
        Ok(false)
    }

    /// `x ∈ Q_sat`, `x ∉ Q`, and `x - a_i ∉ Q_sat` for every column.
    pub fn is_fundamental_hole(&self, x: &Point) -> Result<bool> {
        if !self.in_qsat(x)? || self.in_q(x)? {
            return Ok(false);
        }
        for col in &self.columns {
            if self.in_qsat(&x.checked_sub(col)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All fundamental holes.
    ///
    /// A fundamental hole is a sum of Hilbert basis elements none of which
    /// lies in `Q`, and it sits in the box `{ Σ δ_i a_i : 0 <= δ_i <= 1 }`,
    /// whose degree is at most `Σ c·a_i`.
    pub fn fundamental_holes(&self) -> Result<Vec<Point>> {
        let gens: Vec<(Point, i64)> = self
            .basis
            .holes()
            .map(|e| Ok((e.vector.clone(), self.degree(&e.vector)?)))
            .collect::<Result<_>>()?;
        let box_degree = self.columns.iter().try_fold(0i64, |acc, c| {
            acc.checked_add(self.degree(c)?).ok_or(Error::Overflow)
        })?;
        let mut combos = BTreeSet::new();
        let mut stack = alloc::vec![(Point::zero(self.a.dim()), 0i64, 0usize)];
        while let Some((x, deg, first)) = stack.pop() {
            for (k, (g, dg)) in gens.iter().enumerate().skip(first) {
                let d = deg + dg;
                if d <= box_degree {
                    let y = x.checked_add(g)?;
                    if combos.insert(y.clone()) {
                        stack.push((y, d, k));
                    }
                }
            }
        }
        let combos: Vec<Point> = combos.into_iter().collect();
        let keep = self.pool.map(&combos, |x| self.is_fundamental_hole(x));
        let mut out = Vec::new();
        for (x, k) in combos.into_iter().zip(keep) {
            if k? {
                out.push(x);
            }
        }
        sort_graded(&mut out, &self.profile.grading);
        Ok(out)
    }

    /// Decides finiteness of `H` from the shift indices of the hole
    /// elements of the Hilbert basis along the extreme columns.
    pub fn holes_finite(
        &self,
    ) -> Result<(FinitenessVerdict, FinitenessWitness, Option<ShiftTable>)> {
        let sources: Vec<Point> = self.basis.holes().map(|e| e.vector.clone()).collect();
        if sources.is_empty() {
            return Ok((
                FinitenessVerdict::Finite,
                FinitenessWitness::Saturated,
                None,
            ));
        }
        let extreme = self.profile.extreme_columns.clone();
        let table = ShiftTable::for_non_members(&self.a, sources.clone(), extreme, self.pool)?;
        if let Some(e) = table.first_infinite() {
            let crate::engine::Shift::Infinite(certificate) = &e.shift else {
                unreachable!("first_infinite returns an infinite cell");
            };
            let witness = FinitenessWitness::InfiniteShift {
                element: table.sources[e.source].clone(),
                column: e.column,
                certificate: certificate.clone(),
            };
            return Ok((FinitenessVerdict::Infinite, witness, Some(table)));
        }
        let all = (0..self.a.len()).collect();
        let table = ShiftTable::for_non_members(&self.a, sources, all, self.pool)?;
        Ok((
            FinitenessVerdict::Finite,
            FinitenessWitness::AllFinite,
            Some(table),
        ))
    }

    /// `λ̄` for the given holes along every column.
    pub fn shift_bounds(&self, holes: &[Point]) -> Result<ShiftTable> {
        let all = (0..self.a.len()).collect();
        ShiftTable::for_non_members(&self.a, holes.to_vec(), all, self.pool)
    }

    /// Fundamental holes, the finiteness decision and, when finite, all holes.
    pub fn hole_set(&self) -> Result<HoleSet> {
        let mut set = HoleSet::undecided(self.fundamental_holes()?);
        self.decide_finiteness(&mut set)?;
        if set.verdict == FinitenessVerdict::Finite {
            self.complete_holes(&mut set)?;
        }
        Ok(set)
    }

    pub fn decide_finiteness(&self, set: &mut HoleSet) -> Result<()> {
        let (verdict, witness, table) = self.holes_finite()?;
        set.verdict = verdict;
        set.witness = witness;
        set.basis_shifts = table;
        Ok(())
    }

    /// Fills in `λ̄` and all holes; fails unless the hole set is finite.
    pub fn complete_holes(&self, set: &mut HoleSet) -> Result<()> {
        if set.verdict != FinitenessVerdict::Finite {
            return Err(Error::InfiniteHoles);
        }
        let shifts = self.shift_bounds(&set.fundamental)?;
        set.all = Some(self.close_holes(&set.fundamental, &shifts)?);
        set.fundamental_shifts = Some(shifts);
        Ok(())
    }

    /// Closure of the fundamental holes under adding columns, staying
    /// inside `H`. Every partial sum of a hole `y_h + Σ λ_i a_i` is a hole,
    /// and `λ_i < λ̄_hi` along any such path.
    fn close_holes(&self, h0: &[Point], shifts: &ShiftTable) -> Result<Vec<Point>> {
        let n = self.columns.len();
        let mut seen: BTreeMap<Point, ()> = BTreeMap::new();
        let mut queue = VecDeque::new();
        for (h, y) in h0.iter().enumerate() {
            if seen.insert(y.clone(), ()).is_none() {
                queue.push_back((y.clone(), h, alloc::vec![0u64; n]));
            }
        }
        while let Some((x, h, lambda)) = queue.pop_front() {
            for (i, col) in self.columns.iter().enumerate() {
                let y = x.checked_add(col)?;
                if seen.contains_key(&y) || self.in_q(&y)? {
                    continue;
                }
                let mut l = lambda.clone();
                l[i] += 1;
                let bound = shifts.get(h, i).and_then(|s| s.value());
                assert!(
                    bound.is_some_and(|b| l[i] < b),
                    "hole outside the shift-index box"
                );
                seen.insert(y.clone(), ());
                queue.push_back((y, h, l));
            }
        }
        let mut out: Vec<Point> = seen.into_keys().collect();
        sort_graded(&mut out, &self.profile.grading);
        Ok(out)
    }

    /// All holes; fails unless the hole set is finite.
    pub fn enumerate_holes(&self) -> Result<Vec<Point>> {
        self.hole_set()?.all.ok_or(Error::InfiniteHoles)
    }

    fn in_s(&self, h0: &[Point], x: &Point) -> Result<bool> {
        if !self.in_q(x)? {
            return Ok(false);
        }
        for y in h0 {
            if !self.in_q(&x.checked_add(y)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `x + y ∈ Q` for every fundamental hole `y`.
    pub fn is_saturation_point(&self, h0: &[Point], x: &Point) -> Result<bool> {
        if !self.in_q(x)? {
            return Err(Error::NotInSemigroup);
        }
        self.in_s(h0, x)
    }

    /// `S̄` by search from the origin. `S̄` is closed under removing a
    /// column, so every element is reached through `S̄`.
    pub fn non_saturation_points(&self, holes: &HoleSet) -> Result<Vec<Point>> {
        if holes.verdict != FinitenessVerdict::Finite {
            return Err(Error::InfiniteHoles);
        }
        let h0 = &holes.fundamental;
        let origin = Point::zero(self.a.dim());
        if h0.is_empty() {
            return Ok(Vec::new());
        }
        let n_max: Vec<Option<u64>> = match &holes.fundamental_shifts {
            Some(t) => (0..self.columns.len()).map(|i| t.column_max(i)).collect(),
            None => alloc::vec![None; self.columns.len()],
        };
        let mut seen = BTreeSet::new();
        seen.insert(origin.clone());
        let mut frontier = alloc::vec![(origin, alloc::vec![0u64; self.columns.len()])];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (x, lambda) in &frontier {
                for (i, col) in self.columns.iter().enumerate() {
                    let y = x.checked_add(col)?;
                    if seen.contains(&y) {
                        continue;
                    }
                    let mut l = lambda.clone();
                    l[i] += 1;
                    next.push((y, l));
                }
            }
            next.sort();
            next.dedup_by(|a, b| a.0 == b.0);
            let keep = self.pool.map(&next, |(y, _)| self.in_s(h0, y));
            frontier = Vec::new();
            for ((y, l), k) in next.into_iter().zip(keep) {
                if !k? {
                    for (i, &li) in l.iter().enumerate() {
                        assert!(
                            n_max[i].is_none_or(|n| li < n),
                            "non-saturation point outside the box"
                        );
                    }
                    seen.insert(y.clone());
                    frontier.push((y, l));
                }
            }
        }
        let mut out: Vec<Point> = seen.into_iter().collect();
        sort_graded(&mut out, &self.profile.grading);
        Ok(out)
    }

    /// Default degree bound for the bounded searches.
    pub fn default_bound(&self, holes: &HoleSet) -> Result<i64> {
        let mut m = 0;
        for p in holes
            .fundamental
            .iter()
            .chain(self.basis.elements.iter().map(|e| &e.vector))
        {
            m = m.max(self.degree(p)?);
        }
        m.checked_mul(4).ok_or(Error::Overflow)
    }

    /// Points of `Q` with degree at most `bound`, or at most the largest
    /// degree whose points fit in `budget`; that degree is returned too.
    pub fn q_points_up_to(&self, bound: i64, budget: usize) -> Result<(Vec<Point>, i64)> {
        let degs: Vec<i64> = self
            .columns
            .iter()
            .map(|c| self.degree(c))
            .collect::<Result<_>>()?;
        let mut layers: BTreeMap<i64, BTreeSet<Point>> = BTreeMap::new();
        layers
            .entry(0)
            .or_default()
            .insert(Point::zero(self.a.dim()));
        let mut total = 1;
        let mut reached = 0;
        for d in 1..=bound {
            let mut layer = BTreeSet::new();
            for (col, &dc) in self.columns.iter().zip(&degs) {
                if let Some(prev) = layers.get(&(d - dc)) {
                    for x in prev {
                        layer.insert(x.checked_add(col)?);
                    }
                }
            }
            total += layer.len();
            if total > budget {
                break;
            }
            layers.insert(d, layer);
            reached = d;
        }
        let mut out: Vec<Point> = layers.into_values().flatten().collect();
        sort_graded(&mut out, &self.profile.grading);
        Ok((out, reached))
    }

    /// `S̄` and the three minimal sets. With infinitely many holes the
    /// minimal sets are searched up to `bound` (default
    /// [`Analyzer::default_bound`]).
    pub fn saturation_sets(&self, holes: &HoleSet, bound: Option<i64>) -> Result<SaturationSets> {
        let skipped = || MinimalSet {
            points: Vec::new(),
            completeness: Completeness::Skipped,
        };
        if holes.is_saturated() {
            return Ok(SaturationSets {
                non_saturation: Some(Vec::new()),
                min_ss: skipped(),
                min_sq: skipped(),
                min_sqsat: skipped(),
            });
        }
        match holes.verdict {
            FinitenessVerdict::Finite => self.complete_sets(holes),
            FinitenessVerdict::Infinite => {
                let bound = match bound {
                    Some(b) => b,
                    None => self.default_bound(holes)?,
                };
                self.bounded_sets(holes, bound)
            }
            FinitenessVerdict::NotRun => Err(Error::Invalid("finiteness has not been decided")),
        }
    }

    fn filter_points<F>(&self, candidates: Vec<Point>, keep: F) -> Result<Vec<Point>>
    where
        F: Fn(&Point) -> Result<bool> + Sync + Send,
    {
        let flags = self.pool.map(&candidates, keep);
        let mut out = Vec::new();
        for (x, f) in candidates.into_iter().zip(flags) {
            if f? {
                out.push(x);
            }
        }
        sort_graded(&mut out, &self.profile.grading);
        Ok(out)
    }

    fn sums(&self, xs: &[Point], ys: &[Point]) -> Result<Vec<Point>> {
        let mut out = BTreeSet::new();
        for x in xs {
            for y in ys {
                out.insert(x.checked_add(y)?);
            }
        }
        Ok(out.into_iter().collect())
    }

    fn complete_sets(&self, holes: &HoleSet) -> Result<SaturationSets> {
        let h = holes.all.as_ref().ok_or(Error::InfiniteHoles)?;
        let sbar = self.non_saturation_points(holes)?;
        let e: BTreeSet<Point> = h.iter().chain(&sbar).cloned().collect();
        let e_list: Vec<Point> = e.iter().cloned().collect();
        // for x in Q_sat: x ∈ S iff x ∉ E
        let in_s = |x: &Point| -> Result<bool> { Ok(!e.contains(x) && self.in_qsat(x)?) };
        let b = self.basis.vectors();

        let cand = self.sums(&e_list, &b)?;
        let min_sqsat = self.filter_points(cand, |a| {
            if !in_s(a)? {
                return Ok(false);
            }
            for g in &b {
                if in_s(&a.checked_sub(g)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;

        let cand = self.sums(&e_list, &self.columns)?;
        let min_sq = self.filter_points(cand, |a| {
            if !in_s(a)? {
                return Ok(false);
            }
            for g in &self.columns {
                if in_s(&a.checked_sub(g)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;

        let mut shifts = e_list.clone();
        shifts.push(Point::zero(self.a.dim()));
        let cand = self.sums(&min_sqsat, &shifts)?;
        let min_ss = self.filter_points(cand, |a| {
            if !in_s(a)? {
                return Ok(false);
            }
            for m in &min_sqsat {
                if in_s(&a.checked_sub(m)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;

        let complete = |points| MinimalSet {
            points,
            completeness: Completeness::Complete,
        };
        Ok(SaturationSets {
            non_saturation: Some(sbar),
            min_ss: complete(min_ss),
            min_sq: complete(min_sq),
            min_sqsat: complete(min_sqsat),
        })
    }

    fn bounded_sets(&self, holes: &HoleSet, bound: i64) -> Result<SaturationSets> {
        let h0 = &holes.fundamental;
        let in_s = |x: &Point| -> Result<bool> { Ok(self.in_qsat(x)? && self.in_s(h0, x)?) };
        let (q, bound) = self.q_points_up_to(bound, SEARCH_BUDGET)?;
        let s = self.filter_points(q, |x| self.in_s(h0, x))?;
        let b = self.basis.vectors();

        let min_sqsat = self.filter_points(s.clone(), |a| {
            for g in &b {
                if in_s(&a.checked_sub(g)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        let min_sq = self.filter_points(s.clone(), |a| {
            for g in &self.columns {
                if in_s(&a.checked_sub(g)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        // every Q_sat-minimal point below `a` has degree at most that of `a`
        let min_ss = self.filter_points(s, |a| {
            for m in &min_sqsat {
                if in_s(&a.checked_sub(m)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        let bounded = |points| MinimalSet {
            points,
            completeness: Completeness::Bounded(bound),
        };
        Ok(SaturationSets {
            non_saturation: None,
            min_ss: bounded(min_ss),
            min_sq: bounded(min_sq),
            min_sqsat: bounded(min_sqsat),
        })
    }

    /// `min(S;S)`; fails unless the hole set is finite.
    pub fn min_sat_s(&self, holes: &HoleSet) -> Result<MinimalSet> {
        if holes.verdict != FinitenessVerdict::Finite {
            return Err(Error::InfiniteHoles);
        }
        Ok(self.saturation_sets(holes, None)?.min_ss)
    }

    pub fn min_sat_q(&self, holes: &HoleSet, bound: Option<i64>) -> Result<MinimalSet> {
        Ok(self.saturation_sets(holes, bound)?.min_sq)
    }

    pub fn min_sat_qsat(&self, holes: &HoleSet, bound: Option<i64>) -> Result<MinimalSet> {
        Ok(self.saturation_sets(holes, bound)?.min_sqsat)
    }

    /// The five statements, with the extreme-ray statement checked
    /// directly: some `λ a_i` with `λ <= n_i` is a saturation point.
    pub fn joint_verdict(
        &self,
        holes: &HoleSet,
        sets: Option<&SaturationSets>,
    ) -> Result<JointVerdict> {
        let holes_finite = match holes.verdict {
            FinitenessVerdict::Finite => true,
            FinitenessVerdict::Infinite => false,
            FinitenessVerdict::NotRun => {
                return Err(Error::Invalid("finiteness has not been decided"))
            }
        };
        let extreme_rays_saturated = match (&holes.witness, &holes.fundamental_shifts) {
            (FinitenessWitness::Saturated, _) => true,
            // λ a_i ∈ S would put element + λ a_i in Q
            (FinitenessWitness::InfiniteShift { .. }, _) => false,
            (_, Some(shifts)) => {
                let mut ok = true;
                for &i in &self.profile.extreme_columns {
                    let n = shifts
                        .column_max(i)
                        .ok_or(Error::Invalid("infinite fundamental shift"))?;
                    let mut found = false;
                    let mut x = Point::zero(self.a.dim());
                    for _ in 0..=n {
                        if self.in_s(&holes.fundamental, &x)? {
                            found = true;
                            break;
                        }
                        x = x.checked_add(&self.columns[i])?;
                    }
                    ok &= found;
                }
                ok
            }
            _ => return Err(Error::Invalid("finiteness witness is missing")),
        };
        let (non_saturation_finite, min_ss_finite) = match sets {
            Some(s) => (
                s.non_saturation.is_some(),
                matches!(
                    s.min_ss.completeness,
                    Completeness::Complete | Completeness::Skipped
                ),
            ),
            None => (holes_finite, holes_finite),
        };
        Ok(JointVerdict {
            min_ss_finite,
            cone_polyhedral: extreme_rays_saturated,
            extreme_rays_saturated,
            holes_finite,
            non_saturation_finite,
        })
    }
}

/// Largest integer not representable by the given positive integers, or
/// `-1` when every nonnegative integer is.
pub fn frobenius_number(a: &[i64]) -> Result<i64> {
    if a.is_empty() || a.iter().any(|&x| x <= 0) {
        return Err(Error::Invalid("entries must be positive"));
    }
    if gcd_slice(a) != 1 {
        return Err(Error::GcdNotOne);
    }
    let an = Analyzer::sequential(GeneratorMatrix::from_rows(&[a.to_vec()])?)?;
    let holes = an.enumerate_holes()?;
    Ok(holes.iter().map(|h| h[0]).max().unwrap_or(-1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn analyzer(rows: &[Vec<i64>]) -> Analyzer<'static> {
        Analyzer::sequential(GeneratorMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn pts(v: &[&[i64]]) -> Vec<Point> {
        v.iter().map(|p| Point::from(*p)).collect()
    }

    #[test]
    fn numerical_semigroup() {
        let an = analyzer(&[vec![3, 5, 7]]);
        assert!(an.is_fundamental_hole(&Point::from([2])).unwrap());
        assert!(!an.is_fundamental_hole(&Point::from([4])).unwrap());
        assert!(!an.is_fundamental_hole(&Point::from([3])).unwrap());
        let holes = an.hole_set().unwrap();
        assert_eq!(holes.fundamental, pts(&[&[1], &[2]]));
        assert_eq!(holes.all, Some(pts(&[&[1], &[2], &[4]])));
        let h0 = &holes.fundamental;
        assert!(an.is_saturation_point(h0, &Point::from([5])).unwrap());
        assert!(!an.is_saturation_point(h0, &Point::from([3])).unwrap());
        assert_eq!(
            an.is_saturation_point(h0, &Point::from([4])),
            Err(Error::NotInSemigroup)
        );
        let sets = an.saturation_sets(&holes, None).unwrap();
        assert_eq!(sets.non_saturation, Some(pts(&[&[0], &[3]])));
        assert_eq!(sets.min_ss.points, pts(&[&[5], &[6], &[7], &[8], &[9]]));
        assert_eq!(sets.min_sqsat.points, pts(&[&[5]]));
        assert!(an.joint_verdict(&holes, Some(&sets)).unwrap().consistent());
    }

    #[test]
    fn two_dimensional_finite_case() {
        let an = analyzer(&[vec![1, 1, 1, 1], vec![0, 1, 3, 4]]);
        let holes = an.hole_set().unwrap();
        assert_eq!(holes.fundamental, pts(&[&[1, 2]]));
        assert_eq!(holes.verdict, FinitenessVerdict::Finite);
        assert_eq!(holes.witness, FinitenessWitness::AllFinite);
        let table = holes.basis_shifts.as_ref().unwrap();
        assert!(table.entries.iter().all(|e| e.shift.value() == Some(1)));
        assert_eq!(table.entries.len(), 4);
        let sets = an.saturation_sets(&holes, None).unwrap();
        assert_eq!(sets.non_saturation, Some(pts(&[&[0, 0]])));
        let want = pts(&[&[1, 0], &[1, 1], &[1, 3], &[1, 4]]);
        assert_eq!(sets.min_ss.points, want);
        assert_eq!(sets.min_sqsat.points, want);
        assert_eq!(sets.min_sq.points, want);
    }

    #[test]
    fn two_dimensional_infinite_case() {
        let an = analyzer(&[vec![1, 1, 1, 1], vec![0, 2, 3, 4]]);
        let holes = an.hole_set().unwrap();
        assert_eq!(holes.verdict, FinitenessVerdict::Infinite);
        assert!(matches!(
            holes.witness,
            FinitenessWitness::InfiniteShift { column: 0, .. }
        ));
        assert_eq!(an.enumerate_holes(), Err(Error::InfiniteHoles));
        assert_eq!(an.non_saturation_points(&holes), Err(Error::InfiniteHoles));
        let sets = an.saturation_sets(&holes, Some(10)).unwrap();
        assert_eq!(sets.min_sq.points, pts(&[&[1, 2], &[1, 3], &[1, 4]]));
        assert_eq!(sets.min_sq.completeness, Completeness::Bounded(10));
        let jv = an.joint_verdict(&holes, Some(&sets)).unwrap();
        assert!(jv.consistent() && !jv.holes_finite);
    }

    #[test]
    fn saturated_identity() {
        let an = analyzer(&[vec![1, 0], vec![0, 1]]);
        let holes = an.hole_set().unwrap();
        assert!(holes.is_saturated());
        assert!(holes.fundamental.is_empty());
        assert_eq!(holes.all, Some(vec![]));
        assert!(an
            .is_saturation_point(&holes.fundamental, &Point::from([0, 0]))
            .unwrap());
        let sets = an.saturation_sets(&holes, None).unwrap();
        assert_eq!(sets.min_ss.completeness, Completeness::Skipped);
        assert!(an.joint_verdict(&holes, Some(&sets)).unwrap().consistent());
    }

    #[test]
    fn frobenius_numbers() {
        assert_eq!(frobenius_number(&[3, 5, 7]), Ok(4));
        assert_eq!(frobenius_number(&[2, 3]), Ok(1));
        assert_eq!(frobenius_number(&[1, 5]), Ok(-1));
        assert_eq!(frobenius_number(&[4, 6]), Err(Error::GcdNotOne));
    }
}
