//! Sign-constrained linear Diophantine systems: minimal solutions, Hilbert
//! bases, semigroup membership and shift indices.
//!
//! Everything here funnels into one completion procedure
//! ([`completion`]), run on an integer lattice with some coordinates
//! constrained to be nonnegative.

mod completion;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cone::ConeProfile;
use crate::error::{Error, Result};
use crate::exact::hnf::hermite_normal_form;
use crate::exact::lattice::{lattice_normalize, LatticeNormalization};
use crate::exact::lp::{Feasibility, LinearSystem, Relation};
use crate::matrix::{GeneratorMatrix, Matrix};
use crate::pool::Pool;
use crate::vector::Point;

use completion::{minimal_elements, Coord, Problem};

/// Domain of one variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    NonNeg,
    NonPos,
    Free,
}

/// One [`Sign`] per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignPattern(pub Vec<Sign>);

impl SignPattern {
    pub fn nonneg(n: usize) -> Self {
        SignPattern(alloc::vec![Sign::NonNeg; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn admits(&self, x: &[i64]) -> bool {
        self.0.iter().zip(x).all(|(s, &v)| match s {
            Sign::NonNeg => v >= 0,
            Sign::NonPos => v <= 0,
            Sign::Free => true,
        })
    }
}

/// Minimal solutions of `M x = b` under a sign pattern.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DioSolutionSet {
    /// Solutions of `M x = b` minimal in the sign-adjusted componentwise order.
    pub inhomogeneous_minimal: Vec<Vec<i64>>,
    /// Hilbert basis of `{ x : M x = 0 }` under the sign pattern.
    pub homogeneous_basis: Vec<Vec<i64>>,
}

fn flip(x: i64, s: Sign) -> i64 {
    if s == Sign::NonPos {
        -x
    } else {
        x
    }
}

/// Integer kernel of `m` as rows.
fn integer_kernel(m: &Matrix<i64>) -> Vec<Vec<i64>> {
    let h = hermite_normal_form(&m.map(|&x| BigInt::from(x)));
    (h.rank()..m.cols())
        .map(|j| {
            h.u.col(j)
                .iter()
                .map(|x| i64::try_from(x).expect("kernel entries fit in i64"))
                .collect()
        })
        .collect()
}

/// Solves `M x = b` under `signs` by completion on the homogenized lattice
/// `{ (t, x) : M x - b t = 0 }` truncated at `t <= 1`.
pub fn solve_diophantine(
    m: &Matrix<i64>,
    b: &[i64],
    signs: &SignPattern,
) -> Result<DioSolutionSet> {
    let n = m.cols();
    if b.len() != m.rows() || signs.len() != n {
        return Err(Error::Dimension(
            "system, right-hand side and signs disagree",
        ));
    }
    // columns: t, then x with nonpositive variables negated
    let mut data = Vec::with_capacity(m.rows() * (n + 1));
    for r in 0..m.rows() {
        data.push(b[r].checked_neg().ok_or(Error::Overflow)?);
        data.extend(m.row(r).iter().zip(&signs.0).map(|(&x, &s)| flip(x, s)));
    }
    let homogenized = Matrix::from_vec(m.rows(), n + 1, data)?;
    let basis = integer_kernel(&homogenized);
    let mut kinds = alloc::vec![Coord::NonNeg];
    kinds.extend(signs.0.iter().map(|&s| {
        if s == Sign::Free {
            Coord::Free
        } else {
            Coord::NonNeg
        }
    }));
    let problem = Problem {
        basis,
        kinds,
        bound: Some((0, 1)),
    };
    let mut out = DioSolutionSet::default();
    for v in minimal_elements(&problem)? {
        let x: Vec<i64> = v[1..]
            .iter()
            .zip(&signs.0)
            .map(|(&x, &s)| flip(x, s))
            .collect();
        match v[0] {
            0 => out.homogeneous_basis.push(x),
            1 => out.inhomogeneous_minimal.push(x),
            _ => unreachable!("truncated at t <= 1"),
        }
    }
    let has_line = out.homogeneous_basis.iter().any(|h| {
        let neg: Vec<i64> = h.iter().map(|x| -x).collect();
        out.homogeneous_basis.contains(&neg)
    });
    if has_line {
        return Err(Error::UnsupportedSystem);
    }
    let key = |x: &Vec<i64>| (x.iter().map(|v| v.abs()).sum::<i64>(), x.clone());
    out.inhomogeneous_minimal.sort_by_cached_key(key);
    out.homogeneous_basis.sort_by_cached_key(key);
    Ok(out)
}

/// Answer to a membership query in `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Multiplicities `x >= 0` with `A x = b`.
    Member(Vec<i64>),
    /// The minimal-solution set of `A x = b, x >= 0` is empty.
    NonMember,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn witness(&self) -> Option<&[i64]> {
        match self {
            Membership::Member(x) => Some(x),
            Membership::NonMember => None,
        }
    }
}

/// Decides `b ∈ Q`, with a multiplicity vector as witness.
pub fn semigroup_member(a: &GeneratorMatrix, b: &Point) -> Result<Membership> {
    if b.dim() != a.dim() {
        return Err(Error::Dimension(
            "point does not match the ambient dimension",
        ));
    }
    if b.is_zero() {
        return Ok(Membership::Member(alloc::vec![0; a.len()]));
    }
    let sols = solve_diophantine(a.entries(), b, &SignPattern::nonneg(a.len()))?;
    Ok(match sols.inhomogeneous_minimal.into_iter().next() {
        Some(x) => Membership::Member(x),
        None => Membership::NonMember,
    })
}

/// One element of a Hilbert basis with its flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertElement {
    pub vector: Point,
    /// Equal to some column of `A`.
    pub is_generator: bool,
    /// Not in `Q`.
    pub is_hole: bool,
}

/// Minimal Hilbert basis of `K ∩ L`, sorted by degree then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    pub elements: Vec<HilbertElement>,
}

impl HilbertBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn vectors(&self) -> Vec<Point> {
        self.elements.iter().map(|e| e.vector.clone()).collect()
    }

    pub fn holes(&self) -> impl Iterator<Item = &HilbertElement> {
        self.elements.iter().filter(|e| e.is_hole)
    }
}

/// Hilbert basis of the cone spanned by the columns, within their lattice.
pub fn hilbert_basis_of_cone(a: &GeneratorMatrix) -> Result<HilbertBasis> {
    let lattice = lattice_normalize(a)?;
    let profile = ConeProfile::new(a, &lattice)?;
    hilbert_basis_with(a, &lattice, &profile, |p| {
        Ok(semigroup_member(a, p)?.is_member())
    })
}

/// Hilbert basis from precomputed geometry. `member` decides `Q`-membership
/// for the hole flags.
///
/// The facet values `F z` of a normalized point `z` are the constrained
/// coordinates; `z` itself rides along.
pub fn hilbert_basis_with(
    a: &GeneratorMatrix,
    lattice: &LatticeNormalization,
    profile: &ConeProfile,
    member: impl Fn(&Point) -> Result<bool>,
) -> Result<HilbertBasis> {
    let facets = &profile.normalized_inequalities;
    let r = lattice.rank;
    let basis: Vec<Vec<i64>> = (0..r)
        .map(|k| {
            let mut row: Vec<i64> = facets.iter().map(|f| f[k]).collect();
            row.extend((0..r).map(|j| i64::from(j == k)));
            row
        })
        .collect();
    let problem = Problem {
        basis,
        kinds: alloc::vec![Coord::NonNeg; facets.len()],
        bound: None,
    };
    let columns = a.columns();
    let mut elements = Vec::new();
    for v in minimal_elements(&problem)? {
        let vector = lattice.denormalize(&Point::from(&v[facets.len()..]))?;
        let is_generator = columns.contains(&vector);
        let is_hole = !is_generator && !member(&vector)?;
        elements.push(HilbertElement {
            vector,
            is_generator,
            is_hole,
        });
    }
    let grading = &profile.grading;
    elements.sort_by_cached_key(|e| (e.vector.dot(grading).unwrap_or(i64::MAX), e.vector.clone()));
    Ok(HilbertBasis { elements })
}

/// Why a shift index is infinite.
#[derive(Clone, Debug, PartialEq)]
pub enum InfinityCertificate {
    /// Farkas multipliers, one per row, for the real relaxation of
    /// `sum_{j != i} x_j a_j - x_i a_i = y` with `x >= 0`.
    RealInfeasible(Vec<BigRational>),
    /// The relaxation is feasible but the minimal integer solution set is empty.
    NoIntegerSolution,
}

/// The least `λ >= 0` with `y + λ a_i ∈ Q`, or infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Shift {
    /// `witness` holds multiplicities `x >= 0` with `A x = y + value a_i`.
    Finite {
        value: u64,
        witness: Vec<i64>,
    },
    Infinite(InfinityCertificate),
}

impl Shift {
    pub fn value(&self) -> Option<u64> {
        match self {
            Shift::Finite { value, .. } => Some(*value),
            Shift::Infinite(_) => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.value().is_some()
    }
}

/// Shift index of `y` along column `i` (zero-based).
///
/// With `y ∉ Q` a minimal `λ` never uses `a_i` on the right, so `λ` is the
/// least `-x_i` over solutions of `A x = y` with `x_i <= 0` and the other
/// variables nonnegative. Reducing a solution by a homogeneous one does not
/// increase `-x_i`, so the minimum is attained on a minimal solution.
pub fn min_shift(a: &GeneratorMatrix, y: &Point, i: usize) -> Result<Shift> {
    if i >= a.len() {
        return Err(Error::Invalid("column index out of range"));
    }
    match semigroup_member(a, y)? {
        Membership::Member(witness) => Ok(Shift::Finite { value: 0, witness }),
        Membership::NonMember => shift_of_non_member(a, y, i),
    }
}

/// [`min_shift`] for a point already known not to lie in `Q`.
pub fn shift_of_non_member(a: &GeneratorMatrix, y: &Point, i: usize) -> Result<Shift> {
    if y.dim() != a.dim() {
        return Err(Error::Dimension(
            "point does not match the ambient dimension",
        ));
    }
    let rat = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut lp = LinearSystem::new(a.len()).all_nonneg();
    for r in 0..a.dim() {
        let coeffs = (0..a.len())
            .map(|j| {
                let x = a.entries()[(r, j)];
                rat(if j == i { -x } else { x })
            })
            .collect();
        lp.push(coeffs, Relation::Eq, rat(y[r]));
    }
    if let Feasibility::Infeasible(mult) = lp.feasible() {
        debug_assert!(lp.verify_infeasibility(&mult));
        return Ok(Shift::Infinite(InfinityCertificate::RealInfeasible(mult)));
    }
    let mut signs = SignPattern::nonneg(a.len());
    signs.0[i] = Sign::NonPos;
    let sols = solve_diophantine(a.entries(), y, &signs)?;
    let best = sols
        .inhomogeneous_minimal
        .into_iter()
        .min_by_key(|x| (-x[i], x.clone()));
    Ok(match best {
        Some(mut x) => {
            let value = u64::try_from(-x[i]).expect("nonpositive by sign pattern");
            x[i] = 0;
            Shift::Finite { value, witness: x }
        }
        None => Shift::Infinite(InfinityCertificate::NoIntegerSolution),
    })
}

/// One cell of a [`ShiftTable`]; `source` indexes the table's sources and
/// `column` is a zero-based column of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftEntry {
    pub source: usize,
    pub column: usize,
    pub shift: Shift,
}

/// Shift indices of a list of source points along a list of columns, row
/// by row.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftTable {
    pub sources: Vec<Point>,
    pub columns: Vec<usize>,
    pub entries: Vec<ShiftEntry>,
}

impl ShiftTable {
    /// Computes every cell for sources known to lie outside `Q`.
    pub fn for_non_members<P: Pool>(
        a: &GeneratorMatrix,
        sources: Vec<Point>,
        columns: Vec<usize>,
        pool: &P,
    ) -> Result<Self> {
        let cells: Vec<(usize, usize)> = (0..sources.len())
            .flat_map(|s| columns.iter().map(move |&c| (s, c)))
            .collect();
        let shifts = pool.map(&cells, |&(s, c)| shift_of_non_member(a, &sources[s], c));
        let entries = cells
            .into_iter()
            .zip(shifts)
            .map(|((source, column), shift)| {
                Ok(ShiftEntry {
                    source,
                    column,
                    shift: shift?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ShiftTable {
            sources,
            columns,
            entries,
        })
    }

    pub fn get(&self, source: usize, column: usize) -> Option<&Shift> {
        self.entries
            .iter()
            .find(|e| e.source == source && e.column == column)
            .map(|e| &e.shift)
    }

    /// First infinite cell in row-major order.
    pub fn first_infinite(&self) -> Option<&ShiftEntry> {
        self.entries.iter().find(|e| !e.shift.is_finite())
    }

    pub fn all_finite(&self) -> bool {
        self.first_infinite().is_none()
    }

    /// `max` over sources of the shift along `column`; `Some(0)` without
    /// sources and `None` if some cell is infinite.
    pub fn column_max(&self, column: usize) -> Option<u64> {
        self.entries
            .iter()
            .filter(|e| e.column == column)
            .try_fold(0, |m, e| e.shift.value().map(|v| m.max(v)))
    }
}
