//! Holes and saturation points of affine semigroups.
//!
//! Given an integer matrix `A`, the semigroup `Q` is the set of nonnegative
//! integer combinations of its columns. Its saturation `Q_sat` is the set of
//! lattice points of the cone spanned by the columns, inside the lattice the
//! columns generate. Points of `Q_sat \ Q` are holes. This crate decides
//! whether there are finitely many holes, enumerates them when there are,
//! and computes the saturation points of `Q` together with the three
//! notions of minimal saturation points.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, reporting and the
//! command line live in the `semihole` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analyzer;
pub mod cone;
pub mod engine;
pub mod error;
pub mod exact;
pub mod matrix;
pub mod pool;
pub mod tables;
pub mod vector;

pub use crate::analyzer::{
    frobenius_number, Analyzer, Completeness, FinitenessVerdict, FinitenessWitness, HoleSet,
    JointVerdict, MinimalSet, SaturationSets,
};
pub use crate::cone::ConeProfile;
pub use crate::engine::{
    DioSolutionSet, HilbertBasis, HilbertElement, InfinityCertificate, Membership, Shift,
    ShiftEntry, ShiftTable, Sign, SignPattern,
};
pub use crate::error::{Error, Result};
pub use crate::exact::lattice::LatticeNormalization;
pub use crate::matrix::{GeneratorMatrix, Matrix};
pub use crate::pool::{Pool, Sequential};
pub use crate::tables::MarginalModel;
pub use crate::vector::Point;
