//! Marginal models of multi-way contingency tables.
//!
//! Cells of an `n_1 x ... x n_s` table and cells of every margin are listed
//! with the first index varying fastest. With the margins given as
//! `12,13,14,23,24,34` this reproduces the usual listing of the `2^4`
//! all-two-way model.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::rational::independent_rows;
use crate::matrix::{GeneratorMatrix, Matrix};

/// Table sizes and a family of margins (one-based factor indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarginalModel {
    sizes: Vec<usize>,
    margins: Vec<Vec<usize>>,
}

impl MarginalModel {
    pub fn new(sizes: Vec<usize>, margins: Vec<Vec<usize>>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::Invalid("table sizes must be positive"));
        }
        if margins.is_empty() {
            return Err(Error::Invalid("at least one margin is required"));
        }
        for m in &margins {
            if m.is_empty() || m.iter().any(|&k| k == 0 || k > sizes.len()) {
                return Err(Error::Invalid("margin index out of range"));
            }
            let mut sorted = m.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != m.len() {
                return Err(Error::Invalid("margin repeats a factor"));
            }
        }
        let cells = sizes.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n));
        if cells.is_none() {
            return Err(Error::Overflow);
        }
        Ok(MarginalModel { sizes, margins })
    }

    /// Parses sizes like `2x2x2x2` and margins like `12,13,14,234`.
    pub fn parse(sizes: &str, margins: &str) -> Result<Self> {
        let sizes = sizes
            .split(['x', 'X'])
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Invalid("bad table size"))
            })
            .collect::<Result<Vec<_>>>()?;
        let margins = margins
            .split(',')
            .map(|m| {
                m.trim()
                    .chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or(Error::Invalid("margins are digit strings"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(sizes, margins)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn margins(&self) -> &[Vec<usize>] {
        &self.margins
    }

    pub fn cell_count(&self) -> usize {
        self.sizes.iter().product()
    }
}

/// Decodes a cell number into its indices, first index fastest.
fn cell_indices(mut cell: usize, sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .map(|&n| {
            let i = cell % n;
            cell /= n;
            i
        })
        .collect()
}

/// The 0/1 matrix sending a table to its margins.
pub fn marginal_matrix(model: &MarginalModel) -> Result<GeneratorMatrix> {
    let cells = model.cell_count();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for margin in &model.margins {
        let msizes: Vec<usize> = margin.iter().map(|&k| model.sizes[k - 1]).collect();
        let mcells: usize = msizes.iter().product();
        let start = rows.len();
        rows.extend((0..mcells).map(|_| alloc::vec![0i64; cells]));
        for cell in 0..cells {
            let idx = cell_indices(cell, &model.sizes);
            let mut pos = 0;
            for (k, &f) in margin.iter().enumerate().rev() {
                pos = pos * msizes[k] + idx[f - 1];
            }
            rows[start + pos][cell] = 1;
        }
    }
    GeneratorMatrix::from_rows(&rows)
}

/// Keeps the earliest maximal set of rationally independent rows.
pub fn remove_redundant_rows(a: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    let keep = independent_rows(&a.entries().map(|&x| BigInt::from(x)));
    GeneratorMatrix::new(a.entries().select_rows(&keep))
}

/// Block-diagonal matrix `diag(a1, a2)`.
pub fn embed_block(a1: &GeneratorMatrix, a2: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    let (d1, n1) = (a1.dim(), a1.len());
    let mut m = Matrix::zeros(d1 + a2.dim(), n1 + a2.len());
    for i in 0..d1 {
        for j in 0..n1 {
            m[(i, j)] = a1.entries()[(i, j)];
        }
    }
    for i in 0..a2.dim() {
        for j in 0..a2.len() {
            m[(d1 + i, n1 + j)] = a2.entries()[(i, j)];
        }
    }
    GeneratorMatrix::new(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn two_by_two_independence() {
        let a = marginal_matrix(&MarginalModel::parse("2x2", "1,2").unwrap()).unwrap();
        let want = Matrix::from_rows(&[
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
            vec![1, 1, 0, 0],
            vec![0, 0, 1, 1],
        ])
        .unwrap();
        assert_eq!(a.entries(), &want);
    }

    #[test]
    fn every_column_hits_each_margin_once() {
        let model = MarginalModel::parse("2x3x2", "12,3,23").unwrap();
        let a = marginal_matrix(&model).unwrap();
        assert_eq!(a.len(), 12);
        for col in a.columns() {
            assert_eq!(col.iter().sum::<i64>(), 3);
        }
    }

    #[test]
    fn bad_models_are_rejected() {
        assert!(MarginalModel::parse("2x0", "1").is_err());
        assert!(MarginalModel::parse("2x2", "13").is_err());
        assert!(MarginalModel::parse("2x2", "11").is_err());
        assert!(MarginalModel::parse("2x2", "1a").is_err());
    }

    #[test]
    fn redundancy_removal() {
        let id = GeneratorMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(remove_redundant_rows(&id).unwrap(), id);
        let dup = GeneratorMatrix::from_rows(&[vec![1, 2], vec![1, 2], vec![0, 1]]).unwrap();
        let want = GeneratorMatrix::from_rows(&[vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(remove_redundant_rows(&dup).unwrap(), want);
    }

    #[test]
    fn block_embedding() {
        let one = GeneratorMatrix::from_rows(&[vec![1]]).unwrap();
        let id = GeneratorMatrix::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(embed_block(&one, &one).unwrap(), id);
        let a1 = GeneratorMatrix::from_rows(&[vec![1, 1, 1, 1], vec![0, 1, 3, 4]]).unwrap();
        let want = GeneratorMatrix::from_rows(&[
            vec![1, 1, 1, 1, 0],
            vec![0, 1, 3, 4, 0],
            vec![0, 0, 0, 0, 1],
        ])
        .unwrap();
        assert_eq!(embed_block(&a1, &one).unwrap(), want);
    }
}
