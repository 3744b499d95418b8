//! Exact rational linear programming (two-phase simplex, Bland's rule).
//!
//! Infeasible systems come with Farkas multipliers that can be checked
//! independently with [`LinearSystem::verify_infeasibility`].

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

/// Linear constraints over variables `0..vars`; variables flagged in
/// `nonneg` carry an implicit `x >= 0`, the rest are free.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    pub nonneg: Vec<bool>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<BigRational>),
    /// One multiplier per constraint: `>=` rows get `y >= 0`, `<=` rows
    /// `y <= 0`. Combined, they give `0 >= positive`.
    Infeasible(Vec<BigRational>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Optimum {
    Optimal {
        point: Vec<BigRational>,
        value: BigRational,
    },
    Infeasible(Vec<BigRational>),
    Unbounded,
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        LinearSystem {
            nonneg: alloc::vec![false; vars],
            constraints: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.nonneg.len()
    }

    pub fn set_nonneg(&mut self, var: usize) -> &mut Self {
        self.nonneg[var] = true;
        self
    }

    pub fn all_nonneg(mut self) -> Self {
        self.nonneg.iter_mut().for_each(|b| *b = true);
        self
    }

    pub fn push(&mut self, coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) {
        debug_assert_eq!(coeffs.len(), self.vars());
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn push_int(&mut self, coeffs: &[i64], relation: Relation, rhs: i64) {
        self.push(coeffs.iter().map(|&c| int(c)).collect(), relation, int(rhs));
    }

    pub fn satisfied_by(&self, x: &[BigRational]) -> bool {
        if x.len() != self.vars() {
            return false;
        }
        if self
            .nonneg
            .iter()
            .zip(x)
            .any(|(&nn, v)| nn && v.is_negative())
        {
            return false;
        }
        self.constraints.iter().all(|c| {
            let lhs: BigRational = c.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Eq => lhs == c.rhs,
            }
        })
    }

    /// Checks a Farkas certificate without trusting the solver.
    pub fn verify_infeasibility(&self, y: &[BigRational]) -> bool {
        if y.len() != self.constraints.len() {
            return false;
        }
        for (c, yk) in self.constraints.iter().zip(y) {
            let ok = match c.relation {
                Relation::Ge => !yk.is_negative(),
                Relation::Le => !yk.is_positive(),
                Relation::Eq => true,
            };
            if !ok {
                return false;
            }
        }
        for j in 0..self.vars() {
            let s: BigRational = self
                .constraints
                .iter()
                .zip(y)
                .map(|(c, yk)| yk * &c.coeffs[j])
                .sum();
            let ok = if self.nonneg[j] {
                !s.is_positive()
            } else {
                s.is_zero()
            };
            if !ok {
                return false;
            }
        }
        let rhs: BigRational = self
            .constraints
            .iter()
            .zip(y)
            .map(|(c, yk)| yk * &c.rhs)
            .sum();
        rhs.is_positive()
    }

    /// Feasibility check; the origin is returned as witness whenever it
    /// satisfies the system.
    pub fn feasible(&self) -> Feasibility {
        let origin = alloc::vec![BigRational::zero(); self.vars()];
        if self.satisfied_by(&origin) {
            return Feasibility::Feasible(origin);
        }
        match self.solve(None) {
            Optimum::Optimal { point, .. } => Feasibility::Feasible(point),
            Optimum::Infeasible(y) => Feasibility::Infeasible(y),
            Optimum::Unbounded => unreachable!("feasibility problems have a zero objective"),
        }
    }

    /// Minimizes `objective . x`.
    pub fn minimize(&self, objective: &[BigRational]) -> Optimum {
        self.solve(Some(objective))
    }

    fn solve(&self, objective: Option<&[BigRational]>) -> Optimum {
        let vars = self.vars();
        // standard-form columns: one per nonneg var, two per free var, one slack per inequality
        let mut col_of_var: Vec<(usize, Option<usize>)> = Vec::with_capacity(vars);
        let mut ncols = 0;
        for &nn in &self.nonneg {
            if nn {
                col_of_var.push((ncols, None));
                ncols += 1;
            } else {
                col_of_var.push((ncols, Some(ncols + 1)));
                ncols += 2;
            }
        }
        let mut slack_of_row = Vec::with_capacity(self.constraints.len());
        for c in &self.constraints {
            if c.relation == Relation::Eq {
                slack_of_row.push(None);
            } else {
                slack_of_row.push(Some(ncols));
                ncols += 1;
            }
        }
        let m = self.constraints.len();
        let structural = ncols;
        let width = structural + m + 1;
        let mut t = alloc::vec![BigRational::zero(); m * width];
        let mut row_sign = Vec::with_capacity(m);
        for (i, c) in self.constraints.iter().enumerate() {
            let sign = if c.rhs.is_negative() { int(-1) } else { int(1) };
            let row = &mut t[i * width..(i + 1) * width];
            for (j, a) in c.coeffs.iter().enumerate() {
                let (p, n) = col_of_var[j];
                row[p] = a * &sign;
                if let Some(n) = n {
                    row[n] = -(a * &sign);
                }
            }
            if let Some(s) = slack_of_row[i] {
                let v = if c.relation == Relation::Le {
                    int(1)
                } else {
                    int(-1)
                };
                row[s] = v * &sign;
            }
            row[structural + i] = BigRational::one();
            row[width - 1] = &c.rhs * &sign;
            row_sign.push(sign);
        }
        let mut tab = Tableau {
            t,
            m,
            width,
            basis: (structural..structural + m).collect(),
        };

        // phase I
        let mut cost1 = alloc::vec![BigRational::zero(); structural + m];
        for c in cost1.iter_mut().skip(structural) {
            *c = BigRational::one();
        }
        tab.run(&cost1, structural + m);
        let phase1 = tab.objective(&cost1);
        if phase1.is_positive() {
            let rc = tab.reduced_costs(&cost1);
            let y = (0..m)
                .map(|i| (BigRational::one() - &rc[structural + i]) * &row_sign[i])
                .collect();
            return Optimum::Infeasible(y);
        }
        tab.drive_out_artificials(structural);

        let value_of = |tab: &Tableau| -> Vec<BigRational> {
            let mut z = alloc::vec![BigRational::zero(); structural];
            for (i, &b) in tab.basis.iter().enumerate() {
                if b < structural {
                    z[b] = tab.rhs(i).clone();
                }
            }
            col_of_var
                .iter()
                .map(|&(p, n)| match n {
                    Some(n) => &z[p] - &z[n],
                    None => z[p].clone(),
                })
                .collect()
        };

        let Some(obj) = objective else {
            return Optimum::Optimal {
                point: value_of(&tab),
                value: BigRational::zero(),
            };
        };
        let mut cost2 = alloc::vec![BigRational::zero(); structural + m];
        for (j, c) in obj.iter().enumerate() {
            let (p, n) = col_of_var[j];
            cost2[p] = c.clone();
            if let Some(n) = n {
                cost2[n] = -c.clone();
            }
        }
        if !tab.run(&cost2, structural) {
            return Optimum::Unbounded;
        }
        let point = value_of(&tab);
        let value = obj.iter().zip(&point).map(|(a, b)| a * b).sum();
        Optimum::Optimal { point, value }
    }
}

struct Tableau {
    t: Vec<BigRational>,
    m: usize,
    width: usize,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.t[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> &BigRational {
        self.at(i, self.width - 1)
    }

    fn reduced_costs(&self, cost: &[BigRational]) -> Vec<BigRational> {
        (0..self.width - 1)
            .map(|j| {
                let mut r = cost[j].clone();
                for i in 0..self.m {
                    let cb = &cost[self.basis[i]];
                    if !cb.is_zero() {
                        r -= cb * self.at(i, j);
                    }
                }
                r
            })
            .collect()
    }

    fn objective(&self, cost: &[BigRational]) -> BigRational {
        (0..self.m)
            .map(|i| &cost[self.basis[i]] * self.rhs(i))
            .sum()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let inv = self.at(r, c).recip();
        for j in 0..w {
            let v = &self.t[r * w + j] * &inv;
            self.t[r * w + j] = v;
        }
        for i in 0..self.m {
            if i == r {
                continue;
            }
            let f = self.t[i * w + c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..w {
                let v = &f * &self.t[r * w + j];
                self.t[i * w + j] -= v;
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes with entering columns restricted to `0..allowed`.
    /// Returns false when unbounded.
    fn run(&mut self, cost: &[BigRational], allowed: usize) -> bool {
        loop {
            let rc = self.reduced_costs(cost);
            // Bland: lowest-index improving column
            let Some(enter) = (0..allowed).find(|&j| rc[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.m {
                let a = self.at(i, enter);
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, enter);
        }
    }

    fn drive_out_artificials(&mut self, structural: usize) {
        for i in 0..self.m {
            if self.basis[i] < structural {
                continue;
            }
            if let Some(j) = (0..structural).find(|&j| !self.at(i, j).is_zero()) {
                self.pivot(i, j);
            }
            // otherwise the row is redundant; its artificial stays basic at zero
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn box_is_feasible_at_zero() {
        let mut s = LinearSystem::new(1);
        s.push_int(&[1], Relation::Ge, 0);
        s.push_int(&[1], Relation::Le, 1);
        match s.feasible() {
            Feasibility::Feasible(x) => {
                assert!(s.satisfied_by(&x));
                assert_eq!(x, vec![int(0)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn crossed_bounds_are_infeasible() {
        let mut s = LinearSystem::new(1);
        s.push_int(&[1], Relation::Ge, 1);
        s.push_int(&[1], Relation::Le, 0);
        match s.feasible() {
            Feasibility::Infeasible(y) => assert!(s.verify_infeasibility(&y)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn negative_rhs_and_equalities() {
        // x + y = -1, x - y = 3 -> x = 1, y = -2
        let mut s = LinearSystem::new(2);
        s.push_int(&[1, 1], Relation::Eq, -1);
        s.push_int(&[1, -1], Relation::Eq, 3);
        match s.feasible() {
            Feasibility::Feasible(x) => assert_eq!(x, vec![int(1), int(-2)]),
            other => panic!("{other:?}"),
        }
        let s = s.all_nonneg();
        match s.feasible() {
            Feasibility::Infeasible(y) => assert!(s.verify_infeasibility(&y)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn minimize_simple() {
        // min x + y s.t. x + 2y >= 2, 2x + y >= 2, x,y >= 0 -> 4/3
        let mut s = LinearSystem::new(2).all_nonneg();
        s.push_int(&[1, 2], Relation::Ge, 2);
        s.push_int(&[2, 1], Relation::Ge, 2);
        match s.minimize(&[int(1), int(1)]) {
            Optimum::Optimal { value, point } => {
                assert_eq!(value, BigRational::new(4.into(), 3.into()));
                assert!(s.satisfied_by(&point));
            }
            other => panic!("{other:?}"),
        }
        let mut u = LinearSystem::new(1);
        u.push_int(&[1], Relation::Le, 5);
        assert_eq!(u.minimize(&[int(1)]), Optimum::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let mut s = LinearSystem::new(2).all_nonneg();
        s.push_int(&[1, 1], Relation::Eq, 2);
        s.push_int(&[2, 2], Relation::Eq, 4);
        match s.minimize(&[int(1), int(0)]) {
            Optimum::Optimal { value, .. } => assert_eq!(value, int(0)),
            other => panic!("{other:?}"),
        }
    }
}
