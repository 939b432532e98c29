//! Exact covering linear programs.
//!
//! Solves `min sum(u) s.t. Q u >= f, u >= 0` (plus optional integer bounds on
//! single variables) where `Q` is a 0/1 matrix given column by column. The
//! solver works on the dual `max f.y s.t. Q^T y <= 1, y >= 0`, whose origin
//! is always feasible, so no phase-one is needed; the primal allocation is
//! read off the reduced costs of the dual slacks.
//!
//! Arithmetic is exact. Pivoting first runs on `Ratio<i128>` with checked
//! operations and restarts on `BigRational` if anything overflows.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

/// An extra constraint on one primal variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtLeast { column: usize, value: u64 },
    AtMost { column: usize, value: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolution {
    pub objective: BigRational,
    pub allocation: Vec<BigRational>,
}

/// Solves the covering program. `columns[j]` lists the rows (demand indices)
/// covered by variable `j`. Returns `None` when the bounds make the program
/// infeasible (a row with positive demand and no column also does).
pub fn solve_covering(
    columns: &[Vec<usize>],
    demand: &[u64],
    bounds: &[Bound],
) -> Option<CoverSolution> {
    match Tableau::<Ratio<i128>>::build(columns, demand, bounds).and_then(|t| t.solve()) {
        Ok(sol) => sol,
        Err(Overflow) => Tableau::<BigRational>::build(columns, demand, bounds)
            .and_then(|t| t.solve())
            .expect("big rationals do not overflow"),
    }
}

#[derive(Debug)]
struct Overflow;

type Checked<T> = Result<T, Overflow>;

trait Scalar: Clone + PartialOrd + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Checked<Self>;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn sub(&self, o: &Self) -> Checked<Self>;
    fn mul(&self, o: &Self) -> Checked<Self>;
    fn div(&self, o: &Self) -> Checked<Self>;
    fn to_big(&self) -> BigRational;
}

impl Scalar for Ratio<i128> {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Checked<Self> {
        Ok(Ratio::from_integer(v as i128))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        self.checked_sub(o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        self.checked_mul(o).ok_or(Overflow)
    }
    fn div(&self, o: &Self) -> Checked<Self> {
        self.checked_div(o).ok_or(Overflow)
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Checked<Self> {
        Ok(BigRational::from_integer(v.into()))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Checked<Self> {
        Ok(self / o)
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

/// Dense dual tableau. Rows are dual constraints (one per primal column),
/// variables are `[y (one per demand row) | z (one per bound) | slacks]`.
struct Tableau<S> {
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    /// Reduced costs; entering candidates are the negative entries.
    cost: Vec<S>,
    objective: S,
    basis: Vec<usize>,
    slack_start: usize,
}

impl<S: Scalar> Tableau<S> {
    fn build(columns: &[Vec<usize>], demand: &[u64], bounds: &[Bound]) -> Checked<Self> {
        let m = columns.len();
        let n_y = demand.len();
        let slack_start = n_y + bounds.len();
        let width = slack_start + m;

        let mut rows = vec![vec![S::zero(); width]; m];
        for (j, col) in columns.iter().enumerate() {
            for &i in col {
                rows[j][i] = S::one();
            }
            rows[j][slack_start + j] = S::one();
        }
        let mut cost = vec![S::zero(); width];
        for (i, &f) in demand.iter().enumerate() {
            cost[i] = S::from_i64(-(f as i64))?;
        }
        for (b, bound) in bounds.iter().enumerate() {
            let v = n_y + b;
            match *bound {
                Bound::AtLeast { column, value } => {
                    rows[column][v] = S::one();
                    cost[v] = S::from_i64(-(value as i64))?;
                }
                Bound::AtMost { column, value } => {
                    rows[column][v] = S::from_i64(-1)?;
                    cost[v] = S::from_i64(value as i64)?;
                }
            }
        }
        Ok(Tableau {
            rows,
            rhs: vec![S::one(); m],
            cost,
            objective: S::zero(),
            basis: (slack_start..width).collect(),
            slack_start,
        })
    }

    fn solve(mut self) -> Checked<Option<CoverSolution>> {
        let m = self.rows.len();
        let mut bland = false;
        let mut degenerate_run = 0usize;
        loop {
            let entering = if bland {
                self.cost.iter().position(|c| c.is_negative())
            } else {
                let mut best: Option<usize> = None;
                for (v, c) in self.cost.iter().enumerate() {
                    if c.is_negative() && best.is_none_or(|b| *c < self.cost[b]) {
                        best = Some(v);
                    }
                }
                best
            };
            let Some(e) = entering else { break };

            let mut leave: Option<(usize, S)> = None;
            for r in 0..m {
                let a = &self.rows[r][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs[r].div(a)?;
                let better = match &leave {
                    None => true,
                    Some((lr, lratio)) => {
                        ratio < *lratio || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            // Unbounded dual: the bounds leave the primal infeasible.
            let Some((r, ratio)) = leave else {
                return Ok(None);
            };
            if ratio.is_zero() {
                degenerate_run += 1;
                if degenerate_run > m {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
            self.pivot(r, e)?;
        }

        let allocation = (0..m)
            .map(|j| self.cost[self.slack_start + j].to_big())
            .collect();
        Ok(Some(CoverSolution {
            objective: self.objective.to_big(),
            allocation,
        }))
    }

    fn pivot(&mut self, r: usize, e: usize) -> Checked<()> {
        let piv = self.rows[r][e].clone();
        let support: Vec<usize> = (0..self.rows[r].len())
            .filter(|&k| !self.rows[r][k].is_zero())
            .collect();
        for &k in &support {
            self.rows[r][k] = self.rows[r][k].div(&piv)?;
        }
        self.rhs[r] = self.rhs[r].div(&piv)?;

        let (pivot_row, pivot_rhs) = (self.rows[r].clone(), self.rhs[r].clone());
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][e].is_zero() {
                continue;
            }
            let factor = self.rows[i][e].clone();
            for &k in &support {
                self.rows[i][k] = self.rows[i][k].sub(&factor.mul(&pivot_row[k])?)?;
            }
            self.rhs[i] = self.rhs[i].sub(&factor.mul(&pivot_rhs)?)?;
        }
        if !self.cost[e].is_zero() {
            let factor = self.cost[e].clone();
            for &k in &support {
                self.cost[k] = self.cost[k].sub(&factor.mul(&pivot_row[k])?)?;
            }
            self.objective = self.objective.sub(&factor.mul(&pivot_rhs)?)?;
        }
        self.basis[r] = e;
        Ok(())
    }
}
