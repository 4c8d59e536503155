//! Dense two-phase simplex over arbitrary-precision rationals.
//!
//! Everything the certificate machinery feeds in is small (at most a few
//! dozen rows and columns after presolve), so a dense tableau with reduced
//! costs recomputed per iteration is fast enough and easy to audit. Pivoting
//! uses Bland's least-index rule in both phases, which guarantees
//! termination.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Rel {
    Le,
    Eq,
    Ge,
}

/// `maximize objective · x` subject to `rows`, with `nonneg[i]` marking the
/// variables constrained to be ≥ 0 (others are free).
#[derive(Debug, Clone)]
pub(crate) struct Problem {
    pub num_vars: usize,
    pub rows: Vec<(Vec<BigRational>, Rel, BigRational)>,
    pub nonneg: Vec<bool>,
    pub objective: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Outcome {
    Optimal {
        point: Vec<BigRational>,
        value: BigRational,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    matrix: Vec<Vec<BigRational>>, // m × n
    rhs: Vec<BigRational>,         // m, kept ≥ 0
    basis: Vec<usize>,             // basic column per row
    num_cols: usize,
}

impl Tableau {
    /// One Bland iteration for `maximize cost · x`: returns false when no
    /// entering column exists (current basis optimal), true after a pivot.
    /// `None` signals unboundedness.
    fn bland_step(&mut self, cost: &[BigRational]) -> Option<bool> {
        // Reduced costs r_j = c_j − c_B · (column j).
        let mut entering = None;
        for j in 0..self.num_cols {
            if self.basis.contains(&j) {
                continue;
            }
            let mut reduced = cost[j].clone();
            for (i, &bi) in self.basis.iter().enumerate() {
                if !cost[bi].is_zero() && !self.matrix[i][j].is_zero() {
                    reduced -= &cost[bi] * &self.matrix[i][j];
                }
            }
            if reduced.is_positive() {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else {
            return Some(false);
        };

        // Ratio test; among ties pick the row whose basic variable has the
        // least index (Bland's leaving rule).
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..self.matrix.len() {
            if self.matrix[i][e].is_positive() {
                let ratio = &self.rhs[i] / &self.matrix[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (l, _) = leave?;
        self.pivot(l, e);
        Some(true)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        self.basis[row] = col;
        let pivot = self.matrix[row][col].clone();
        for entry in self.matrix[row].iter_mut() {
            *entry /= pivot.clone();
        }
        self.rhs[row] /= pivot.clone();
        for i in 0..self.matrix.len() {
            if i == row || self.matrix[i][col].is_zero() {
                continue;
            }
            let factor = self.matrix[i][col].clone();
            for j in 0..self.num_cols {
                if !self.matrix[row][j].is_zero() {
                    let delta = &factor * &self.matrix[row][j];
                    self.matrix[i][j] -= delta;
                }
            }
            let delta = &factor * &self.rhs[row];
            self.rhs[i] -= delta;
        }
    }

    fn maximize(&mut self, cost: &[BigRational]) -> Option<()> {
        loop {
            match self.bland_step(cost) {
                Some(true) => continue,
                Some(false) => return Some(()),
                None => return None,
            }
        }
    }

    fn objective_value(&self, cost: &[BigRational]) -> BigRational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &bi)| &cost[bi] * &self.rhs[i])
            .sum()
    }
}

pub(crate) fn solve(problem: &Problem) -> Outcome {
    let n = problem.num_vars;
    assert_eq!(problem.nonneg.len(), n);
    assert_eq!(problem.objective.len(), n);

    // Free variables are split as x = u − v with u, v ≥ 0.
    let mut column_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut total = 0usize;
    for i in 0..n {
        if problem.nonneg[i] {
            column_of.push((total, None));
            total += 1;
        } else {
            column_of.push((total, Some(total + 1)));
            total += 2;
        }
    }
    let structural = total;

    let m = problem.rows.len();
    let mut matrix: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    let mut rels: Vec<Rel> = Vec::with_capacity(m);
    for (coeffs, rel, b) in &problem.rows {
        assert_eq!(coeffs.len(), n);
        let mut row = vec![BigRational::zero(); structural];
        for i in 0..n {
            if coeffs[i].is_zero() {
                continue;
            }
            let (u, v) = column_of[i];
            row[u] = coeffs[i].clone();
            if let Some(v) = v {
                row[v] = -coeffs[i].clone();
            }
        }
        let (row, rel, b) = if b.is_negative() {
            // Normalize to rhs ≥ 0.
            let flipped = match rel {
                Rel::Le => Rel::Ge,
                Rel::Ge => Rel::Le,
                Rel::Eq => Rel::Eq,
            };
            (
                row.iter().map(|e| -e.clone()).collect::<Vec<_>>(),
                flipped,
                -b.clone(),
            )
        } else {
            (row, *rel, b.clone())
        };
        matrix.push(row);
        rhs.push(b);
        rels.push(rel);
    }

    // Slack, surplus, and artificial columns.
    let mut num_cols = structural;
    let mut slack_col: Vec<Option<usize>> = vec![None; m];
    for (i, rel) in rels.iter().enumerate() {
        if matches!(rel, Rel::Le | Rel::Ge) {
            slack_col[i] = Some(num_cols);
            num_cols += 1;
        }
    }
    let mut artificial_col: Vec<Option<usize>> = vec![None; m];
    let mut artificial_cols = Vec::new();
    for (i, rel) in rels.iter().enumerate() {
        if matches!(rel, Rel::Eq | Rel::Ge) {
            artificial_col[i] = Some(num_cols);
            artificial_cols.push(num_cols);
            num_cols += 1;
        }
    }

    let mut basis = vec![0usize; m];
    for row in matrix.iter_mut() {
        row.resize(num_cols, BigRational::zero());
    }
    for i in 0..m {
        match rels[i] {
            Rel::Le => {
                let c = slack_col[i].unwrap();
                matrix[i][c] = BigRational::one();
                basis[i] = c;
            }
            Rel::Ge => {
                let c = slack_col[i].unwrap();
                matrix[i][c] = -BigRational::one();
                let a = artificial_col[i].unwrap();
                matrix[i][a] = BigRational::one();
                basis[i] = a;
            }
            Rel::Eq => {
                let a = artificial_col[i].unwrap();
                matrix[i][a] = BigRational::one();
                basis[i] = a;
            }
        }
    }

    let mut tableau = Tableau {
        matrix,
        rhs,
        basis,
        num_cols,
    };

    // Phase 1: drive the artificials to zero.
    if !artificial_cols.is_empty() {
        let mut phase1_cost = vec![BigRational::zero(); num_cols];
        for &c in &artificial_cols {
            phase1_cost[c] = -BigRational::one();
        }
        tableau
            .maximize(&phase1_cost)
            .expect("phase-1 objective is bounded by zero");
        if tableau.objective_value(&phase1_cost).is_negative() {
            return Outcome::Infeasible;
        }
        // Pivot any degenerate basic artificial out, or drop its row if the
        // row has no structural support left.
        let is_artificial = |c: usize| artificial_cols.contains(&c);
        let mut row = 0;
        while row < tableau.matrix.len() {
            if is_artificial(tableau.basis[row]) {
                let col =
                    (0..num_cols).find(|&c| !is_artificial(c) && !tableau.matrix[row][c].is_zero());
                match col {
                    Some(c) => tableau.pivot(row, c),
                    None => {
                        tableau.matrix.remove(row);
                        tableau.rhs.remove(row);
                        tableau.basis.remove(row);
                        continue;
                    }
                }
            }
            row += 1;
        }
        // Freeze the artificial columns at zero for phase 2.
        for row in tableau.matrix.iter_mut() {
            for &c in &artificial_cols {
                row[c] = BigRational::zero();
            }
        }
    }

    // Phase 2.
    let mut cost = vec![BigRational::zero(); num_cols];
    for i in 0..n {
        if problem.objective[i].is_zero() {
            continue;
        }
        let (u, v) = column_of[i];
        cost[u] = problem.objective[i].clone();
        if let Some(v) = v {
            cost[v] = -problem.objective[i].clone();
        }
    }
    if tableau.maximize(&cost).is_none() {
        return Outcome::Unbounded;
    }

    let mut solution = vec![BigRational::zero(); num_cols];
    for (i, &bi) in tableau.basis.iter().enumerate() {
        solution[bi] = tableau.rhs[i].clone();
    }
    let point: Vec<BigRational> = (0..n)
        .map(|i| {
            let (u, v) = column_of[i];
            match v {
                None => solution[u].clone(),
                Some(v) => &solution[u] - &solution[v],
            }
        })
        .collect();
    let value = tableau.objective_value(&cost);
    Outcome::Optimal { point, value }
}
