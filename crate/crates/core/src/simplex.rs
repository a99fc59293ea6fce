//! Exact primal simplex for the unit-coefficient packing LP shared by the
//! fractional matching program and (through its dual) the fractional vertex
//! cover program:
//!
//! ```text
//!   maximize  sum_j x_j
//!   s.t.      sum_{j : i in col_j} x_j <= 1   for every row i
//!             x >= 0
//! ```
//!
//! Every tableau entry is an exact rational. Pivoting follows Bland's rule
//! (lowest-index entering column; ties in the ratio test broken by the
//! lowest basic variable index), which guarantees termination without any
//! perturbation. The all-slack basis is feasible because the right-hand side
//! is all ones, so no phase-1 is ever needed.

use num_traits::{One, Signed, Zero};

use crate::ratio::Rat;

pub(crate) struct UnitLpSolution {
    /// Optimal objective value.
    pub value: Rat,
    /// Optimal structural variables, one per column.
    pub primal: Vec<Rat>,
    /// Optimal dual multipliers, one per row; these are the reduced costs of
    /// the slack columns and solve the covering dual exactly.
    pub dual: Vec<Rat>,
    pub pivots: u64,
}

pub(crate) fn solve_unit_lp(rows: usize, cols: &[Vec<usize>]) -> UnitLpSolution {
    let m = cols.len();
    let width = m + rows + 1; // structural | slack | rhs
    let rhs = width - 1;

    let mut tableau: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut row = vec![Rat::zero(); width];
            row[m + i] = Rat::one();
            row[rhs] = Rat::one();
            row
        })
        .collect();
    for (j, col) in cols.iter().enumerate() {
        for &i in col {
            debug_assert!(i < rows);
            tableau[i][j] = Rat::one();
        }
    }
    // reduced-cost row z_j - c_j for the maximization; rhs tracks the value
    let mut obj = vec![Rat::zero(); width];
    for cell in obj.iter_mut().take(m) {
        *cell = -Rat::one();
    }

    let mut basis: Vec<usize> = (m..m + rows).collect();
    let mut pivots = 0u64;

    while let Some(enter) = obj[..m + rows].iter().position(|r| r.is_negative()) {
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..rows {
            let a = &tableau[i][enter];
            if !a.is_positive() {
                continue;
            }
            let ratio = &tableau[i][rhs] / a;
            let better = match &best {
                None => true,
                Some(b) => match ratio.cmp(b) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Equal => basis[i] < basis[leave.unwrap()],
                    std::cmp::Ordering::Greater => false,
                },
            };
            if better {
                best = Some(ratio);
                leave = Some(i);
            }
        }
        // Every structural column has at least one +1 entry and slack columns
        // are unit vectors, so the LP is bounded and a pivot row exists.
        let row = leave.expect("packing LP with unit bounds is bounded");

        let pivot_value = tableau[row][enter].clone();
        if !pivot_value.is_one() {
            for cell in tableau[row].iter_mut() {
                if !cell.is_zero() {
                    *cell /= &pivot_value;
                }
            }
        }
        let pivot_row = std::mem::take(&mut tableau[row]);
        for (i, r) in tableau.iter_mut().enumerate() {
            if i != row {
                eliminate(r, &pivot_row, enter);
            }
        }
        eliminate(&mut obj, &pivot_row, enter);
        tableau[row] = pivot_row;
        basis[row] = enter;
        pivots += 1;
    }

    let mut primal = vec![Rat::zero(); m];
    for (i, &b) in basis.iter().enumerate() {
        if b < m {
            primal[b] = tableau[i][rhs].clone();
        }
    }
    let dual: Vec<Rat> = (0..rows).map(|i| obj[m + i].clone()).collect();
    UnitLpSolution { value: obj[rhs].clone(), primal, dual, pivots }
}

fn eliminate(row: &mut [Rat], pivot_row: &[Rat], col: usize) {
    if row[col].is_zero() {
        return;
    }
    let factor = row[col].clone();
    for (cell, p) in row.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *cell -= &factor * p;
        }
    }
    debug_assert!(row[col].is_zero());
}
