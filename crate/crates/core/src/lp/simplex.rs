//! Two-phase dense tableau simplex over exact rationals, Bland's rule.

use crate::linalg::RVec;
use crate::rational::Rat;

use super::{LpOutcome, LpProblem};

/// Standard form: every column nonnegative, every row an equality with a
/// nonnegative right-hand side. Column layout is fixed so pivoting order is
/// reproducible: positive parts of all variables, negative parts of free
/// variables, one slack per inequality row, one artificial per row.
struct StandardForm {
    num_vars: usize,
    /// `neg_col[j]` is the column of `-x_j` for a free variable `j`.
    neg_col: Vec<Option<usize>>,
    slack_start: usize,
    art_start: usize,
    ncols: usize,
    /// Row sign flips applied to make the right-hand side nonnegative.
    sigma: Vec<Rat>,
    cost: Vec<Rat>,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    rhs: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let lead = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &lead;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rat], j: usize) -> Rat {
        let mut d = cost[j].clone();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if !cost[b].is_zero() && !row[j].is_zero() {
                d -= &cost[b] * &row[j];
            }
        }
        d
    }

    /// Maximizes `cost` letting only columns `< allowed` enter. Returns the
    /// entering column when it admits no leaving row (unbounded direction).
    fn optimize(&mut self, cost: &[Rat], allowed: usize) -> Option<usize> {
        loop {
            let enter = (0..allowed)
                .find(|&j| !self.basis.contains(&j) && self.reduced_cost(cost, j).is_positive())?;
            let mut leave: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Some(enter),
            }
        }
    }

    fn value_of(&self, col: usize) -> Rat {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map_or_else(Rat::zero, |i| self.rows[i][self.rhs].clone())
    }

    /// `c_B B^{-1}`, read from the artificial block (which started as the
    /// identity).
    fn row_prices(&self, cost: &[Rat], art_start: usize) -> Vec<Rat> {
        (0..self.rows.len())
            .map(|i| {
                self.rows
                    .iter()
                    .zip(&self.basis)
                    .filter(|(_, &b)| !cost[b].is_zero())
                    .map(|(row, &b)| &cost[b] * &row[art_start + i])
                    .sum()
            })
            .collect()
    }
}

impl StandardForm {
    fn build(p: &LpProblem) -> (StandardForm, Tableau) {
        let n = p.num_vars();
        let neq = p.eq_constraints.len();
        let m = p.num_rows();
        let mut neg_col = vec![None; n];
        let mut next = n;
        for (j, slot) in neg_col.iter_mut().enumerate() {
            if !p.nonneg_vars.contains(&j) {
                *slot = Some(next);
                next += 1;
            }
        }
        let slack_start = next;
        let art_start = slack_start + p.ineq_constraints.len();
        let ncols = art_start + m;

        let mut sigma = Vec::with_capacity(m);
        let mut rows = Vec::with_capacity(m);
        for (i, c) in p.rows().enumerate() {
            let mut row = vec![Rat::zero(); ncols + 1];
            for j in 0..n {
                row[j] = c.coeffs[j].clone();
                if let Some(nc) = neg_col[j] {
                    row[nc] = -&c.coeffs[j];
                }
            }
            if i >= neq {
                row[slack_start + i - neq] = Rat::one();
            }
            row[ncols] = c.rhs.clone();
            let s = if c.rhs.is_negative() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
                Rat::from(-1)
            } else {
                Rat::one()
            };
            row[art_start + i] = Rat::one();
            sigma.push(s);
            rows.push(row);
        }

        let mut cost = vec![Rat::zero(); ncols];
        for j in 0..n {
            cost[j] = p.objective[j].clone();
            if let Some(nc) = neg_col[j] {
                cost[nc] = -&p.objective[j];
            }
        }

        let tableau = Tableau {
            rows,
            basis: (art_start..ncols).collect(),
            rhs: ncols,
        };
        let form = StandardForm {
            num_vars: n,
            neg_col,
            slack_start,
            art_start,
            ncols,
            sigma,
            cost,
        };
        (form, tableau)
    }

    fn original(&self, value: impl Fn(usize) -> Rat) -> RVec {
        RVec::new(
            (0..self.num_vars)
                .map(|j| match self.neg_col[j] {
                    Some(nc) => value(j) - value(nc),
                    None => value(j),
                })
                .collect(),
        )
    }

    fn unsign(&self, prices: Vec<Rat>) -> RVec {
        RVec::new(
            prices
                .into_iter()
                .zip(&self.sigma)
                .map(|(y, s)| y * s)
                .collect(),
        )
    }
}

/// Solves `p` exactly. Deterministic: Bland's rule with the fixed column
/// layout of the standard form.
pub fn lp_solve(p: &LpProblem) -> LpOutcome {
    p.check_dims().expect("malformed LP problem");
    let (form, mut tab) = StandardForm::build(p);
    let _ = form.slack_start;

    // phase one: maximize -Σ artificials
    let mut phase_one = vec![Rat::zero(); form.ncols];
    for c in phase_one[form.art_start..].iter_mut() {
        *c = Rat::from(-1);
    }
    let stuck = tab.optimize(&phase_one, form.ncols);
    debug_assert!(stuck.is_none(), "phase one is bounded");
    let infeasibility: Rat = (form.art_start..form.ncols).map(|c| tab.value_of(c)).sum();
    if infeasibility.is_positive() {
        // prices of the minimization form are the negated phase-one prices;
        // the Farkas vector is their negation again
        let farkas = form.unsign(tab.row_prices(&phase_one, form.art_start));
        return LpOutcome::Infeasible { farkas };
    }

    // drive zero-level artificials out of the basis where possible; rows
    // that keep one are linearly redundant
    for i in 0..tab.rows.len() {
        if tab.basis[i] >= form.art_start {
            if let Some(j) = (0..form.art_start).find(|&j| !tab.rows[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    let value_at = |tab: &Tableau| form.original(|c| tab.value_of(c));
    match tab.optimize(&form.cost, form.art_start) {
        Some(enter) => {
            let mut dir = vec![Rat::zero(); form.ncols];
            dir[enter] = Rat::one();
            for (row, &b) in tab.rows.iter().zip(&tab.basis) {
                dir[b] = -&row[enter];
            }
            LpOutcome::Unbounded {
                x: value_at(&tab),
                ray: form.original(|c| dir[c].clone()),
            }
        }
        None => {
            let x = value_at(&tab);
            let value = p.objective.dot(&x);
            let dual = form.unsign(tab.row_prices(&form.cost, form.art_start));
            LpOutcome::Optimal { x, value, dual }
        }
    }
}
