//! Exact rational linear programming and vertex enumeration.
//!
//! [`lp_solve`] runs a two-phase dense-tableau simplex with Bland's rule. Every
//! outcome carries a certificate that [`verify_outcome`] checks by plain
//! substitution, without touching solver state:
//!
//! * `Optimal`: a feasible point plus dual multipliers whose bound matches
//!   the objective value;
//! * `Infeasible`: Farkas multipliers (one per constraint row, equalities
//!   first) that combine the rows into `0 <= negative`;
//! * `Unbounded`: a feasible point and an improving recession direction.

mod dd;
mod simplex;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RVec;
use crate::rational::Rat;

pub use dd::{vertex_enumerate, HRep};
pub use simplex::lp_solve;

/// `⟨coeffs, x⟩ (relation) rhs`; the relation is fixed by the container.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearConstraint {
    pub coeffs: RVec,
    pub rhs: Rat,
}

impl LinearConstraint {
    pub fn new(coeffs: RVec, rhs: Rat) -> LinearConstraint {
        LinearConstraint { coeffs, rhs }
    }
}

/// Maximize `⟨objective, x⟩` subject to equalities, `≤` inequalities and
/// sign restrictions on the listed variables; all other variables are free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: RVec,
    pub eq_constraints: Vec<LinearConstraint>,
    pub ineq_constraints: Vec<LinearConstraint>,
    pub nonneg_vars: BTreeSet<usize>,
}

impl LpProblem {
    /// A problem over `num_vars` free variables with zero objective.
    pub fn new(num_vars: usize) -> LpProblem {
        LpProblem {
            objective: RVec::zeros(num_vars),
            eq_constraints: Vec::new(),
            ineq_constraints: Vec::new(),
            nonneg_vars: BTreeSet::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.dim()
    }

    pub fn maximize(mut self, objective: RVec) -> Self {
        assert_eq!(objective.dim(), self.num_vars());
        self.objective = objective;
        self
    }

    pub fn eq(mut self, coeffs: RVec, rhs: Rat) -> Self {
        assert_eq!(coeffs.dim(), self.num_vars());
        self.eq_constraints.push(LinearConstraint::new(coeffs, rhs));
        self
    }

    pub fn le(mut self, coeffs: RVec, rhs: Rat) -> Self {
        assert_eq!(coeffs.dim(), self.num_vars());
        self.ineq_constraints
            .push(LinearConstraint::new(coeffs, rhs));
        self
    }

    pub fn ge(self, coeffs: RVec, rhs: Rat) -> Self {
        self.le(coeffs.neg(), -rhs)
    }

    pub fn nonneg(mut self, var: usize) -> Self {
        assert!(var < self.num_vars());
        self.nonneg_vars.insert(var);
        self
    }

    pub fn all_nonneg(mut self) -> Self {
        self.nonneg_vars = (0..self.num_vars()).collect();
        self
    }

    pub fn num_rows(&self) -> usize {
        self.eq_constraints.len() + self.ineq_constraints.len()
    }

    /// Constraint rows in certificate order: equalities, then inequalities.
    pub(crate) fn rows(&self) -> impl Iterator<Item = &LinearConstraint> {
        self.eq_constraints.iter().chain(&self.ineq_constraints)
    }

    fn check_dims(&self) -> Result<()> {
        let n = self.num_vars();
        for c in self.rows() {
            if c.coeffs.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.coeffs.dim(),
                });
            }
        }
        if let Some(&v) = self.nonneg_vars.iter().next_back() {
            if v >= n {
                return Err(Error::Domain(format!(
                    "sign restriction on missing variable {v}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// `dual` has one entry per constraint row (equalities first).
    Optimal {
        x: RVec,
        value: Rat,
        dual: RVec,
    },
    Infeasible {
        farkas: RVec,
    },
    Unbounded {
        x: RVec,
        ray: RVec,
    },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible { .. })
    }

    pub fn status(&self) -> &'static str {
        match self {
            LpOutcome::Optimal { .. } => "optimal",
            LpOutcome::Infeasible { .. } => "infeasible",
            LpOutcome::Unbounded { .. } => "unbounded",
        }
    }
}

/// Feasibility of a constraint system: `lp_solve` with a zero objective, so
/// only phase one does any work.
pub fn feasibility(
    num_vars: usize,
    eqs: Vec<LinearConstraint>,
    ineqs: Vec<LinearConstraint>,
    nonneg: BTreeSet<usize>,
) -> LpOutcome {
    lp_solve(&LpProblem {
        objective: RVec::zeros(num_vars),
        eq_constraints: eqs,
        ineq_constraints: ineqs,
        nonneg_vars: nonneg,
    })
}

fn is_primal_feasible(p: &LpProblem, x: &RVec) -> std::result::Result<(), String> {
    if x.dim() != p.num_vars() {
        return Err(format!(
            "point has dimension {}, expected {}",
            x.dim(),
            p.num_vars()
        ));
    }
    for (i, c) in p.eq_constraints.iter().enumerate() {
        if c.coeffs.dot(x) != c.rhs {
            return Err(format!("equality row {i} violated"));
        }
    }
    for (i, c) in p.ineq_constraints.iter().enumerate() {
        if c.coeffs.dot(x) > c.rhs {
            return Err(format!("inequality row {i} violated"));
        }
    }
    for &v in &p.nonneg_vars {
        if x[v].is_negative() {
            return Err(format!("variable {v} is negative"));
        }
    }
    Ok(())
}

/// Row multipliers combined into `Σ y_i a_i`, checked against the sign
/// pattern of the variables: `>= 0` on sign-restricted ones, `= 0` on free
/// ones. `floor` is the required lower bound per variable (zero for Farkas,
/// the objective for duals).
fn check_combination(p: &LpProblem, y: &RVec, floor: &RVec) -> std::result::Result<(), String> {
    if y.dim() != p.num_rows() {
        return Err(format!("{} multipliers for {} rows", y.dim(), p.num_rows()));
    }
    let neq = p.eq_constraints.len();
    if let Some(i) = (neq..p.num_rows()).find(|&i| y[i].is_negative()) {
        return Err(format!("negative multiplier on inequality row {}", i - neq));
    }
    let mut combo = RVec::zeros(p.num_vars());
    for (yi, c) in y.iter().zip(p.rows()) {
        if !yi.is_zero() {
            combo = combo.add_scaled(yi, &c.coeffs);
        }
    }
    for j in 0..p.num_vars() {
        let ok = if p.nonneg_vars.contains(&j) {
            combo[j] >= floor[j]
        } else {
            combo[j] == floor[j]
        };
        if !ok {
            return Err(format!(
                "combined coefficient of variable {j} has the wrong sign"
            ));
        }
    }
    Ok(())
}

fn combined_rhs(p: &LpProblem, y: &RVec) -> Rat {
    y.iter().zip(p.rows()).map(|(yi, c)| yi * &c.rhs).sum()
}

/// Re-checks an outcome against its problem by exact substitution.
pub fn verify_outcome(p: &LpProblem, outcome: &LpOutcome) -> Result<()> {
    p.check_dims()?;
    let fail = |msg: String| Error::Certificate(format!("{}: {msg}", outcome.status()));
    match outcome {
        LpOutcome::Optimal { x, value, dual } => {
            is_primal_feasible(p, x).map_err(fail)?;
            if &p.objective.dot(x) != value {
                return Err(fail("objective value does not match the point".into()));
            }
            check_combination(p, dual, &p.objective).map_err(fail)?;
            if &combined_rhs(p, dual) != value {
                return Err(fail("dual bound differs from the objective value".into()));
            }
        }
        LpOutcome::Infeasible { farkas } => {
            check_combination(p, farkas, &RVec::zeros(p.num_vars())).map_err(fail)?;
            if !combined_rhs(p, farkas).is_negative() {
                return Err(fail("combined right-hand side is not negative".into()));
            }
        }
        LpOutcome::Unbounded { x, ray } => {
            is_primal_feasible(p, x).map_err(fail)?;
            if ray.dim() != p.num_vars() {
                return Err(fail("ray has the wrong dimension".into()));
            }
            if p.eq_constraints
                .iter()
                .any(|c| !c.coeffs.dot(ray).is_zero())
                || p.ineq_constraints
                    .iter()
                    .any(|c| c.coeffs.dot(ray).is_positive())
                || p.nonneg_vars.iter().any(|&v| ray[v].is_negative())
            {
                return Err(fail("ray leaves the feasible region".into()));
            }
            if !p.objective.dot(ray).is_positive() {
                return Err(fail("ray does not improve the objective".into()));
            }
        }
    }
    Ok(())
}
