//! Vertex enumeration of bounded polyhedra by the double-description method.
//!
//! The polytope `{x : A_eq x = b_eq, A x >= b}` is homogenized to the cone
//! `{(t, x) : t >= 0, A_eq x - t b_eq = 0, A x - t b >= 0}` in one more
//! dimension. Starting from the whole space (all of it lineality), the
//! constraints are intersected one at a time: equalities first, then
//! `t >= 0`, then the inequalities in input order. Two extreme rays on
//! opposite sides of a new hyperplane are adjacent when the constraints tight
//! on both have rank `n - lineality - 2`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rank, sign, RMat, RVec};
use crate::rational::Rat;

use super::{lp_solve, verify_outcome, LinearConstraint, LpOutcome, LpProblem};

/// Polyhedron `{x : ⟨a, x⟩ = b for equalities, ⟨a, x⟩ >= b for inequalities}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRep {
    pub dim: usize,
    pub equalities: Vec<LinearConstraint>,
    pub inequalities: Vec<LinearConstraint>,
}

impl HRep {
    pub fn new(dim: usize) -> HRep {
        HRep {
            dim,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn check_dims(&self) -> Result<()> {
        for c in self.equalities.iter().chain(&self.inequalities) {
            if c.coeffs.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: c.coeffs.dim(),
                });
            }
        }
        Ok(())
    }

    /// Exact membership test.
    pub fn contains(&self, x: &RVec) -> bool {
        self.equalities.iter().all(|c| c.coeffs.dot(x) == c.rhs)
            && self.inequalities.iter().all(|c| c.coeffs.dot(x) >= c.rhs)
    }

    /// The same constraints as an LP over free variables.
    pub fn to_lp(&self) -> LpProblem {
        let mut p = LpProblem::new(self.dim);
        for c in &self.equalities {
            p = p.eq(c.coeffs.clone(), c.rhs.clone());
        }
        for c in &self.inequalities {
            p = p.ge(c.coeffs.clone(), c.rhs.clone());
        }
        p
    }
}

fn solve_checked(p: &LpProblem) -> Result<LpOutcome> {
    let out = lp_solve(p);
    verify_outcome(p, &out)?;
    Ok(out)
}

/// Every vertex of the polytope, deduplicated and sorted lexicographically by
/// coordinate strings. An empty polytope has no vertices; an unbounded one is
/// an error.
pub fn vertex_enumerate(h: &HRep) -> Result<Vec<RVec>> {
    h.check_dims()?;
    let base = h.to_lp();
    if !solve_checked(&base)?.is_feasible() {
        return Ok(Vec::new());
    }
    for i in 0..h.dim {
        for dir in [1, -1] {
            let mut obj = RVec::zeros(h.dim);
            obj[i] = Rat::from(dir);
            if let LpOutcome::Unbounded { .. } = solve_checked(&base.clone().maximize(obj))? {
                return Err(Error::UnboundedPolyhedron);
            }
        }
    }

    let homogenize = |c: &LinearConstraint| {
        let mut v = Vec::with_capacity(h.dim + 1);
        v.push(-&c.rhs);
        v.extend(c.coeffs.iter().cloned());
        RVec::new(v)
    };
    let mut cone = Cone::whole_space(h.dim + 1);
    for c in &h.equalities {
        cone.intersect(homogenize(c), true);
    }
    cone.intersect(RVec::unit(h.dim + 1, 0), false);
    for c in &h.inequalities {
        cone.intersect(homogenize(c), false);
    }

    if !cone.lineality.is_empty() {
        return Err(Error::UnboundedPolyhedron);
    }
    let mut vertices = BTreeSet::new();
    for ray in &cone.rays {
        let ray = &ray.dir;
        let t = ray[0].clone();
        if !t.is_positive() {
            return Err(Error::UnboundedPolyhedron);
        }
        let x = RVec::new(ray.entries()[1..].iter().map(|e| e / &t).collect());
        vertices.insert((x.to_strings(), x));
    }
    Ok(vertices.into_iter().map(|(_, x)| x).collect())
}

struct Ray {
    dir: RVec,
    /// Indices of processed constraints tight on this ray.
    tight: BTreeSet<usize>,
}

struct Cone {
    dim: usize,
    lineality: Vec<RVec>,
    rays: Vec<Ray>,
    constraints: Vec<RVec>,
}

impl Cone {
    fn whole_space(dim: usize) -> Cone {
        Cone {
            dim,
            lineality: (0..dim).map(|i| RVec::unit(dim, i)).collect(),
            rays: Vec::new(),
            constraints: Vec::new(),
        }
    }

    fn intersect(&mut self, h: RVec, equality: bool) {
        let idx = self.constraints.len();
        self.constraints.push(h.clone());

        if let Some(pos) = self.lineality.iter().position(|l| !h.dot(l).is_zero()) {
            let mut l = self.lineality.remove(pos);
            let mut hl = h.dot(&l);
            if hl.is_negative() {
                l = l.neg();
                hl = -hl;
            }
            for other in self.lineality.iter_mut() {
                let f = h.dot(other) / &hl;
                *other = other.add_scaled(&-f, &l).primitive();
            }
            for ray in self.rays.iter_mut() {
                let f = h.dot(&ray.dir) / &hl;
                ray.dir = ray.dir.add_scaled(&-f, &l).primitive();
                ray.tight.insert(idx);
            }
            if !equality {
                // tight on everything processed so far except `h` itself
                self.rays.push(Ray {
                    dir: l.primitive(),
                    tight: (0..idx).collect(),
                });
            }
            return;
        }

        let values: Vec<Rat> = self.rays.iter().map(|r| h.dot(&r.dir)).collect();
        let signs: Vec<i8> = values.iter().map(sign).collect();
        let needed = self.dim - self.lineality.len() - 2;
        let mut next = Vec::new();
        for (i, plus) in self.rays.iter().enumerate() {
            if signs[i] <= 0 {
                continue;
            }
            for (k, minus) in self.rays.iter().enumerate() {
                if signs[k] >= 0 {
                    continue;
                }
                let common: BTreeSet<usize> =
                    plus.tight.intersection(&minus.tight).copied().collect();
                if common.len() < needed || !self.has_rank(&common, needed) {
                    continue;
                }
                let dir = minus
                    .dir
                    .scale(&values[i])
                    .add_scaled(&-&values[k], &plus.dir)
                    .primitive();
                let mut tight = common;
                tight.insert(idx);
                next.push(Ray { dir, tight });
            }
        }
        let old = std::mem::take(&mut self.rays);
        let mut kept: Vec<Ray> = Vec::new();
        for (mut ray, s) in old.into_iter().zip(signs) {
            match s {
                0 => {
                    ray.tight.insert(idx);
                    kept.push(ray);
                }
                1 if !equality => kept.push(ray),
                _ => {}
            }
        }
        kept.extend(next);
        self.rays = kept;
    }

    fn has_rank(&self, rows: &BTreeSet<usize>, needed: usize) -> bool {
        let rows: Vec<RVec> = rows.iter().map(|&i| self.constraints[i].clone()).collect();
        let m = RMat::from_rows(&rows, self.dim).expect("constraint dims are uniform");
        rank(&m) == needed
    }
}
