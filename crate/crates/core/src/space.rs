//! Single-party convex state spaces given by rational generator points.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::duality::Functional;
use crate::error::{Error, Result};
use crate::linalg::{null_space, sign, span_dim, RMat, RVec};
use crate::lp::{lp_solve, verify_outcome, LpOutcome, LpProblem};
use crate::rational::Rat;

/// The convex hull of `generators`, sitting on the slice `⟨unit_effect, x⟩ = 1`.
///
/// Invariants, checked on construction: every generator has the ambient
/// dimension and evaluates to 1 on the unit effect, and the generators span
/// the ambient space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStateSpace", into = "RawStateSpace")]
pub struct StateSpace {
    label: String,
    ambient_dim: usize,
    generators: Vec<RVec>,
    unit_effect: RVec,
}

/// Wire shape of a state space, before validation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawStateSpace {
    pub label: String,
    pub ambient_dim: usize,
    pub generators: Vec<RVec>,
    pub unit_effect: RVec,
}

impl TryFrom<RawStateSpace> for StateSpace {
    type Error = Error;

    fn try_from(raw: RawStateSpace) -> Result<StateSpace> {
        if let Some(g) = raw.generators.first() {
            if g.dim() != raw.ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: raw.ambient_dim,
                    found: g.dim(),
                });
            }
        }
        make_state_space(raw.label, raw.generators, raw.unit_effect)
    }
}

impl From<StateSpace> for RawStateSpace {
    fn from(s: StateSpace) -> RawStateSpace {
        RawStateSpace {
            label: s.label,
            ambient_dim: s.ambient_dim,
            generators: s.generators,
            unit_effect: s.unit_effect,
        }
    }
}

fn check_shape(generators: &[RVec], unit_effect: &RVec) -> Result<usize> {
    let Some(first) = generators.first() else {
        return Err(Error::Domain(
            "a state space needs at least one generator".into(),
        ));
    };
    let d = first.dim();
    for g in generators.iter().chain(std::iter::once(unit_effect)) {
        if g.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: g.dim(),
            });
        }
    }
    if unit_effect.is_zero() {
        return Err(Error::Normalization("unit effect is zero".into()));
    }
    for (i, g) in generators.iter().enumerate() {
        let v = unit_effect.dot(g);
        if v != Rat::one() {
            return Err(Error::Normalization(format!(
                "generator {i} evaluates to {v} on the unit effect"
            )));
        }
    }
    Ok(d)
}

pub fn make_state_space(
    label: impl Into<String>,
    generators: Vec<RVec>,
    unit_effect: RVec,
) -> Result<StateSpace> {
    let d = check_shape(&generators, &unit_effect)?;
    let found = span_dim(&generators)?;
    if found != d {
        return Err(Error::DegenerateSpan { expected: d, found });
    }
    Ok(StateSpace {
        label: label.into(),
        ambient_dim: d,
        generators,
        unit_effect,
    })
}

impl StateSpace {
    /// Skips the spanning check. Used for the juxtaposition realization,
    /// whose generators only span an affine-codimension `n - 1` subspace of
    /// the direct sum.
    pub(crate) fn without_span_check(
        label: impl Into<String>,
        generators: Vec<RVec>,
        unit_effect: RVec,
    ) -> Result<StateSpace> {
        let d = check_shape(&generators, &unit_effect)?;
        Ok(StateSpace {
            label: label.into(),
            ambient_dim: d,
            generators,
            unit_effect,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[RVec] {
        &self.generators
    }

    pub fn unit_effect(&self) -> &RVec {
        &self.unit_effect
    }

    pub fn unit_functional(&self) -> Functional {
        Functional::new(self.label.clone(), self.unit_effect.clone())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> StateSpace {
        self.label = label.into();
        self
    }
}

/// The probability simplex on `n` outcomes.
pub fn classical_simplex(n: usize) -> Result<StateSpace> {
    if n == 0 {
        return Err(Error::Domain("simplex needs at least one outcome".into()));
    }
    let generators = (0..n).map(|i| RVec::unit(n, i)).collect();
    let label = match n {
        2 => "bit".to_string(),
        3 => "trit".to_string(),
        _ => format!("simplex{n}"),
    };
    make_state_space(label, generators, RVec::new(vec![Rat::one(); n]))
}

/// The square bit: vertices `(±1, ±1, 1)` with unit effect `(0, 0, 1)`.
pub fn gbit_square() -> StateSpace {
    let generators = [[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]]
        .iter()
        .map(|g| RVec::from_ints(g))
        .collect();
    make_state_space("gbit", generators, RVec::from_ints(&[0, 0, 1]))
        .expect("square bit is a valid state space")
}

/// LP deciding whether `p` is a convex combination of `points`: variables are
/// the weights, constrained by `Σ w_i points_i = p`, `Σ w_i = 1`, `w >= 0`.
pub fn hull_lp(points: &[RVec], p: &RVec) -> LpProblem {
    let m = points.len();
    let mut lp = LpProblem::new(m).all_nonneg();
    for k in 0..p.dim() {
        let row = RVec::new(points.iter().map(|g| g[k].clone()).collect());
        lp = lp.eq(row, p[k].clone());
    }
    lp.eq(RVec::new(vec![Rat::one(); m]), Rat::one())
}

/// Weights expressing `p` as a convex combination of `points`, or `None`.
pub(crate) fn hull_weights(points: &[RVec], p: &RVec) -> Result<Option<RVec>> {
    let lp = hull_lp(points, p);
    let out = lp_solve(&lp);
    verify_outcome(&lp, &out)?;
    Ok(match out {
        LpOutcome::Optimal { x, .. } => Some(x),
        LpOutcome::Infeasible { .. } => None,
        LpOutcome::Unbounded { .. } => {
            return Err(Error::Certificate(
                "zero-objective LP reported unbounded".into(),
            ))
        }
    })
}

pub fn membership(s: &StateSpace, p: &RVec) -> Result<bool> {
    if p.dim() != s.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: s.ambient_dim,
            found: p.dim(),
        });
    }
    Ok(hull_weights(&s.generators, p)?.is_some())
}

/// Keeps exactly the extreme points: a generator survives iff it is not in
/// the hull of the remaining ones. Duplicates collapse to their first
/// occurrence.
pub fn remove_redundant_generators(s: &StateSpace) -> Result<StateSpace> {
    let mut seen = BTreeSet::new();
    let mut kept: Vec<RVec> = s
        .generators
        .iter()
        .filter(|g| seen.insert((*g).clone()))
        .cloned()
        .collect();
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<RVec> = kept
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, g)| g.clone())
            .collect();
        if !others.is_empty() && hull_weights(&others, &kept[i])?.is_some() {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(StateSpace {
        generators: kept,
        ..s.clone()
    })
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Extreme rays of the cone of functionals nonnegative on every generator.
///
/// Each candidate is the common annihilator of a `(d-1)`-subset of
/// generators with rank `d-1`, oriented to be nonnegative on the rest and
/// dropped if no orientation works. Rays are scaled to primitive integer
/// vectors and listed in order of first discovery.
pub fn effect_cone_rays(s: &StateSpace) -> Result<Vec<Functional>> {
    let d = s.ambient_dim;
    let gens = &s.generators;
    let mut found: Vec<RVec> = Vec::new();
    let mut seen = BTreeSet::new();
    for subset in subsets(gens.len(), d - 1) {
        let rows: Vec<RVec> = subset.iter().map(|&i| gens[i].clone()).collect();
        let m = RMat::from_rows(&rows, d)?;
        let kernel = null_space(&m);
        if kernel.len() != 1 {
            continue;
        }
        let f = &kernel[0];
        let signs: BTreeSet<i8> = gens.iter().map(|g| sign(&f.dot(g))).collect();
        let ray = if !signs.contains(&-1) {
            f.primitive()
        } else if !signs.contains(&1) {
            f.neg().primitive()
        } else {
            continue;
        };
        if seen.insert(ray.clone()) {
            found.push(ray);
        }
    }
    Ok(found
        .into_iter()
        .map(|r| Functional::new(s.label.clone(), r))
        .collect())
}
