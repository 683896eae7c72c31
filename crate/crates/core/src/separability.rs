//! Separability of composite states and entanglement witnesses.
//!
//! A normalized state of the tensor ambient space is separable iff it is a
//! convex combination of Kronecker products of party generators. That is one
//! LP over a weight per generator-index tuple. A feasible basis yields the
//! decomposition (at most `Π d_j + 1` terms); an infeasible one yields Farkas
//! multipliers, which fold into a functional that is nonnegative on every
//! product of generators and negative on the state.

use serde::{Deserialize, Serialize};

use crate::composite::{index_tuples, product_generators, product_unit};
use crate::duality::Functional;
use crate::error::{Error, Result};
use crate::linalg::{kron_all, RVec};
use crate::lp::{lp_solve, verify_outcome, LpOutcome, LpProblem};
use crate::rational::Rat;
use crate::space::{hull_lp, membership, StateSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparableTerm {
    #[serde(rename = "p")]
    pub weight: Rat,
    pub factors: Vec<RVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum SeparabilityVerdict {
    Separable { terms: Vec<SeparableTerm> },
    Entangled { witness: Functional, margin: Rat },
}

impl SeparabilityVerdict {
    pub fn is_separable(&self) -> bool {
        matches!(self, SeparabilityVerdict::Separable { .. })
    }

    /// Independent re-check of the certificate against the query.
    pub fn verify(&self, parties: &[StateSpace], state: &RVec) -> Result<bool> {
        match self {
            SeparabilityVerdict::Separable { terms } => verify_decomposition(parties, terms, state),
            SeparabilityVerdict::Entangled { witness, margin } => {
                Ok(
                    verify_witness(parties, witness, state)?
                        && &witness.coords.dot(state) == margin,
                )
            }
        }
    }
}

fn tensor_dim(parties: &[StateSpace]) -> usize {
    parties.iter().map(StateSpace::ambient_dim).product()
}

fn composite_label(parties: &[StateSpace]) -> String {
    parties
        .iter()
        .map(StateSpace::label)
        .collect::<Vec<_>>()
        .join(" ⊗ ")
}

fn check_query(parties: &[StateSpace], state: &RVec) -> Result<()> {
    if parties.is_empty() {
        return Err(Error::Domain("a composite needs at least one party".into()));
    }
    let d = tensor_dim(parties);
    if state.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: state.dim(),
        });
    }
    let norm = product_unit(parties).dot(state);
    if norm != Rat::one() {
        return Err(Error::Normalization(format!(
            "state evaluates to {norm} on the composite unit effect"
        )));
    }
    Ok(())
}

/// The separability LP: one nonnegative weight per tuple of party generator
/// indices, rows `Σ λ_t kron(g_t) = state` followed by `Σ λ_t = 1`.
pub fn separability_lp(parties: &[StateSpace], state: &RVec) -> LpProblem {
    hull_lp(&product_generators(parties), state)
}

pub fn is_separable(parties: &[StateSpace], state: &RVec) -> Result<SeparabilityVerdict> {
    check_query(parties, state)?;
    let lp = separability_lp(parties, state);
    let outcome = lp_solve(&lp);
    verify_outcome(&lp, &outcome)?;
    let verdict = match outcome {
        LpOutcome::Optimal { x, .. } => {
            let counts: Vec<usize> = parties.iter().map(|p| p.generators().len()).collect();
            let terms = index_tuples(&counts)
                .zip(x.iter())
                .filter(|(_, w)| w.is_positive())
                .map(|(t, w)| SeparableTerm {
                    weight: w.clone(),
                    factors: t
                        .iter()
                        .zip(parties)
                        .map(|(&i, p)| p.generators()[i].clone())
                        .collect(),
                })
                .collect();
            SeparabilityVerdict::Separable { terms }
        }
        LpOutcome::Infeasible { farkas } => {
            let d = state.dim();
            let lead = RVec::new(farkas.entries()[..d].to_vec());
            let raw = lead.add_scaled(&farkas[d], &product_unit(parties));
            let value = raw.dot(state);
            if !value.is_negative() {
                return Err(Error::Certificate(
                    "Farkas witness is not negative on the state".into(),
                ));
            }
            let witness = raw.scale(&value.abs().recip());
            SeparabilityVerdict::Entangled {
                margin: witness.dot(state),
                witness: Functional::new(composite_label(parties), witness),
            }
        }
        LpOutcome::Unbounded { .. } => {
            return Err(Error::Certificate(
                "zero-objective LP reported unbounded".into(),
            ))
        }
    };
    if !verdict.verify(parties, state)? {
        return Err(Error::Certificate(
            "separability verdict failed re-verification".into(),
        ));
    }
    Ok(verdict)
}

/// `witness >= 0` on every product of party generators and `< 0` on `state`.
/// Evaluates directly; shares nothing with the LP path.
pub fn verify_witness(parties: &[StateSpace], witness: &Functional, state: &RVec) -> Result<bool> {
    let d = tensor_dim(parties);
    for found in [witness.dim(), state.dim()] {
        if found != d {
            return Err(Error::DimensionMismatch { expected: d, found });
        }
    }
    let counts: Vec<usize> = parties.iter().map(|p| p.generators().len()).collect();
    let nonneg_on_products = index_tuples(&counts).all(|t| {
        let product = kron_all(t.iter().zip(parties).map(|(&i, p)| &p.generators()[i]));
        !witness.coords.dot(&product).is_negative()
    });
    Ok(nonneg_on_products && witness.coords.dot(state).is_negative())
}

fn verify_decomposition(
    parties: &[StateSpace],
    terms: &[SeparableTerm],
    state: &RVec,
) -> Result<bool> {
    if terms.is_empty() || terms.len() > state.dim() + 1 {
        return Ok(false);
    }
    let mut total = Rat::zero();
    let mut rebuilt = RVec::zeros(state.dim());
    for term in terms {
        if term.weight.is_negative() || term.factors.len() != parties.len() {
            return Ok(false);
        }
        for (rho, party) in term.factors.iter().zip(parties) {
            if rho.dim() != party.ambient_dim() || !membership(party, rho)? {
                return Ok(false);
            }
        }
        total += &term.weight;
        rebuilt = rebuilt.add_scaled(&term.weight, &kron_all(&term.factors));
    }
    Ok(total == Rat::one() && &rebuilt == state)
}

/// True iff every candidate point is separable.
pub fn separable_hull_equals(parties: &[StateSpace], candidates: &[RVec]) -> Result<bool> {
    for c in candidates {
        if !is_separable(parties, c)?.is_separable() {
            return Ok(false);
        }
    }
    Ok(true)
}
