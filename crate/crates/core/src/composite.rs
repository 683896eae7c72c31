//! Composites of party state spaces.
//!
//! Three constructions are offered over the same ordered party list:
//!
//! * **juxtaposition**: the Cartesian product with component-wise mixing,
//!   realized by concatenating party coordinates (the direct sum). Dual tuples
//!   act additively, so a tuple of functionals only vanishes on product
//!   states when every member does.
//! * **minimal tensor**: the hull of all Kronecker products of party
//!   generators, i.e. exactly the separable states.
//! * **maximal tensor**: every normalized point that is nonnegative on all
//!   products of party effect-cone rays, kept as an H-representation with its
//!   vertices enumerated on demand.
//!
//! In both tensor modes product states embed by [`kron_all`] and tuples of
//! party functionals become *simple* functionals, whose value on a product
//! state is the product of the party values. The simple functionals built
//! from dual-basis tuples form a basis of their span `W`, which is how the
//! identification of `W` with the tensor product of party duals is checked:
//! as an exact rank.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::duality::{dual_basis, evaluate, Functional};
use crate::error::{Error, Result};
use crate::linalg::{kron_all, rank, solve_linear, RMat, RVec};
use crate::lp::{vertex_enumerate, HRep, LinearConstraint};
use crate::rational::Rat;
use crate::space::{effect_cone_rays, make_state_space, membership, StateSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "juxtapose")]
    Juxtaposition,
    #[serde(rename = "min")]
    MinTensor,
    #[serde(rename = "max")]
    MaxTensor,
}

impl Mode {
    pub fn is_tensor(self) -> bool {
        !matches!(self, Mode::Juxtaposition)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Juxtaposition => "juxtapose",
            Mode::MinTensor => "min",
            Mode::MaxTensor => "max",
        })
    }
}

#[derive(Clone, Debug)]
enum Realization {
    Generated(StateSpace),
    Constrained {
        hrep: HRep,
        vrep: OnceLock<StateSpace>,
    },
}

#[derive(Clone, Debug)]
pub struct Composite {
    parties: Vec<StateSpace>,
    mode: Mode,
    realization: Realization,
}

/// Mixed-radix index tuples over `dims`, first index slowest.
pub fn index_tuples(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |mut flat| {
        let mut t = vec![0; dims.len()];
        for (slot, &d) in t.iter_mut().zip(dims).rev() {
            *slot = flat % d;
            flat /= d;
        }
        t
    })
}

fn party_label(parties: &[StateSpace], sep: &str) -> String {
    parties
        .iter()
        .map(StateSpace::label)
        .collect::<Vec<_>>()
        .join(sep)
}

fn require_parties(parties: &[StateSpace]) -> Result<()> {
    if parties.is_empty() {
        return Err(Error::Domain("a composite needs at least one party".into()));
    }
    Ok(())
}

/// Kronecker products of party generators, one per generator-index tuple.
pub fn product_generators(parties: &[StateSpace]) -> Vec<RVec> {
    let counts: Vec<usize> = parties.iter().map(|p| p.generators().len()).collect();
    index_tuples(&counts)
        .map(|t| kron_all(t.iter().zip(parties).map(|(&i, p)| &p.generators()[i])))
        .collect()
}

/// Kronecker product of the party unit effects.
pub fn product_unit(parties: &[StateSpace]) -> RVec {
    kron_all(parties.iter().map(StateSpace::unit_effect))
}

pub fn juxtapose(parties: Vec<StateSpace>) -> Result<Composite> {
    require_parties(&parties)?;
    let counts: Vec<usize> = parties.iter().map(|p| p.generators().len()).collect();
    let generators = index_tuples(&counts)
        .map(|t| {
            let blocks: Vec<&RVec> = t
                .iter()
                .zip(&parties)
                .map(|(&i, p)| &p.generators()[i])
                .collect();
            RVec::concat(&blocks)
        })
        .collect();
    let units: Vec<&RVec> = parties.iter().map(StateSpace::unit_effect).collect();
    let unit = RVec::concat(&units).scale(&Rat::new(1, parties.len() as i64));
    let space = StateSpace::without_span_check(party_label(&parties, " ⊕ "), generators, unit)?;
    Ok(Composite {
        parties,
        mode: Mode::Juxtaposition,
        realization: Realization::Generated(space),
    })
}

pub fn min_tensor(parties: Vec<StateSpace>) -> Result<Composite> {
    require_parties(&parties)?;
    let space = make_state_space(
        party_label(&parties, " ⊗ "),
        product_generators(&parties),
        product_unit(&parties),
    )?;
    Ok(Composite {
        parties,
        mode: Mode::MinTensor,
        realization: Realization::Generated(space),
    })
}

pub fn max_tensor(parties: Vec<StateSpace>) -> Result<Composite> {
    require_parties(&parties)?;
    let rays: Vec<Vec<Functional>> = parties
        .iter()
        .map(effect_cone_rays)
        .collect::<Result<_>>()?;
    let counts: Vec<usize> = rays.iter().map(Vec::len).collect();
    let unit = product_unit(&parties);
    let mut hrep = HRep::new(unit.dim());
    hrep.equalities
        .push(LinearConstraint::new(unit, Rat::one()));
    for t in index_tuples(&counts) {
        let coeffs = kron_all(t.iter().zip(&rays).map(|(&i, r)| &r[i].coords));
        hrep.inequalities
            .push(LinearConstraint::new(coeffs, Rat::zero()));
    }
    Ok(Composite {
        parties,
        mode: Mode::MaxTensor,
        realization: Realization::Constrained {
            hrep,
            vrep: OnceLock::new(),
        },
    })
}

/// Builds the composite of the requested mode.
pub fn compose(mode: Mode, parties: Vec<StateSpace>) -> Result<Composite> {
    match mode {
        Mode::Juxtaposition => juxtapose(parties),
        Mode::MinTensor => min_tensor(parties),
        Mode::MaxTensor => max_tensor(parties),
    }
}

impl Composite {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn parties(&self) -> &[StateSpace] {
        &self.parties
    }

    pub fn label(&self) -> String {
        match self.mode {
            Mode::Juxtaposition => party_label(&self.parties, " ⊕ "),
            _ => party_label(&self.parties, " ⊗ "),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        let dims = self.parties.iter().map(StateSpace::ambient_dim);
        match self.mode {
            Mode::Juxtaposition => dims.sum(),
            _ => dims.product(),
        }
    }

    pub fn unit_effect(&self) -> RVec {
        match &self.realization {
            Realization::Generated(s) => s.unit_effect().clone(),
            Realization::Constrained { hrep, .. } => hrep.equalities[0].coeffs.clone(),
        }
    }

    /// The H-representation of a maximal composite.
    pub fn hrep(&self) -> Option<&HRep> {
        match &self.realization {
            Realization::Constrained { hrep, .. } => Some(hrep),
            Realization::Generated(_) => None,
        }
    }

    /// The realization as a generated state space. For the maximal composite
    /// this runs vertex enumeration once and caches the result.
    pub fn vrep(&self) -> Result<&StateSpace> {
        match &self.realization {
            Realization::Generated(s) => Ok(s),
            Realization::Constrained { hrep, vrep } => {
                if let Some(s) = vrep.get() {
                    return Ok(s);
                }
                let vertices = vertex_enumerate(hrep)?;
                let s = make_state_space(self.label(), vertices, self.unit_effect())?;
                Ok(vrep.get_or_init(|| s))
            }
        }
    }

    /// Whether the maximal composite's vertices have already been computed.
    pub fn has_vrep(&self) -> bool {
        match &self.realization {
            Realization::Generated(_) => true,
            Realization::Constrained { vrep, .. } => vrep.get().is_some(),
        }
    }

    /// Generators of the realization (vertices, for the maximal composite).
    pub fn generators(&self) -> Result<&[RVec]> {
        Ok(self.vrep()?.generators())
    }

    pub fn contains(&self, p: &RVec) -> Result<bool> {
        if p.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                found: p.dim(),
            });
        }
        match &self.realization {
            Realization::Generated(s) => membership(s, p),
            Realization::Constrained { hrep, .. } => Ok(hrep.contains(p)),
        }
    }

    fn check_tuple_len(&self, found: usize) -> Result<()> {
        if found != self.parties.len() {
            return Err(Error::DimensionMismatch {
                expected: self.parties.len(),
                found,
            });
        }
        Ok(())
    }

    fn require_tensor(&self, what: &str) -> Result<()> {
        if !self.mode.is_tensor() {
            return Err(Error::Domain(format!("{what} needs a tensor composite")));
        }
        Ok(())
    }

    /// Embeds a tuple of party states: Kronecker product for tensor modes,
    /// concatenation for the juxtaposition.
    pub fn product_embed(&self, states: &[RVec]) -> Result<RVec> {
        self.check_tuple_len(states.len())?;
        for (j, (rho, party)) in states.iter().zip(&self.parties).enumerate() {
            if !membership(party, rho)? {
                return Err(Error::Membership {
                    party: j,
                    label: party.label().to_string(),
                });
            }
        }
        Ok(match self.mode {
            Mode::Juxtaposition => RVec::concat(&states.iter().collect::<Vec<_>>()),
            _ => kron_all(states),
        })
    }

    fn check_factors(&self, functionals: &[Functional]) -> Result<()> {
        self.check_tuple_len(functionals.len())?;
        for (f, p) in functionals.iter().zip(&self.parties) {
            if f.dim() != p.ambient_dim() {
                return Err(Error::DimensionMismatch {
                    expected: p.ambient_dim(),
                    found: f.dim(),
                });
            }
        }
        Ok(())
    }

    /// The additive dual tuple of a juxtaposition: coordinates concatenated,
    /// value `Σ_j f_j(ρ_j)` on an embedded tuple.
    pub fn juxt_functional(&self, functionals: &[Functional]) -> Result<Functional> {
        self.check_factors(functionals)?;
        let coords: Vec<&RVec> = functionals.iter().map(|f| &f.coords).collect();
        Ok(Functional::new(self.label(), RVec::concat(&coords)))
    }

    pub fn simple_functional(&self, functionals: &[Functional]) -> Result<SimpleFunctional> {
        self.require_tensor("a simple functional")?;
        self.check_factors(functionals)?;
        let realized = Functional::new(
            self.label(),
            kron_all(functionals.iter().map(|f| &f.coords)),
        );
        Ok(SimpleFunctional {
            factors: functionals.to_vec(),
            realized,
        })
    }

    /// Simple functionals built from every tuple of party dual-basis
    /// elements, in index-tuple order.
    pub fn simple_basis(&self) -> Result<Vec<SimpleFunctional>> {
        self.require_tensor("the simple basis")?;
        let bases: Vec<Vec<Functional>> = self.parties.iter().map(dual_basis).collect();
        let dims: Vec<usize> = self.parties.iter().map(StateSpace::ambient_dim).collect();
        index_tuples(&dims)
            .map(|t| {
                let tuple: Vec<Functional> =
                    t.iter().zip(&bases).map(|(&i, b)| b[i].clone()).collect();
                self.simple_functional(&tuple)
            })
            .collect()
    }

    /// Dimension of the span `W` of simple functionals.
    pub fn simple_span_dim(&self) -> Result<usize> {
        let rows: Vec<RVec> = self
            .simple_basis()?
            .into_iter()
            .map(|s| s.realized.coords)
            .collect();
        Ok(rank(&RMat::from_rows(&rows, self.ambient_dim())?))
    }

    /// The unique linear map `Φ` on `W` with `Φ(simple(basis tuple t)) = phi(t)`,
    /// as a `target_dim × Π d_j` matrix acting on realized coordinates.
    ///
    /// Every probe tuple is then checked: `Φ` applied to its simple functional
    /// must equal the multilinear extension of `phi`, summed directly over
    /// basis tuples.
    pub fn universal_factorization<F>(
        &self,
        target_dim: usize,
        phi: F,
        probes: &[Vec<Functional>],
    ) -> Result<RMat>
    where
        F: Fn(&[usize]) -> RVec,
    {
        let basis = self.simple_basis()?;
        let n = self.ambient_dim();
        let dims: Vec<usize> = self.parties.iter().map(StateSpace::ambient_dim).collect();
        let tuples: Vec<Vec<usize>> = index_tuples(&dims).collect();
        let values: Vec<RVec> = tuples.iter().map(|t| phi(t)).collect();
        if let Some(v) = values.iter().find(|v| v.dim() != target_dim) {
            return Err(Error::DimensionMismatch {
                expected: target_dim,
                found: v.dim(),
            });
        }

        let rows: Vec<RVec> = basis.iter().map(|s| s.realized.coords.clone()).collect();
        let b = RMat::from_rows(&rows, n)?;
        let r = rank(&b);
        if r != basis.len() {
            return Err(Error::RankDeficiency {
                expected: basis.len(),
                rank: r,
            });
        }
        let mut map = RMat::zeros(target_dim, n);
        for k in 0..target_dim {
            let rhs = RVec::new(values.iter().map(|v| v[k].clone()).collect());
            let row = solve_linear(&b, &rhs)?.ok_or(Error::RankDeficiency {
                expected: basis.len(),
                rank: r,
            })?;
            for c in 0..n {
                map[(k, c)] = row[c].clone();
            }
        }

        for (pi, probe) in probes.iter().enumerate() {
            let simple = self.simple_functional(probe)?;
            let via_map = map.mul_vec(&simple.realized.coords);
            let mut direct = RVec::zeros(target_dim);
            for (t, v) in tuples.iter().zip(&values) {
                let weight: Rat = t
                    .iter()
                    .zip(probe)
                    .map(|(&i, f)| f.coords[i].clone())
                    .product();
                if !weight.is_zero() {
                    direct = direct.add_scaled(&weight, v);
                }
            }
            if via_map != direct {
                return Err(Error::FactorizationMismatch { probe: pi });
            }
        }
        Ok(map)
    }
}

/// A functional on a tensor composite built from one functional per party.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleFunctional {
    pub factors: Vec<Functional>,
    pub realized: Functional,
}

impl SimpleFunctional {
    /// Product of the factor values on a tuple of party states.
    pub fn factor_product(&self, states: &[RVec]) -> Result<Rat> {
        if states.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                found: states.len(),
            });
        }
        let mut acc = Rat::one();
        for (f, rho) in self.factors.iter().zip(states) {
            acc *= evaluate(f, rho)?;
        }
        Ok(acc)
    }
}
