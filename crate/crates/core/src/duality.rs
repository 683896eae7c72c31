//! Linear functionals on a state space and the evaluation pairing.
//!
//! Generators of a [`StateSpace`] span its ambient space, so the dual of the
//! generated vector space is the full ambient dual and a functional is just a
//! coordinate vector tagged with the space it acts on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RVec;
use crate::rational::Rat;
use crate::space::StateSpace;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Functional {
    pub space: String,
    pub coords: RVec,
}

impl Functional {
    pub fn new(space: impl Into<String>, coords: RVec) -> Functional {
        Functional {
            space: space.into(),
            coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn scale(&self, factor: &Rat) -> Functional {
        Functional::new(self.space.clone(), self.coords.scale(factor))
    }

    pub fn neg(&self) -> Functional {
        Functional::new(self.space.clone(), self.coords.neg())
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub fn evaluate(f: &Functional, p: &RVec) -> Result<Rat> {
    check_dim(f.dim(), p.dim())?;
    Ok(f.coords.dot(p))
}

/// Coordinate functionals of the ambient dual.
pub fn dual_basis(s: &StateSpace) -> Vec<Functional> {
    let d = s.ambient_dim();
    (0..d)
        .map(|i| Functional::new(s.label(), RVec::unit(d, i)))
        .collect()
}

/// Whether `f` is nonnegative on every generator, hence on the whole hull.
pub fn is_nonneg_on(s: &StateSpace, f: &Functional) -> Result<bool> {
    check_dim(s.ambient_dim(), f.dim())?;
    Ok(s.generators()
        .iter()
        .all(|g| !f.coords.dot(g).is_negative()))
}

/// Whether `f` evaluates to zero on every generator.
pub fn vanishes_on(s: &StateSpace, f: &Functional) -> Result<bool> {
    check_dim(s.ambient_dim(), f.dim())?;
    Ok(s.generators().iter().all(|g| f.coords.dot(g).is_zero()))
}
