//! Exact-arithmetic convex state spaces and their composites.
//!
//! Party state spaces are rational polytopes ([`space::StateSpace`]). They
//! combine by juxtaposition or into the minimal and maximal tensor
//! composites ([`composite`]); composite states are tested for separability by
//! exact LP, with entangled states certified by a witness functional
//! ([`separability`]). All arithmetic is rational and every LP answer carries
//! a certificate checked by substitution ([`lp::verify_outcome`]).

pub mod composite;
pub mod demo;
pub mod duality;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod rational;
pub mod sample;
pub mod separability;
pub mod space;

pub use composite::{
    compose, juxtapose, max_tensor, min_tensor, Composite, Mode, SimpleFunctional,
};
pub use duality::{evaluate, Functional};
pub use error::{Error, Result};
pub use linalg::{kron, RMat, RVec};
pub use rational::Rat;
pub use separability::{is_separable, verify_witness, SeparabilityVerdict};
pub use space::{classical_simplex, gbit_square, make_state_space, StateSpace};
