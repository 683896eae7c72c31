//! Seeded random rationals, states and functionals for demos and tests.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::duality::Functional;
use crate::linalg::RVec;
use crate::rational::Rat;
use crate::space::StateSpace;

/// Portable seeded generator; the stream is fixed across platforms.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator in `-9..=9`, denominator in `1..=6`.
pub fn random_rat<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=6))
}

pub fn random_vector<R: Rng>(rng: &mut R, dim: usize) -> RVec {
    RVec::new((0..dim).map(|_| random_rat(rng)).collect())
}

/// A convex combination of the generators with small random integer weights.
pub fn random_state<R: Rng>(rng: &mut R, space: &StateSpace) -> RVec {
    let gens = space.generators();
    let mut weights: Vec<i64> = gens.iter().map(|_| rng.gen_range(0..=5)).collect();
    if weights.iter().all(|&w| w == 0) {
        let i = rng.gen_range(0..gens.len());
        weights[i] = 1;
    }
    convex_combination(gens, &weights)
}

/// `Σ w_i points_i / Σ w_i` for nonnegative integer weights, not all zero.
pub fn convex_combination(points: &[RVec], weights: &[i64]) -> RVec {
    let total: i64 = weights.iter().sum();
    assert!(total > 0, "weights must not all vanish");
    let mut acc = RVec::zeros(points[0].dim());
    for (p, &w) in points.iter().zip(weights) {
        if w != 0 {
            acc = acc.add_scaled(&Rat::new(w, total), p);
        }
    }
    acc
}

pub fn random_functional<R: Rng>(rng: &mut R, space: &StateSpace) -> Functional {
    Functional::new(space.label(), random_vector(rng, space.ambient_dim()))
}

pub fn random_functional_tuple<R: Rng>(rng: &mut R, parties: &[StateSpace]) -> Vec<Functional> {
    parties.iter().map(|p| random_functional(rng, p)).collect()
}

pub fn random_state_tuple<R: Rng>(rng: &mut R, parties: &[StateSpace]) -> Vec<RVec> {
    parties.iter().map(|p| random_state(rng, p)).collect()
}
