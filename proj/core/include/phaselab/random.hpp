#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "phaselab/state.hpp"

namespace phaselab::rng {

using Engine = std::mt19937_64;

/// Independent, reproducible engine for instance `index` of a seeded batch.
/// Instances are decorrelated by splitmix64 scrambling so batch results do
/// not depend on evaluation order.
Engine instance_engine(std::uint64_t seed, std::uint64_t index);

double uniform(Engine& eng, double lo, double hi);

/// Haar-like random state: independent complex Gaussian amplitudes,
/// normalized.
StateVector haar_state(Engine& eng, int dim);

/// Random Hermitian matrix rescaled to the given spectral norm.
SquareMatrix hermitian(Engine& eng, int dim, double spectral_norm);

/// Haar-like random unitary via QR of a complex Gaussian matrix.
SquareMatrix unitary(Engine& eng, int dim);

/// `count` mutually orthonormal random states (columns of a random unitary).
std::vector<StateVector> orthonormal_set(Engine& eng, int dim, int count);

}  // namespace phaselab::rng
