#pragma once

#include "measurecost/qmat.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace measurecost {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20190607;

/// Matrix of i.i.d. standard complex Gaussian entries.
ComplexMatrix gaussian_matrix(Index rows, Index cols, Rng& rng);

/// Orthonormal columns (rows >= cols) from QR of a complex Gaussian matrix.
ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng);

ComplexMatrix random_unitary(Index d, Rng& rng);

ComplexMatrix random_hermitian(Index d, Rng& rng, double scale = 1.0);

ComplexVector random_pure_vector(Index d, Rng& rng);

DensityMatrix random_pure_state(Index d, Rng& rng);

/// Full-rank mixed state from a Ginibre matrix G G^dagger / tr.
DensityMatrix random_mixed_state(Index d, Rng& rng);

/// Sample set used by the stochastic checks: 20 pure + 10 full-rank mixed states.
std::vector<DensityMatrix> sample_states(Index d, std::uint64_t seed, int pure = 20, int mixed = 10);

}  // namespace measurecost
