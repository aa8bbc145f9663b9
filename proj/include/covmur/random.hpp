#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "covmur/linalg.hpp"

namespace covmur {

class OutcomeSet;
class Observable;

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 0;

// Gaussian complex vector, normalised (Haar-distributed pure state).
ComplexVector random_unit_vector(int dim, Rng& rng);
DensityOperator random_pure_state(int dim, Rng& rng);
// Ginibre/Wishart mixed state with the given rank (full rank by default).
DensityOperator random_density(int dim, Rng& rng, int rank = 0);
// Entries ~ N(0, scale) on and above the diagonal.
HermitianOperator random_hermitian(int dim, Rng& rng, double scale = 1.0);
// Haar unitary via QR with phase correction.
ComplexMatrix random_unitary(int dim, Rng& rng);
// Random valid POVM: G_w = X_w X_w^dagger, normalised by S^{-1/2} G_w S^{-1/2}.
Observable random_observable(const OutcomeSet& outcomes, int dim, Rng& rng);
// Hermitian-valued map without positivity or normalisation.
Observable random_operator_map(const OutcomeSet& outcomes, int dim, Rng& rng);
// Point on the probability simplex (Dirichlet(1,..,1)).
std::vector<double> random_distribution(std::size_t size, Rng& rng);

}  // namespace covmur
