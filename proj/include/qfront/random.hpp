#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "qfront/numkit.hpp"

namespace qfront::random {

using Rng = std::mt19937_64;

/// Independent, reproducible stream for (seed, keys...).
Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> keys = {});

/// Normalized state with i.i.d. complex Gaussian amplitudes (Haar on the sphere).
Ket random_state(std::size_t dim, Rng& rng);

/// GUE-style Hermitian matrix, entries of order `scale`.
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng, double scale = 1.0);

/// Haar-random unitary from Gram-Schmidt on a complex Ginibre matrix.
ComplexMatrix haar_unitary(std::size_t dim, Rng& rng);

}  // namespace qfront::random
