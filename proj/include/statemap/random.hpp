#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "statemap/core.hpp"

namespace statemap {

using Rng = std::mt19937_64;

/// Independent deterministic stream for (seed, stream), e.g. one per restart.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

Complex gaussian_complex(Rng& rng);
ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);
std::vector<Complex> random_unit_vector(std::size_t n, Rng& rng);
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);
ComplexMatrix random_hermitian(std::size_t n, Rng& rng);
/// Wishart-type PSD matrix of the given rank, normalized to trace 1.
ComplexMatrix random_density(std::size_t n, std::size_t rank, Rng& rng);
/// U diag(s) W^dagger with s in [0, 1] and max s = 1, so ||rho||_op = 1.
ComplexMatrix random_unit_opnorm(std::size_t n, Rng& rng);

}  // namespace statemap
