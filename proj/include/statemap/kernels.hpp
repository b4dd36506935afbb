#pragma once

// Data-parallel kernels. Every kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp; both produce
// bit-identical results for any thread count.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "statemap/core.hpp"

namespace statemap::kernels {

/// Validates perm against dims; throws ShapeMismatch.
void check_permutation(std::span<const std::size_t> dims, std::span<const std::size_t> perm,
                       std::size_t length);

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm);
std::vector<std::size_t> permuted_dims(std::span<const std::size_t> dims, std::span<const std::size_t> perm);

/// Reduction chunk used by inner-product kernels. Fixed so that the result
/// does not depend on the number of threads.
inline constexpr std::size_t kReductionChunk = 1024;

namespace serial {

// out[(k_perm[0], ..., k_perm[n-1])] = in[(k_0, ..., k_{n-1})], perm 0-based.
std::vector<Complex> permute_factors(std::span<const Complex> in, std::span<const std::size_t> dims,
                                     std::span<const std::size_t> perm);
std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> x);
Complex dot_conj(std::span<const Complex> a, std::span<const Complex> b);
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace serial

namespace omp {

std::vector<Complex> permute_factors(std::span<const Complex> in, std::span<const std::size_t> dims,
                                     std::span<const std::size_t> perm);
std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> x);
Complex dot_conj(std::span<const Complex> a, std::span<const Complex> b);
// Iterations must only write to slots owned by their index.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace omp

enum class Execution { serial, parallel };

inline void for_each_index(Execution exec, std::size_t n, const std::function<void(std::size_t)>& body) {
  if (exec == Execution::serial) {
    serial::for_each_index(n, body);
  } else {
    omp::for_each_index(n, body);
  }
}

}  // namespace statemap::kernels
