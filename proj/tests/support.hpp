#pragma once

// Shared generators and brute-force oracles for the tests. The oracles
// spell out index formulas with plain loops and never call the permutation
// kernels they are checking.

#include <cmath>
#include <vector>

#include "statemap/channels.hpp"
#include "statemap/core.hpp"
#include "statemap/duality.hpp"
#include "statemap/kernels.hpp"
#include "statemap/random.hpp"

namespace testing {

using namespace statemap;

inline SuperOperator random_superoperator(std::size_t d_in, std::size_t d_out, Rng& rng) {
  return SuperOperator(d_in, d_out, random_gaussian_matrix(d_out * d_out, d_in * d_in, rng));
}

/// sum_k K_{A_k}, completely positive by construction.
inline KrausChannel random_cp_channel(std::size_t terms, std::size_t d_in, std::size_t d_out, Rng& rng) {
  std::vector<KrausTerm> t;
  for (std::size_t k = 0; k < terms; ++k) {
    const ComplexMatrix a = random_gaussian_matrix(d_out, d_in, rng);
    t.push_back({a, a, 1.0});
  }
  return KrausChannel(d_in, d_out, std::move(t));
}

/// Real combination of Kraus maps with at least one negative weight, so
/// hermiticity is preserved but complete positivity typically is not.
inline SuperOperator random_hermitian_preserving(std::size_t d_in, std::size_t d_out, Rng& rng) {
  SuperOperator phi = SuperOperator::zero(d_in, d_out);
  std::normal_distribution<double> n01;
  for (std::size_t k = 0; k < 3; ++k) {
    const ComplexMatrix a = random_gaussian_matrix(d_out, d_in, rng);
    phi.matrix += Complex(n01(rng)) * kraus_map(a).matrix;
  }
  return phi;
}

// J[(i,b),(j,a)] = m[(i,j),(b,a)].
inline ComplexMatrix choi_oracle(const SuperOperator& phi) {
  const std::size_t d1 = phi.dim_out, d2 = phi.dim_in;
  ComplexMatrix j(d1 * d2, d1 * d2);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t jj = 0; jj < d1; ++jj)
      for (std::size_t a = 0; a < d2; ++a)
        for (std::size_t b = 0; b < d2; ++b) j(i * d2 + b, jj * d2 + a) = phi.matrix(i * d1 + jj, b * d2 + a);
  return j;
}

// Jt[(i,a),(j,b)] = m[(i,j),(b,a)].
inline ComplexMatrix twisted_oracle(const SuperOperator& phi) {
  const std::size_t d1 = phi.dim_out, d2 = phi.dim_in;
  ComplexMatrix j(d1 * d2, d1 * d2);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t jj = 0; jj < d1; ++jj)
      for (std::size_t a = 0; a < d2; ++a)
        for (std::size_t b = 0; b < d2; ++b) j(i * d2 + a, jj * d2 + b) = phi.matrix(i * d1 + jj, b * d2 + a);
  return j;
}

// Phi(rho) from the definition Phi(E_ab) = sum_ij m[(i,j),(a,b)] E_ij.
inline ComplexMatrix apply_oracle(const SuperOperator& phi, const ComplexMatrix& rho) {
  const std::size_t d1 = phi.dim_out, d2 = phi.dim_in;
  ComplexMatrix out(d1, d1);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t a = 0; a < d2; ++a)
        for (std::size_t b = 0; b < d2; ++b) out(i, j) += phi.matrix(i * d1 + j, a * d2 + b) * rho(a, b);
  return out;
}

inline std::vector<Complex> conj_of(std::span<const Complex> v) {
  std::vector<Complex> out(v.begin(), v.end());
  for (auto& z : out) z = std::conj(z);
  return out;
}

inline ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
  ComplexMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing
