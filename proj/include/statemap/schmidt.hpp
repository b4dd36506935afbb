#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "statemap/core.hpp"
#include "statemap/duality.hpp"
#include "statemap/kernels.hpp"
#include "statemap/linalg.hpp"
#include "statemap/positivity.hpp"

namespace statemap {

/// Number of Schmidt coefficients above tol * (largest). Rejects the zero vector.
std::size_t schmidt_rank_vector(const BipartiteVector& phi, double tol = kDefaultRankTol);

/// Operator rank of the superoperator matrix of Jt^{-1}(rho).
std::size_t schmidt_rank_state(const TwistedChoiOperator& rho, double tol = kDefaultRankTol);

/// Second-largest eigenvalue below this counts as a pure state.
inline constexpr double kPureTol = 1e-10;

struct MeasureTerm {
  double weight = 0.0;     // q_j
  BipartiteVector vector;  // unit phi_j
  std::size_t schmidt_rank = 0;
};

struct MeasureReport {
  double upper_bound = 0.0;  // sum_j q_j S(phi_j), at least 1 on any state
  double shifted = 0.0;      // upper_bound - 1, zero on separable states
  std::vector<MeasureTerm> terms;
  std::string source;        // "pure", "spectral", "product_extraction" or "isometry"
  std::size_t restart = 0;   // meaningful for "isometry"
  std::size_t mix_dim = 0;
  double tol = 0.0;
};

struct MeasureOptions {
  double tol = kDefaultRankTol;
  std::size_t restarts = 16;
  std::size_t mix_dim = 0;  // 0: min(2 rank, rank + 4)
  std::uint64_t seed = 0;
  kernels::Execution exec = kernels::Execution::parallel;
};

/// Convex-roof upper bound of the Schmidt measure over decompositions
/// sqrt(q_j) phi_j = sum_k V_jk sqrt(p_k) psi_k with V an isometry.
MeasureReport schmidt_measure(const DensityState& rho, std::size_t d1, std::size_t d2,
                              const MeasureOptions& opts = {});

/// Weighted roof value of an explicit decomposition (weights need not be normalized).
double roof_value(const std::vector<std::vector<Complex>>& unnormalized, std::size_t d1, std::size_t d2,
                  double tol);

}  // namespace statemap
